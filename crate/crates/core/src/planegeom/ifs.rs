use serde::Serialize;

use super::{hausdorff_distance, GeomError, Point};

/// `x' = a·x + b·y + e`, `y' = c·x + d·y + f`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AffineMap2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub f: f64,
}

impl AffineMap2 {
    pub const fn new(a: f64, b: f64, c: f64, d: f64, e: f64, f: f64) -> Self {
        AffineMap2 { a, b, c, d, e, f }
    }

    pub const fn identity() -> Self {
        Self::new(1.0, 0.0, 0.0, 1.0, 0.0, 0.0)
    }

    /// The similarity sending `(−1, 0)` to `p` and `(1, 0)` to `q`.
    pub fn onto_segment(p: Point, q: Point) -> Self {
        let (mr, mi) = ((q.x - p.x) / 2.0, (q.y - p.y) / 2.0);
        Self::new(mr, -mi, mi, mr, (p.x + q.x) / 2.0, (p.y + q.y) / 2.0)
    }

    pub fn apply(&self, p: Point) -> Point {
        Point::new(
            self.a * p.x + self.b * p.y + self.e,
            self.c * p.x + self.d * p.y + self.f,
        )
    }

    /// Largest singular value of the linear part.
    pub fn contraction_ratio(&self) -> f64 {
        let s = (self.a + self.d).hypot(self.c - self.b);
        let t = (self.a - self.d).hypot(self.c + self.b);
        (s + t) / 2.0
    }

    pub fn coefficients(&self) -> [f64; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }
}

/// A nonempty family of contracting affine maps.
#[derive(Debug, Clone, PartialEq)]
pub struct Ifs {
    maps: Vec<AffineMap2>,
    lambda: f64,
}

impl Ifs {
    pub fn new(maps: Vec<AffineMap2>) -> Result<Self, GeomError> {
        if maps.is_empty() {
            return Err(GeomError::EmptyIfs);
        }
        let mut lambda: f64 = 0.0;
        for (index, m) in maps.iter().enumerate() {
            let ratio = m.contraction_ratio();
            if !ratio.is_finite() || ratio >= 1.0 || m.coefficients().iter().any(|v| !v.is_finite())
            {
                return Err(GeomError::NotContracting { index, ratio });
            }
            lambda = lambda.max(ratio);
        }
        Ok(Ifs { maps, lambda })
    }

    pub fn maps(&self) -> &[AffineMap2] {
        &self.maps
    }

    /// Largest contraction ratio of the maps.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// `F(A) = f₁(A) ∪ … ∪ fₙ(A)` on a point list, map-major.
    pub fn apply_points(&self, pts: &[Point]) -> Vec<Point> {
        self.maps
            .iter()
            .flat_map(|m| pts.iter().map(move |&p| m.apply(p)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Primitive {
    Point(Point),
    Segment(Point, Point),
    Polygon(Vec<Point>),
}

impl Primitive {
    pub fn segment(p: Point, q: Point) -> Result<Self, GeomError> {
        if p == q {
            return Err(GeomError::InvalidPrimitive(format!(
                "segment endpoints coincide at {p}"
            )));
        }
        Ok(Primitive::Segment(p, q))
    }

    pub fn polygon(pts: Vec<Point>) -> Result<Self, GeomError> {
        if pts.len() < 3 {
            return Err(GeomError::InvalidPrimitive(format!(
                "polygon with {} vertices",
                pts.len()
            )));
        }
        Ok(Primitive::Polygon(pts))
    }

    pub fn vertices(&self) -> Vec<Point> {
        match self {
            Primitive::Point(p) => vec![*p],
            Primitive::Segment(p, q) => vec![*p, *q],
            Primitive::Polygon(v) => v.clone(),
        }
    }

    fn map(&self, m: &AffineMap2) -> Primitive {
        match self {
            Primitive::Point(p) => Primitive::Point(m.apply(*p)),
            Primitive::Segment(p, q) => Primitive::Segment(m.apply(*p), m.apply(*q)),
            Primitive::Polygon(v) => Primitive::Polygon(v.iter().map(|&p| m.apply(p)).collect()),
        }
    }

    /// Boundary edges, as point pairs.
    fn edges(&self) -> Vec<(Point, Point)> {
        match self {
            Primitive::Point(_) => Vec::new(),
            Primitive::Segment(p, q) => vec![(*p, *q)],
            Primitive::Polygon(v) => (0..v.len()).map(|i| (v[i], v[(i + 1) % v.len()])).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Scene {
    pub primitives: Vec<Primitive>,
}

impl Scene {
    pub fn new(primitives: Vec<Primitive>) -> Self {
        Scene { primitives }
    }

    pub fn from_points(pts: &[Point]) -> Self {
        Scene::new(pts.iter().map(|&p| Primitive::Point(p)).collect())
    }

    pub fn len(&self) -> usize {
        self.primitives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primitives.is_empty()
    }

    /// Every primitive vertex, in order.
    pub fn vertices(&self) -> Vec<Point> {
        self.primitives
            .iter()
            .flat_map(Primitive::vertices)
            .collect()
    }

    /// `(min, max)` corners of the bounding box.
    pub fn bounds(&self) -> Option<(Point, Point)> {
        let vs = self.vertices();
        let first = *vs.first()?;
        Some(vs.iter().fold((first, first), |(lo, hi), p| {
            (
                Point::new(lo.x.min(p.x), lo.y.min(p.y)),
                Point::new(hi.x.max(p.x), hi.y.max(p.y)),
            )
        }))
    }

    /// Points along every primitive no farther than `spacing` apart,
    /// polygon interiors excluded.
    pub fn sample(&self, spacing: f64) -> Vec<Point> {
        assert!(spacing > 0.0, "sampling spacing must be positive");
        let mut out = Vec::new();
        for prim in &self.primitives {
            if let Primitive::Point(p) = prim {
                out.push(*p);
            }
            for (p, q) in prim.edges() {
                let n = (p.dist(q) / spacing).ceil().max(1.0) as usize;
                for i in 0..n {
                    let t = i as f64 / n as f64;
                    out.push(Point::new(p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)));
                }
                if matches!(prim, Primitive::Segment(..)) {
                    out.push(q);
                }
            }
        }
        out
    }

    pub fn transformed(&self, m: &AffineMap2) -> Scene {
        Scene::new(self.primitives.iter().map(|p| p.map(m)).collect())
    }
}

/// `n`-fold application of `F(S) = f₁(S) ∪ … ∪ fₖ(S)`, map-major order.
pub fn ifs_iterate(sys: &Ifs, s: &Scene, n: usize) -> Scene {
    let mut cur = s.clone();
    for _ in 0..n {
        let mut next = Vec::with_capacity(cur.len() * sys.maps.len());
        for m in &sys.maps {
            next.extend(cur.primitives.iter().map(|p| p.map(m)));
        }
        cur = Scene::new(next);
    }
    cur
}

/// Hausdorff distances `δₙ = D(Aₙ, Aₙ₊₁)` for `n < steps`, checked against
/// `δₙ₊₁ ≤ λ·δₙ` and `δₙ ≤ λⁿ·δ₀` (absolute tolerance `1e−9`).
pub fn certify_convergence(sys: &Ifs, a0: &[Point], steps: usize) -> Result<Vec<f64>, GeomError> {
    const TOL: f64 = 1e-9;
    if a0.is_empty() {
        return Err(GeomError::EmptySet);
    }
    let lambda = sys.lambda();
    let mut cur = a0.to_vec();
    let mut next = sys.apply_points(&cur);
    let mut out: Vec<f64> = Vec::with_capacity(steps);
    for n in 0..steps {
        let delta = hausdorff_distance(&cur, &next)?;
        if let Some(&prev) = out.last() {
            if delta > lambda * prev + TOL {
                return Err(GeomError::ConvergenceViolation {
                    step: n,
                    detail: format!("{delta} > {lambda} * {prev}"),
                });
            }
        }
        let bound = lambda.powi(n as i32) * out.first().copied().unwrap_or(delta);
        if delta > bound + TOL {
            return Err(GeomError::ConvergenceViolation {
                step: n,
                detail: format!("{delta} > lambda^{n} * delta_0 = {bound}"),
            });
        }
        out.push(delta);
        if n + 1 < steps {
            cur = next;
            next = sys.apply_points(&cur);
        }
    }
    Ok(out)
}

pub const PRESETS: [&str; 6] = [
    "sierpinski-gasket",
    "sierpinski-dragon",
    "heighway",
    "koch",
    "hilbert",
    "snowflake",
];

const S3: f64 = 1.732_050_807_568_877_2;

/// The named systems. `snowflake` is a composite of three Koch curves and
/// has no single system; [`preset`] returns the Koch system for it.
pub fn preset(name: &str) -> Result<Ifs, GeomError> {
    let m = AffineMap2::new;
    let maps = match name {
        "sierpinski-gasket" => vec![
            m(0.5, 0.0, 0.0, 0.5, -0.25, 0.0),
            m(0.5, 0.0, 0.0, 0.5, 0.25, 0.0),
            m(0.5, 0.0, 0.0, 0.5, 0.0, S3 / 4.0),
        ],
        "sierpinski-dragon" => vec![
            m(-0.25, -S3 / 4.0, S3 / 4.0, -0.25, 0.75, S3 / 4.0),
            m(-0.25, S3 / 4.0, -S3 / 4.0, -0.25, -0.75, S3 / 4.0),
            m(0.5, 0.0, 0.0, 0.5, 0.0, S3 / 2.0),
        ],
        "heighway" => vec![
            m(0.5, -0.5, 0.5, 0.5, 0.0, 0.0),
            m(-0.5, -0.5, 0.5, -0.5, 0.0, 1.0),
        ],
        "koch" | "snowflake" => vec![
            m(1.0 / 3.0, 0.0, 0.0, 1.0 / 3.0, -2.0 / 3.0, 0.0),
            m(
                1.0 / 6.0,
                -S3 / 6.0,
                S3 / 6.0,
                1.0 / 6.0,
                -1.0 / 6.0,
                S3 / 6.0,
            ),
            m(
                1.0 / 6.0,
                S3 / 6.0,
                -S3 / 6.0,
                1.0 / 6.0,
                1.0 / 6.0,
                S3 / 6.0,
            ),
            m(1.0 / 3.0, 0.0, 0.0, 1.0 / 3.0, 2.0 / 3.0, 0.0),
        ],
        "hilbert" => vec![
            m(0.5, 0.0, 0.0, 0.5, -0.5, 1.0),
            m(0.5, 0.0, 0.0, 0.5, 0.5, 1.0),
            m(0.0, -0.5, 0.5, 0.0, 1.0, 0.5),
            m(0.0, 0.5, -0.5, 0.0, -1.0, 0.5),
        ],
        other => return Err(GeomError::UnknownPreset(other.to_string())),
    };
    Ifs::new(maps)
}

/// The starting figure drawn for each preset.
pub fn preset_seed(name: &str) -> Result<Scene, GeomError> {
    let p = Point::new;
    let seg = |a: Point, b: Point| Primitive::Segment(a, b);
    let prims = match name {
        "sierpinski-gasket" => {
            let (a, b, c) = (p(-0.5, 0.0), p(0.5, 0.0), p(0.0, S3 / 2.0));
            vec![seg(a, b), seg(b, c), seg(c, a)]
        }
        "sierpinski-dragon" | "koch" => vec![seg(p(-1.0, 0.0), p(1.0, 0.0))],
        "heighway" => vec![seg(p(0.0, 0.0), p(0.0, 1.0))],
        "hilbert" => vec![
            seg(p(-1.0, 0.0), p(0.0, 1.0)),
            seg(p(0.0, 1.0), p(1.0, 0.0)),
        ],
        "snowflake" => return Ok(snowflake(0)),
        other => return Err(GeomError::UnknownPreset(other.to_string())),
    };
    Ok(Scene::new(prims))
}

/// Three Koch curves after `n` iterations on the sides of the equilateral
/// triangle `(−1, 0), (1, 0), (0, −√3)`, bumps pointing outward.
pub fn snowflake(n: usize) -> Scene {
    let koch = preset("koch").expect("koch preset");
    let curve = ifs_iterate(&koch, &preset_seed("koch").expect("koch seed"), n);
    let corners = [
        Point::new(-1.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(0.0, -S3),
    ];
    let mut prims = Vec::with_capacity(3 * curve.len());
    for i in 0..3 {
        let side = AffineMap2::onto_segment(corners[i], corners[(i + 1) % 3]);
        prims.extend(curve.transformed(&side).primitives);
    }
    Scene::new(prims)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Point, b: Point) -> bool {
        a.dist(b) < 1e-12
    }

    #[test]
    fn ratios() {
        assert_eq!(
            preset("sierpinski-gasket").unwrap().maps()[0].contraction_ratio(),
            0.5
        );
        assert_eq!(AffineMap2::identity().contraction_ratio(), 1.0);
        let h = preset("heighway").unwrap();
        assert!((h.maps()[0].contraction_ratio() - 0.5f64.sqrt()).abs() < 1e-12);
        let k = preset("koch").unwrap();
        assert!((k.maps()[0].contraction_ratio() - 1.0 / 3.0).abs() < 1e-12);
        assert!((k.lambda() - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn all_presets_contract() {
        for name in PRESETS {
            let sys = preset(name).unwrap();
            assert!(
                sys.maps().iter().all(|m| m.contraction_ratio() < 1.0),
                "{name}"
            );
            assert!(!preset_seed(name).unwrap().is_empty());
        }
        assert_eq!(preset("heighway").unwrap().maps().len(), 2);
        assert!(matches!(
            preset("mandelbrot"),
            Err(GeomError::UnknownPreset(_))
        ));
    }

    #[test]
    fn gasket_coefficients() {
        let g = preset("sierpinski-gasket").unwrap();
        assert_eq!(g.maps()[0].coefficients(), [0.5, 0.0, 0.0, 0.5, -0.25, 0.0]);
        let top = Point::new(0.0, S3 / 2.0);
        assert!(close(g.maps()[2].apply(top), top));
    }

    #[test]
    fn iterate_counts_and_identity() {
        let g = preset("sierpinski-gasket").unwrap();
        let one = Scene::from_points(&[Point::new(0.0, 0.0)]);
        let s = ifs_iterate(&g, &one, 1);
        assert_eq!(
            s.vertices(),
            vec![
                Point::new(-0.25, 0.0),
                Point::new(0.25, 0.0),
                Point::new(0.0, S3 / 4.0)
            ]
        );
        assert_eq!(ifs_iterate(&g, &one, 0), one);
        assert_eq!(
            ifs_iterate(&g, &preset_seed("sierpinski-gasket").unwrap(), 4).len(),
            3 * 81
        );
    }

    #[test]
    fn koch_curve_keeps_endpoints() {
        let k = preset("koch").unwrap();
        let v = ifs_iterate(&k, &preset_seed("koch").unwrap(), 3).vertices();
        assert!(close(v[0], Point::new(-1.0, 0.0)));
        assert!(close(*v.last().unwrap(), Point::new(1.0, 0.0)));
    }

    #[test]
    fn snowflake_is_closed_and_outward() {
        let s = snowflake(2);
        assert_eq!(s.len(), 3 * 16);
        let v = s.vertices();
        assert!(close(v[0], *v.last().unwrap()));
        // the first side's bump rises above the x-axis, away from the triangle
        assert!(v.iter().any(|p| p.y > 0.5));
        assert_eq!(snowflake(0).len(), 3);
    }

    #[test]
    fn sampling_spacing() {
        let s = Scene::new(vec![Primitive::segment(
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
        )
        .unwrap()]);
        let pts = s.sample(0.1);
        assert_eq!(pts.len(), 11);
        assert!(pts.windows(2).all(|w| w[0].dist(w[1]) <= 0.1 + 1e-12));
        assert!(Primitive::segment(Point::new(1.0, 1.0), Point::new(1.0, 1.0)).is_err());
        assert!(Primitive::polygon(vec![Point::new(0.0, 0.0); 2]).is_err());
    }

    #[test]
    fn gasket_converges() {
        let g = preset("sierpinski-gasket").unwrap();
        let corners = [
            Point::new(-0.5, 0.0),
            Point::new(0.5, 0.0),
            Point::new(0.0, S3 / 2.0),
        ];
        let d = certify_convergence(&g, &corners, 6).unwrap();
        assert_eq!(d.len(), 6);
        assert!(d.windows(2).all(|w| w[1] <= 0.5 * w[0] + 1e-9));
        let fixed = [Point::new(-0.5, 0.0)];
        let single = Ifs::new(vec![g.maps()[0]]).unwrap();
        assert_eq!(
            certify_convergence(&single, &fixed, 3).unwrap(),
            vec![0.0; 3]
        );
    }
}
