use std::f64::consts::TAU;

use super::{GeomError, Point};

const MAX_DEPTH: u32 = 40;

/// A closed polygon `p₀ p₁ … p_{n−1} p₀`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedCurve {
    points: Vec<Point>,
}

impl ClosedCurve {
    /// At least three points, consecutive ones (cyclically) distinct.
    pub fn new(points: Vec<Point>) -> Result<Self, GeomError> {
        if points.len() < 3 {
            return Err(GeomError::InvalidCurve(format!(
                "{} points, need at least 3",
                points.len()
            )));
        }
        if let Some(p) = points.iter().find(|p| !p.is_finite()) {
            return Err(GeomError::InvalidCurve(format!("non-finite point {p}")));
        }
        let n = points.len();
        if let Some(i) = (0..n).find(|&i| points[i] == points[(i + 1) % n]) {
            return Err(GeomError::InvalidCurve(format!(
                "points {i} and {} coincide",
                (i + 1) % n
            )));
        }
        Ok(ClosedCurve { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    fn segments(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.points.len();
        (0..n).map(move |i| (self.points[i], self.points[(i + 1) % n]))
    }

    fn diagonal(&self) -> f64 {
        let (mut lo, mut hi) = (self.points[0], self.points[0]);
        for p in &self.points {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        lo.dist(hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Winding {
    pub number: i64,
    /// `|Σ arg wᵢ / 2π − number|` before rounding.
    pub residual: f64,
    /// Segments after refinement.
    pub pieces: usize,
}

fn segment_distance(z: Point, p: Point, q: Point) -> f64 {
    let (dx, dy) = (q.x - p.x, q.y - p.y);
    let len2 = dx * dx + dy * dy;
    let t = (((z.x - p.x) * dx + (z.y - p.y) * dy) / len2).clamp(0.0, 1.0);
    z.dist(Point::new(p.x + t * dx, p.y + t * dy))
}

/// Index of `curve` around `z0`: segments are bisected until every
/// quotient `wᵢ = (pᵢ₊₁ − z₀)/(pᵢ − z₀)` satisfies `|wᵢ − 1| < 1`, then the
/// arguments are summed.
pub fn winding_number(curve: &ClosedCurve, z0: Point) -> Result<Winding, GeomError> {
    let eps = 1e-9 * curve.diagonal();
    let distance = curve
        .segments()
        .map(|(p, q)| segment_distance(z0, p, q))
        .fold(f64::INFINITY, f64::min);
    if distance <= eps {
        return Err(GeomError::PointOnCurve { distance });
    }
    let mut total = 0.0;
    let mut pieces = 0;
    for (segment, (p, q)) in curve.segments().enumerate() {
        let mut stack = vec![(p, q, 0u32)];
        while let Some((a, b, depth)) = stack.pop() {
            let (ax, ay) = (a.x - z0.x, a.y - z0.y);
            let (bx, by) = (b.x - z0.x, b.y - z0.y);
            let den = ax * ax + ay * ay;
            let (wr, wi) = ((bx * ax + by * ay) / den, (by * ax - bx * ay) / den);
            if (wr - 1.0).hypot(wi) < 1.0 {
                total += wi.atan2(wr);
                pieces += 1;
            } else if depth >= MAX_DEPTH {
                return Err(GeomError::RefinementLimit { segment, depth });
            } else {
                let m = a.midpoint(b);
                stack.push((m, b, depth + 1));
                stack.push((a, m, depth + 1));
            }
        }
    }
    let turns = total / TAU;
    let number = turns.round();
    let residual = (turns - number).abs();
    if residual >= 1e-6 {
        return Err(GeomError::Residual(turns));
    }
    Ok(Winding {
        number: number as i64,
        residual,
        pieces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn polygon(n: usize, turns: i64) -> ClosedCurve {
        let k = n * turns.unsigned_abs() as usize;
        let sign = turns.signum() as f64;
        let pts = (0..k)
            .map(|i| {
                let t = sign * TAU * i as f64 / n as f64;
                Point::new(t.cos(), t.sin())
            })
            .collect();
        ClosedCurve::new(pts).unwrap()
    }

    #[test]
    fn circle_turns() {
        for m in [-3, -2, -1, 1, 2, 3] {
            let w = winding_number(&polygon(64, m), Point::new(0.0, 0.0)).unwrap();
            assert_eq!(w.number, m);
            assert!(w.residual < 1e-6);
        }
    }

    #[test]
    fn outside_square() {
        let sq = ClosedCurve::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap();
        assert_eq!(winding_number(&sq, Point::new(5.0, 5.0)).unwrap().number, 0);
        assert_eq!(winding_number(&sq, Point::new(0.5, 0.5)).unwrap().number, 1);
        assert!(matches!(
            winding_number(&sq, Point::new(0.5, 0.0)),
            Err(GeomError::PointOnCurve { .. })
        ));
    }

    #[test]
    fn coarse_triangle_is_refined() {
        let tri = ClosedCurve::new(vec![
            Point::new(-1.0, -1.0),
            Point::new(1.0, -1.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap();
        let w = winding_number(&tri, Point::new(0.0, -0.9)).unwrap();
        assert_eq!(w.number, 1);
        assert!(w.pieces > 3);
    }

    #[test]
    fn invalid_curves() {
        assert!(ClosedCurve::new(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)]).is_err());
        let p = Point::new(0.0, 0.0);
        assert!(ClosedCurve::new(vec![p, p, Point::new(1.0, 1.0)]).is_err());
        assert!(ClosedCurve::new(vec![p, Point::new(1.0, 1.0), Point::new(2.0, 0.0), p]).is_err());
    }
}
