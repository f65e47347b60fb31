//! Plane geometry: affine iterated function systems, Hausdorff distance of
//! finite point sets and winding numbers of closed polygonal curves.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

mod hausdorff;
mod ifs;
mod winding;

pub use hausdorff::{directed_hausdorff, hausdorff_distance};
pub use ifs::{
    certify_convergence, ifs_iterate, preset, preset_seed, snowflake, AffineMap2, Ifs, Primitive,
    Scene, PRESETS,
};
pub use winding::{winding_number, ClosedCurve, Winding};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("point set is empty")]
    EmptySet,
    #[error("an IFS needs at least one map")]
    EmptyIfs,
    #[error("map {index} is not contracting (ratio {ratio})")]
    NotContracting { index: usize, ratio: f64 },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("invalid primitive: {0}")]
    InvalidPrimitive(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("point lies on the curve (distance {distance:e})")]
    PointOnCurve { distance: f64 },
    #[error("segment {segment} still too coarse after {depth} bisections")]
    RefinementLimit { segment: usize, depth: u32 },
    #[error("winding sum {0} is not close to an integer")]
    Residual(f64),
    #[error("convergence bound violated at step {step}: {detail}")]
    ConvergenceViolation { step: usize, detail: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dist(self, o: Point) -> f64 {
        (self.x - o.x).hypot(self.y - o.y)
    }

    pub fn midpoint(self, o: Point) -> Point {
        Point::new((self.x + o.x) / 2.0, (self.y + o.y) / 2.0)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn number(tok: &str, line: usize) -> Result<f64, GeomError> {
    tok.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| GeomError::Parse {
            line,
            message: format!("`{}` is not a finite number", tok.trim()),
        })
}

/// Parses a point `x,y`.
pub fn parse_point(text: &str) -> Result<Point, GeomError> {
    parse_point_at(text, 1)
}

fn parse_point_at(text: &str, line: usize) -> Result<Point, GeomError> {
    match text.split(',').collect::<Vec<_>>()[..] {
        [x, y] => Ok(Point::new(number(x, line)?, number(y, line)?)),
        _ => Err(GeomError::Parse {
            line,
            message: format!("expected `x,y`, found `{text}`"),
        }),
    }
}

/// One `x,y` pair per line; `#` starts a comment.
pub fn parse_points(text: &str) -> Result<Vec<Point>, GeomError> {
    data_lines(text)
        .map(|(n, l)| parse_point_at(l, n))
        .collect()
}

/// One map per line as six numbers `a b c d e f`; `#` starts a comment.
pub fn parse_ifs(text: &str) -> Result<Ifs, GeomError> {
    let mut maps = Vec::new();
    for (n, l) in data_lines(text) {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 6 {
            return Err(GeomError::Parse {
                line: n,
                message: format!("expected six coefficients, found {}", toks.len()),
            });
        }
        let v = toks
            .iter()
            .map(|t| number(t, n))
            .collect::<Result<Vec<_>, _>>()?;
        maps.push(AffineMap2::new(v[0], v[1], v[2], v[3], v[4], v[5]));
    }
    Ifs::new(maps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points_parse() {
        let pts = parse_points("# square\n0,0\n 1 , 0\n\n1,1 # corner\n").unwrap();
        assert_eq!(
            pts,
            vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(1.0, 1.0)
            ]
        );
        assert!(matches!(
            parse_points("0,0\n1;2\n"),
            Err(GeomError::Parse { line: 2, .. })
        ));
        assert!(parse_points("nan,0\n").is_err());
        assert_eq!(parse_point("-2.5,3").unwrap(), Point::new(-2.5, 3.0));
    }

    #[test]
    fn ifs_parse() {
        let sys = parse_ifs("0.5 0 0 0.5 -0.25 0\n0.5 0 0 0.5 0.25 0 # b\n").unwrap();
        assert_eq!(sys.maps().len(), 2);
        assert!(matches!(
            parse_ifs("1 2 3\n"),
            Err(GeomError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_ifs("1 0 0 1 0 0\n"),
            Err(GeomError::NotContracting { index: 0, .. })
        ));
        assert_eq!(parse_ifs("# nothing\n"), Err(GeomError::EmptyIfs));
    }
}
