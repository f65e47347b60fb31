use rstar::RTree;

use super::{GeomError, Point};

fn distinct(pts: &[Point]) -> Vec<[f64; 2]> {
    let mut v: Vec<[f64; 2]> = pts.iter().map(|p| [p.x, p.y]).collect();
    v.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    v.dedup();
    v
}

fn directed(from: &[[f64; 2]], to: RTree<[f64; 2]>) -> f64 {
    from.iter()
        .map(|&p| {
            let q = to.nearest_neighbor(p).expect("target set is nonempty");
            (p[0] - q[0]).hypot(p[1] - q[1])
        })
        .fold(0.0, f64::max)
}

/// `max over a ∈ A of min over b ∈ B of |a − b|`.
pub fn directed_hausdorff(a: &[Point], b: &[Point]) -> Result<f64, GeomError> {
    if a.is_empty() || b.is_empty() {
        return Err(GeomError::EmptySet);
    }
    Ok(directed(&distinct(a), RTree::bulk_load(distinct(b))))
}

/// Hausdorff distance of two finite point sets under the Euclidean metric.
pub fn hausdorff_distance(a: &[Point], b: &[Point]) -> Result<f64, GeomError> {
    if a.is_empty() || b.is_empty() {
        return Err(GeomError::EmptySet);
    }
    let (da, db) = (distinct(a), distinct(b));
    if da == db {
        return Ok(0.0);
    }
    let ab = directed(&da, RTree::bulk_load(db.clone()));
    let ba = directed(&db, RTree::bulk_load(da));
    Ok(ab.max(ba))
}
