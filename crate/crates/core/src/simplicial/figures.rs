//! Small named triangulations: the tetrahedron and the classic 3×3 grid
//! triangulations of the torus, projective plane and Klein bottle.

use super::SimplicialComplex2;

pub fn tetrahedron() -> SimplicialComplex2 {
    SimplicialComplex2::build([
        ["a", "b", "c"],
        ["a", "b", "d"],
        ["a", "c", "d"],
        ["b", "c", "d"],
    ])
    .unwrap()
}

/// Square grid of 4×4 labelled points, each cell cut along the diagonal
/// from its lower-left to its upper-right corner. `columns[x][y]` is the
/// label at column `x`, row `y` (bottom to top). Cells listed in `flip`
/// use the other diagonal.
fn grid(columns: [[&str; 4]; 4], flip: &[(usize, usize)]) -> SimplicialComplex2 {
    let mut ts = Vec::new();
    for x in 0..3 {
        for y in 0..3 {
            let (bl, br, tr, tl) = (
                columns[x][y],
                columns[x + 1][y],
                columns[x + 1][y + 1],
                columns[x][y + 1],
            );
            if flip.contains(&(x, y)) {
                ts.push([bl, br, tl]);
                ts.push([br, tr, tl]);
            } else {
                ts.push([bl, br, tr]);
                ts.push([bl, tr, tl]);
            }
        }
    }
    SimplicialComplex2::build(ts).unwrap()
}

/// 9 vertices, 27 edges, 18 triangles.
pub fn torus() -> SimplicialComplex2 {
    grid(
        [
            ["a", "e", "d", "a"],
            ["b", "i", "f", "b"],
            ["c", "j", "g", "c"],
            ["a", "e", "d", "a"],
        ],
        &[],
    )
}

/// 10 vertices; opposite sides glued with a twist. With every diagonal
/// running the same way the two corner triangles would share the vertex
/// set `a b f`, so the lower-right cell is cut along its other diagonal.
pub fn projective_plane() -> SimplicialComplex2 {
    grid(
        [
            ["d", "e", "f", "a"],
            ["c", "j", "g", "b"],
            ["b", "k", "h", "c"],
            ["a", "f", "e", "d"],
        ],
        &[(2, 0)],
    )
}

/// Torus grid with the vertical sides glued in opposite directions.
pub fn klein_bottle() -> SimplicialComplex2 {
    grid(
        [
            ["a", "e", "d", "a"],
            ["b", "i", "f", "b"],
            ["c", "j", "g", "c"],
            ["a", "d", "e", "a"],
        ],
        &[],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let t = torus();
        assert_eq!(
            (t.num_vertices(), t.num_edges(), t.num_triangles()),
            (9, 27, 18)
        );
        let p = projective_plane();
        assert_eq!(
            (p.num_vertices(), p.num_edges(), p.num_triangles()),
            (10, 27, 18)
        );
        let k = klein_bottle();
        assert_eq!(
            (k.num_vertices(), k.num_edges(), k.num_triangles()),
            (9, 27, 18)
        );
    }

    #[test]
    fn all_are_closed_surfaces() {
        for k in [tetrahedron(), torus(), projective_plane(), klein_bottle()] {
            let r = k.validate_closed_surface();
            assert!(r.passes(), "{r}");
        }
    }
}
