use thiserror::Error;

use super::{SimplicialComplex2, SimplicialError};
use crate::cellcomplex::{CellComplex, ComplexError};
use crate::edgeword::{EdgeSym, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RefineError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error("refinement changed the invariants {before:?} -> {after:?}")]
    InvariantChanged {
        before: (bool, usize, i64),
        after: (bool, usize, i64),
    },
    #[error("refined complex is not a triangulation: {0}")]
    NotSimplicial(String),
}

#[derive(Debug, Clone)]
pub struct Refinement {
    /// Every face a triangle; edges `e1, e2, …`, faces `t1, t2, …`.
    pub refined: CellComplex,
    pub simplicial: SimplicialComplex2,
}

/// Signed edge occurrence: `(edge id, inverted)`.
type Sym = (usize, bool);

struct Draft {
    faces: Vec<Vec<Sym>>,
    next: usize,
}

impl Draft {
    fn fresh(&mut self) -> usize {
        self.next += 1;
        self.next - 1
    }

    /// Cuts every edge in two at a new midpoint.
    fn split_edges(&mut self) {
        let halves: Vec<(usize, usize)> = (0..self.next).map(|e| (2 * e, 2 * e + 1)).collect();
        self.next *= 2;
        for face in &mut self.faces {
            *face = face
                .iter()
                .flat_map(|&(e, inv)| {
                    let (h0, h1) = halves[e];
                    if inv {
                        [(h1, true), (h0, true)]
                    } else {
                        [(h0, false), (h1, false)]
                    }
                })
                .collect();
        }
    }

    /// Replaces each face `s₀ … s_{n−1}` by the triangles `dᵢ sᵢ d_{i+1}⁻¹`
    /// around a new central vertex, `dᵢ` running from the centre to the
    /// start of `sᵢ`.
    fn cone(&mut self) {
        let faces = std::mem::take(&mut self.faces);
        for face in faces {
            let spokes: Vec<usize> = face.iter().map(|_| self.fresh()).collect();
            let n = face.len();
            for (i, &s) in face.iter().enumerate() {
                self.faces
                    .push(vec![(spokes[i], false), s, (spokes[(i + 1) % n], true)]);
            }
        }
    }

    /// Splits every triangle into four through the midpoints of its sides.
    fn quarter(&mut self) {
        self.split_edges();
        let faces = std::mem::take(&mut self.faces);
        for w in faces {
            debug_assert_eq!(w.len(), 6);
            let (u, v, x) = (self.fresh(), self.fresh(), self.fresh());
            self.faces.push(vec![w[1], w[2], (u, true)]);
            self.faces.push(vec![w[3], w[4], (v, true)]);
            self.faces.push(vec![w[5], w[0], (x, true)]);
            self.faces.push(vec![(u, false), (v, false), (x, false)]);
        }
    }

    /// Renames edges `e1, e2, …` by first appearance and faces `t1, t2, …`.
    fn into_complex(self) -> Result<CellComplex, ComplexError> {
        let mut names = vec![None; self.next];
        let mut count = 0;
        let faces: Vec<(String, Word)> = self
            .faces
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let syms = f
                    .iter()
                    .map(|&(e, inv)| {
                        let name = names[e].get_or_insert_with(|| {
                            count += 1;
                            format!("e{count}")
                        });
                        let s = EdgeSym::new(name).expect("generated names are identifiers");
                        if inv {
                            s.inverse()
                        } else {
                            s
                        }
                    })
                    .collect();
                (format!("t{}", i + 1), Word::new(syms))
            })
            .collect();
        CellComplex::build(faces)
    }
}

/// Subdivides `k` until it is a triangulation: every edge split in two,
/// each face coned off from a central vertex, each resulting triangle coned
/// once more, and finally every triangle cut into four through its side
/// midpoints. The refined complex is then read as a simplicial complex
/// whose vertices are the vertices of the refined complex.
pub fn refine_to_triangulation(k: &CellComplex) -> Result<Refinement, RefineError> {
    let ids: Vec<&str> = k.edges().collect();
    let id = |s: &EdgeSym| ids.iter().position(|&e| e == s.name()).unwrap();
    let mut draft = Draft {
        faces: Vec::new(),
        next: ids.len(),
    };
    for f in k.faces() {
        if f.word.is_empty() {
            // a sphere: two discs glued along one closed edge
            let d = draft.fresh();
            draft.faces.push(vec![(d, false)]);
            draft.faces.push(vec![(d, true)]);
        } else {
            draft
                .faces
                .push(f.word.iter().map(|s| (id(s), s.is_inverted())).collect());
        }
    }
    draft.split_edges();
    draft.cone();
    draft.cone();
    draft.quarter();
    let refined = draft.into_complex()?;

    let before = k.invariant_report().key();
    let after = refined.invariant_report().key();
    if before != after {
        return Err(RefineError::InvariantChanged { before, after });
    }

    let vs = refined.vertex_structure();
    let nv = vs.vertices.len();
    let width = nv.to_string().len();
    let vname = |s: &EdgeSym| {
        format!(
            "v{:0width$}",
            vs.vertex_of(s).expect("every symbol has a vertex") + 1
        )
    };
    let triangles: Vec<[String; 3]> = refined
        .faces()
        .iter()
        .map(|f| {
            [
                vname(f.word.at(0)),
                vname(f.word.at(1)),
                vname(f.word.at(2)),
            ]
        })
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    for t in &triangles {
        let mut key = t.clone();
        key.sort();
        if !seen.insert(key) {
            return Err(RefineError::NotSimplicial(format!(
                "triangle {} {} {} repeats",
                t[0], t[1], t[2]
            )));
        }
    }
    let simplicial = SimplicialComplex2::build(triangles)?;
    if (
        simplicial.num_vertices(),
        simplicial.num_edges(),
        simplicial.num_triangles(),
    ) != (nv, refined.num_edges(), refined.num_faces())
    {
        return Err(RefineError::NotSimplicial(format!(
            "{} vertices, {} edges, {} triangles from a complex with {nv}, {}, {}",
            simplicial.num_vertices(),
            simplicial.num_edges(),
            simplicial.num_triangles(),
            refined.num_edges(),
            refined.num_faces()
        )));
    }
    Ok(Refinement {
        refined,
        simplicial,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edgeword::parse_word;

    fn one_face(w: &str) -> CellComplex {
        CellComplex::build([("A", parse_word(w).unwrap())]).unwrap()
    }

    #[test]
    fn disc() {
        let r = refine_to_triangulation(&one_face("a b c")).unwrap();
        let rep = r.simplicial.validate_bordered_surface();
        assert!(rep.passes(), "{rep}");
        assert_eq!(rep.border_circles, 1);
        assert_eq!(r.simplicial.euler_characteristic(), 1);
        assert!(r.refined.faces().iter().all(|f| f.word.len() == 3));
    }

    #[test]
    fn torus() {
        let r = refine_to_triangulation(&one_face("a b a' b'")).unwrap();
        assert!(r.simplicial.validate_closed_surface().passes());
        let h = r.simplicial.homology().unwrap();
        assert_eq!(h.h1.to_string(), "Z^2");
        assert_eq!(r.simplicial.euler_characteristic(), 0);
    }

    #[test]
    fn projective_plane() {
        let r = refine_to_triangulation(&one_face("a a")).unwrap();
        assert!(r.simplicial.validate_closed_surface().passes());
        assert_eq!(r.simplicial.euler_characteristic(), 1);
        assert_eq!(r.simplicial.homology().unwrap().h1.to_string(), "Z/2");
    }

    #[test]
    fn sphere_and_single_edge_disc() {
        let r = refine_to_triangulation(&one_face("")).unwrap();
        assert!(r.simplicial.validate_closed_surface().passes());
        assert_eq!(r.simplicial.euler_characteristic(), 2);
        let r = refine_to_triangulation(&one_face("a")).unwrap();
        assert!(r.simplicial.validate_bordered_surface().passes());
    }

    #[test]
    fn sizes() {
        // n boundary symbols: 2n after splitting, 6n after two cones, 24n after quartering
        let r = refine_to_triangulation(&one_face("a b a' b'")).unwrap();
        assert_eq!(r.refined.num_faces(), 96);
    }
}
