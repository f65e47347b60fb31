use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Move, MoveKind, NameGen, RewriteError};
use crate::cellcomplex::CellComplex;

/// Applies `n_moves` random elementary moves. The same seed always gives
/// the same result.
pub fn scramble(k: &CellComplex, seed: u64, n_moves: usize) -> CellComplex {
    scramble_with_moves(k, seed, n_moves)
        .expect("scramble only picks applicable moves")
        .0
}

/// Like [`scramble`], also returning the moves made.
pub fn scramble_with_moves(
    k: &CellComplex,
    seed: u64,
    n_moves: usize,
) -> Result<(CellComplex, Vec<Move>), RewriteError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut names = NameGen::for_complex(k);
    let mut cur = k.clone();
    let mut moves = Vec::with_capacity(n_moves);
    for _ in 0..n_moves {
        let options = candidates(&cur);
        if options.is_empty() {
            break;
        }
        let kinds: Vec<usize> = (0..4).filter(|&i| !options[i].is_empty()).collect();
        let Some(&kind) = kinds.choose(&mut rng) else {
            break;
        };
        let mv = match &options[kind][rng.gen_range(0..options[kind].len())] {
            Candidate::P1(edge) => MoveKind::P1 {
                edge: edge.clone(),
                b: names.fresh(),
                c: names.fresh(),
            },
            Candidate::P2(face, n) => {
                let start = rng.gen_range(0..*n);
                let len = rng.gen_range(1..*n);
                MoveKind::P2 {
                    face: face.clone(),
                    start,
                    len,
                    d: names.fresh(),
                    new_face: names.fresh(),
                }
            }
            Candidate::P1Inv(b, c) => MoveKind::P1Inv {
                b: b.clone(),
                c: c.clone(),
                fresh: names.fresh(),
            },
            Candidate::P2Inv(a1, a2, d) => MoveKind::P2Inv {
                a1: a1.clone(),
                a2: a2.clone(),
                d: d.clone(),
            },
        };
        let m = Move::perform(mv, &cur)?;
        cur = m.after.clone();
        moves.push(m);
    }
    Ok((cur, moves))
}

enum Candidate {
    P1(String),
    P2(String, usize),
    P1Inv(crate::edgeword::EdgeSym, crate::edgeword::EdgeSym),
    P2Inv(String, String, String),
}

/// Applicable moves grouped as `[P1, P2, P1inv, P2inv]`.
fn candidates(k: &CellComplex) -> [Vec<Candidate>; 4] {
    let p1 = k.edges().map(|e| Candidate::P1(e.to_string())).collect();
    let p2 = k
        .faces()
        .iter()
        .filter(|f| f.word.len() >= 2)
        .map(|f| Candidate::P2(f.name.to_string(), f.word.len()))
        .collect();
    let p1inv = k
        .vertices()
        .into_iter()
        .filter(|v| v.len() == 2 && !v.members[0].same_edge(&v.members[1]))
        .map(|v| Candidate::P1Inv(v.members[0].clone(), v.members[1].inverse()))
        .collect();
    let mut p2inv = Vec::new();
    for e in k.edges() {
        if let [(f1, _), (f2, _)] = k.occurrences(e)[..] {
            if f1 != f2 {
                p2inv.push(Candidate::P2Inv(
                    k.faces()[f1].name.to_string(),
                    k.faces()[f2].name.to_string(),
                    e.to_string(),
                ));
            }
        }
    }
    [p1, p2, p1inv, p2inv]
}
