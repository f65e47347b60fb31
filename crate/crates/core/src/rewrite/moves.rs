use std::collections::{HashMap, HashSet};

use super::{check_name, sym, word_of, RewriteError};
use crate::cellcomplex::{CellComplex, Face};
use crate::edgeword::{EdgeSym, Word};

fn face_index(k: &CellComplex, face: &str) -> Result<usize, RewriteError> {
    k.face_index(face)
        .ok_or_else(|| RewriteError::FaceNotFound(face.to_string()))
}

fn check_fresh(k: &CellComplex, name: &str) -> Result<(), RewriteError> {
    check_name(name)?;
    if k.has_edge(name) {
        return Err(RewriteError::NameCollision(name.to_string()));
    }
    Ok(())
}

fn with_word(k: &CellComplex, idx: usize, word: Word) -> Result<CellComplex, RewriteError> {
    let mut faces = k.faces().to_vec();
    faces[idx].word = word;
    Ok(CellComplex::from_faces(faces)?)
}

fn map_words(k: &CellComplex, f: impl Fn(&Word) -> Word) -> Result<CellComplex, RewriteError> {
    let faces = k
        .faces()
        .iter()
        .map(|face| Face::new(face.name.clone(), f(&face.word)))
        .collect();
    Ok(CellComplex::from_faces(faces)?)
}

/// (P1): splits edge `edge` into `b c`; `edge⁻¹` becomes `c⁻¹ b⁻¹`.
pub fn apply_p1(
    k: &CellComplex,
    edge: &str,
    b: &str,
    c: &str,
) -> Result<CellComplex, RewriteError> {
    if !k.has_edge(edge) {
        return Err(RewriteError::EdgeNotFound(edge.to_string()));
    }
    check_fresh(k, b)?;
    check_fresh(k, c)?;
    if b == c {
        return Err(RewriteError::NameCollision(b.to_string()));
    }
    let (sb, sc) = (sym(b, false), sym(c, false));
    map_words(k, |w| {
        let mut out = Vec::with_capacity(w.len() + 2);
        for s in w {
            if s.name() != edge {
                out.push(s.clone());
            } else if s.is_inverted() {
                out.push(sc.inverse());
                out.push(sb.inverse());
            } else {
                out.push(sb.clone());
                out.push(sc.clone());
            }
        }
        Word::new(out)
    })
}

/// (P1)⁻¹: contracts every `b c` to `fresh` (and `c⁻¹ b⁻¹` to its inverse).
/// Requires `(b, c⁻¹)` to be a whole vertex.
pub fn apply_p1_inverse(
    k: &CellComplex,
    b: &EdgeSym,
    c: &EdgeSym,
    fresh: &str,
) -> Result<CellComplex, RewriteError> {
    let not_contractible = || RewriteError::NotContractible {
        b: b.to_string(),
        c: c.to_string(),
    };
    for s in [b, c] {
        if !k.has_edge(s.name()) {
            return Err(RewriteError::EdgeNotFound(s.name().to_string()));
        }
    }
    if b.same_edge(c) {
        return Err(not_contractible());
    }
    check_fresh(k, fresh)?;
    let vs = k.vertex_structure();
    let v = vs.vertex_containing(b).ok_or_else(not_contractible)?;
    let c_inv = c.inverse();
    if v.len() != 2 || !v.contains(&c_inv) {
        return Err(not_contractible());
    }

    let f = sym(fresh, false);
    let b_inv = b.inverse();
    let mut faces = k.faces().to_vec();
    for face in &mut faces {
        let w = &face.word;
        if w.is_empty() {
            continue;
        }
        // start at a symbol that never ends a contracted pair
        let start = match w.iter().position(|s| *s != *c && *s != b_inv) {
            Some(i) => i,
            None => continue,
        };
        let w = w.rotated(start);
        let syms = w.symbols();
        let mut out = Vec::with_capacity(syms.len());
        let mut i = 0;
        while i < syms.len() {
            let s = &syms[i];
            if s == b || *s == c_inv {
                let expect = if s == b { c.clone() } else { b_inv.clone() };
                if syms.get(i + 1) != Some(&expect) {
                    return Err(not_contractible());
                }
                out.push(if s == b { f.clone() } else { f.inverse() });
                i += 2;
            } else {
                out.push(s.clone());
                i += 1;
            }
        }
        face.word = Word::new(out);
    }
    Ok(CellComplex::from_faces(faces)?)
}

/// (P2) on the stored word `a₁…aₙ`: face keeps `a₁…aₚd`, the new face
/// gets `d⁻¹aₚ₊₁…aₙ`.
pub fn apply_p2(
    k: &CellComplex,
    face: &str,
    position: usize,
    d: &str,
    new_face: &str,
) -> Result<CellComplex, RewriteError> {
    split_face(k, face, 0, position, d, new_face)
}

/// (P2) after rotating the word to start at `start`; the first `len`
/// symbols stay with the face.
pub fn split_face(
    k: &CellComplex,
    face: &str,
    start: usize,
    len: usize,
    d: &str,
    new_face: &str,
) -> Result<CellComplex, RewriteError> {
    let idx = face_index(k, face)?;
    let w = &k.faces()[idx].word;
    if len == 0 || len >= w.len() || start >= w.len() {
        return Err(RewriteError::BadPosition {
            face: face.to_string(),
            position: len,
        });
    }
    check_fresh(k, d)?;
    if k.face(new_face).is_some() {
        return Err(RewriteError::NameCollision(new_face.to_string()));
    }
    let w = w.rotated(start);
    let sd = sym(d, false);
    let first = word_of(w.symbols()[..len].iter().cloned().chain([sd.clone()]));
    let second = word_of(
        [sd.inverse()]
            .into_iter()
            .chain(w.symbols()[len..].iter().cloned()),
    );
    let mut faces = k.faces().to_vec();
    faces[idx].word = first;
    faces.insert(idx + 1, Face::new(new_face, second));
    Ok(CellComplex::from_faces(faces)?)
}

/// (P2)⁻¹: glues two distinct faces along an edge occurring once in each.
/// The merged face keeps the name and orientation of `a1`.
pub fn apply_p2_inverse(
    k: &CellComplex,
    a1: &str,
    a2: &str,
    d: &str,
) -> Result<CellComplex, RewriteError> {
    let i1 = face_index(k, a1)?;
    let i2 = face_index(k, a2)?;
    if !k.has_edge(d) {
        return Err(RewriteError::EdgeNotFound(d.to_string()));
    }
    if i1 == i2 {
        return Err(RewriteError::NotMergeable(format!(
            "{a1} is the same face as {a2}"
        )));
    }
    let w1 = &k.faces()[i1].word;
    let w2 = &k.faces()[i2].word;
    let p1: Vec<usize> = (0..w1.len()).filter(|&i| w1.at(i).name() == d).collect();
    let p2: Vec<usize> = (0..w2.len()).filter(|&i| w2.at(i).name() == d).collect();
    if p1.len() != 1 || p2.len() != 1 {
        return Err(RewriteError::NotMergeable(format!(
            "{d} must occur once in {a1} and once in {a2}"
        )));
    }
    let w1 = w1.rotated(p1[0] + 1);
    let s = w1.symbols().last().unwrap().clone();
    let mut w2 = w2.rotated(p2[0]);
    if w2.symbols()[0] == s {
        w2 = w2.inverse().rotated(w2.len() - 1);
    }
    debug_assert_eq!(w2.symbols()[0], s.inverse());
    let merged = word_of(
        w1.symbols()[..w1.len() - 1]
            .iter()
            .chain(&w2.symbols()[1..])
            .cloned(),
    );
    let mut faces = k.faces().to_vec();
    faces[i1].word = merged;
    faces.remove(i2);
    Ok(CellComplex::from_faces(faces)?)
}

fn rotated_face(k: &CellComplex, face: &str, pos: usize) -> Result<(usize, Word), RewriteError> {
    let idx = face_index(k, face)?;
    let w = &k.faces()[idx].word;
    if pos >= w.len() {
        return Err(RewriteError::BadPosition {
            face: face.to_string(),
            position: pos,
        });
    }
    Ok((idx, w.rotated(pos)))
}

/// Removes the string `x x⁻¹` starting at `pos`.
pub fn apply_cancel(k: &CellComplex, face: &str, pos: usize) -> Result<CellComplex, RewriteError> {
    let (idx, w) = rotated_face(k, face, pos)?;
    if w.len() < 2 || w.symbols()[1] != w.symbols()[0].inverse() {
        return Err(RewriteError::NotApplicable(format!(
            "no x x' at {face}@{pos}"
        )));
    }
    with_word(k, idx, word_of(w.symbols()[2..].iter().cloned()))
}

/// `aXaY ≃ bbY⁻¹X`, with the first `a` at `pos`.
pub fn apply_crosscap(
    k: &CellComplex,
    face: &str,
    pos: usize,
    fresh: &str,
) -> Result<CellComplex, RewriteError> {
    let (idx, w) = rotated_face(k, face, pos)?;
    check_fresh(k, fresh)?;
    let s = w.symbols();
    let n = s.len();
    let j = (1..n)
        .find(|&j| s[j] == s[0])
        .filter(|&j| j >= 2 && j + 2 <= n)
        .ok_or_else(|| RewriteError::NotApplicable(format!("no aXaY at {face}@{pos}")))?;
    let b = sym(fresh, false);
    let y_inv = word_of(s[j + 1..].iter().cloned()).inverse();
    let out = word_of(
        [b.clone(), b]
            .into_iter()
            .chain(y_inv.into_symbols())
            .chain(s[1..j].iter().cloned()),
    );
    with_word(k, idx, out)
}

/// `aUVa⁻¹X ≃ bVUb⁻¹X`, with `a` at `pos` and `U` of length `u_len`.
pub fn apply_swap(
    k: &CellComplex,
    face: &str,
    pos: usize,
    u_len: usize,
    fresh: &str,
) -> Result<CellComplex, RewriteError> {
    let (idx, w) = rotated_face(k, face, pos)?;
    check_fresh(k, fresh)?;
    let s = w.symbols();
    let a_inv = s[0].inverse();
    let j = (1..s.len())
        .find(|&j| s[j] == a_inv)
        .ok_or_else(|| RewriteError::NotApplicable(format!("no a..a' at {face}@{pos}")))?;
    if u_len == 0 || 1 + u_len >= j {
        return Err(RewriteError::NotApplicable(format!(
            "U and V must be nonempty at {face}@{pos}"
        )));
    }
    let b = sym(fresh, false);
    let out = word_of(
        [b.clone()]
            .into_iter()
            .chain(s[1 + u_len..j].iter().cloned())
            .chain(s[1..1 + u_len].iter().cloned())
            .chain([b.inverse()])
            .chain(s[j + 1..].iter().cloned()),
    );
    with_word(k, idx, out)
}

/// `aaXbcb⁻¹c⁻¹Y ≃ a₂a₂Xc₁c₁b₁b₁Y`: a handle next to a cross-cap becomes
/// three cross-caps. `fresh` names `[a₂, b₁, c₁]`.
pub fn apply_handle_crosscap(
    k: &CellComplex,
    face: &str,
    cross: usize,
    handle: usize,
    fresh: &[String; 3],
) -> Result<CellComplex, RewriteError> {
    let (idx, w) = rotated_face(k, face, cross)?;
    for f in fresh {
        check_fresh(k, f)?;
    }
    let s = w.symbols();
    let n = s.len();
    let h = (handle + n - cross) % n;
    let ok = n >= 6
        && s[0] == s[1]
        && h >= 2
        && h + 4 <= n
        && !s[h].same_edge(&s[h + 1])
        && s[h + 2] == s[h].inverse()
        && s[h + 3] == s[h + 1].inverse();
    if !ok {
        return Err(RewriteError::NotApplicable(format!(
            "no cross-cap at {face}@{cross} with handle at {handle}"
        )));
    }
    let [a2, b1, c1] = fresh.clone().map(|f| sym(&f, false));
    let out = word_of(
        [a2.clone(), a2]
            .into_iter()
            .chain(s[2..h].iter().cloned())
            .chain([c1.clone(), c1, b1.clone(), b1])
            .chain(s[h + 4..].iter().cloned()),
    );
    with_word(k, idx, out)
}

/// Simultaneous renaming; an entry `(old, new)` maps `old` to `new` and
/// `old⁻¹` to `new⁻¹`. The first face's word is then rotated to begin at
/// `start`.
pub fn apply_relabel(
    k: &CellComplex,
    map: &[(String, EdgeSym)],
    start: usize,
) -> Result<CellComplex, RewriteError> {
    let mut table: HashMap<&str, &EdgeSym> = HashMap::new();
    for (old, new) in map {
        if !k.has_edge(old) {
            return Err(RewriteError::EdgeNotFound(old.clone()));
        }
        check_name(new.name())?;
        table.insert(old, new);
    }
    let mut used: HashSet<&str> = HashSet::new();
    for e in k.edges() {
        let name = table.get(e).map_or(e, |s| s.name());
        if !used.insert(name) {
            return Err(RewriteError::NameCollision(name.to_string()));
        }
    }
    let renamed = map_words(k, |w| {
        w.iter()
            .map(|s| match table.get(s.name()) {
                Some(new) if s.is_inverted() => new.inverse(),
                Some(new) => (*new).clone(),
                None => s.clone(),
            })
            .collect()
    })?;
    let w = &renamed.faces()[0].word;
    if start == 0 {
        return Ok(renamed);
    }
    if start >= w.len() {
        return Err(RewriteError::BadPosition {
            face: renamed.faces()[0].name.to_string(),
            position: start,
        });
    }
    with_word(&renamed, 0, w.rotated(start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edgeword::parse_word;

    fn cc(faces: &[(&str, &str)]) -> CellComplex {
        CellComplex::build(faces.iter().map(|(n, w)| (*n, parse_word(w).unwrap()))).unwrap()
    }

    fn words(k: &CellComplex) -> Vec<String> {
        k.faces().iter().map(|f| f.word.to_string()).collect()
    }

    fn s(x: &str) -> EdgeSym {
        parse_word(x).unwrap().symbols()[0].clone()
    }

    #[test]
    fn p1_substitutes_both_orientations() {
        let k = apply_p1(&cc(&[("A", "a b a' b'")]), "a", "x", "y").unwrap();
        assert_eq!(words(&k), vec!["x y b y' x' b'"]);
        assert_eq!(k.euler_characteristic(), 0);
        let k = apply_p1(&cc(&[("A", "a a")]), "a", "b", "c").unwrap();
        assert_eq!(words(&k), vec!["b c b c"]);
        let k = apply_p1(&cc(&[("A", "a")]), "a", "b", "c").unwrap();
        assert_eq!(words(&k), vec!["b c"]);
        assert_eq!(k.contours().len(), 1);
    }

    #[test]
    fn p1_rejects_bad_names() {
        let k = cc(&[("A", "a b a' b'")]);
        assert_eq!(
            apply_p1(&k, "z", "x", "y").unwrap_err(),
            RewriteError::EdgeNotFound("z".into())
        );
        assert_eq!(
            apply_p1(&k, "a", "b", "y").unwrap_err(),
            RewriteError::NameCollision("b".into())
        );
        assert!(apply_p1(&k, "a", "x", "x").is_err());
    }

    #[test]
    fn p1_inverse_undoes_p1() {
        let k = cc(&[("A", "a b a' b'")]);
        let split = apply_p1(&k, "a", "x", "y").unwrap();
        let back = apply_p1_inverse(&split, &s("x"), &s("y"), "a").unwrap();
        assert!(back.faces()[0].word.cyclic_equal(&k.faces()[0].word));
        let pp = apply_p1(&cc(&[("A", "a a")]), "a", "b", "c").unwrap();
        let back = apply_p1_inverse(&pp, &s("b"), &s("c"), "z").unwrap();
        assert_eq!(words(&back), vec!["z z"]);
    }

    #[test]
    fn p1_inverse_checks_vertex() {
        let k = cc(&[("A", "b d d c' b")]);
        assert!(matches!(
            apply_p1_inverse(&k, &s("b"), &s("d"), "k"),
            Err(RewriteError::NotContractible { .. })
        ));
        // the worked Möbius step: b d d c' contracts c' b to k
        let k = cc(&[("A", "b d d c'")]);
        let out = apply_p1_inverse(&k, &s("c'"), &s("b"), "k").unwrap();
        assert!(out.faces()[0]
            .word
            .cyclic_equal(&parse_word("d d k").unwrap()));
    }

    #[test]
    fn p2_splits_and_merges() {
        let k = cc(&[("A", "a b a c")]);
        let split = apply_p2(&k, "A", 2, "d", "B").unwrap();
        assert_eq!(words(&split), vec!["a b d", "d' a c"]);
        assert_eq!(split.euler_characteristic(), k.euler_characteristic());
        let merged = apply_p2_inverse(&split, "A", "B", "d").unwrap();
        assert!(merged.faces()[0].word.cyclic_equal(&k.faces()[0].word));
        let k = apply_p2(&cc(&[("A", "a b")]), "A", 1, "d", "B").unwrap();
        assert_eq!(words(&k), vec!["a d", "d' b"]);
    }

    #[test]
    fn p2_rejects_bad_positions() {
        let k = cc(&[("A", "a b")]);
        assert!(matches!(
            apply_p2(&k, "A", 0, "d", "B"),
            Err(RewriteError::BadPosition { .. })
        ));
        assert!(matches!(
            apply_p2(&k, "A", 2, "d", "B"),
            Err(RewriteError::BadPosition { .. })
        ));
    }

    #[test]
    fn p2_inverse_flips_second_face_when_needed() {
        // Möbius step: merge faces sharing a with equal signs
        let k = cc(&[("A", "b a d"), ("B", "c a d'")]);
        let m = apply_p2_inverse(&k, "A", "B", "a").unwrap();
        assert_eq!(m.num_faces(), 1);
        assert!(m.faces()[0]
            .word
            .cyclic_equal(&parse_word("d b c' d").unwrap()));
        let k = cc(&[("A", "a b c"), ("B", "c' d")]);
        assert!(apply_p2_inverse(&k, "A", "A", "c").is_err());
    }

    #[test]
    fn composite_rules() {
        let k = cc(&[("A", "a b a' x y x' c'")]);
        let k2 = cc(&[("A", "a b a x y x'")]);
        let cap = apply_crosscap(&k2, "A", 0, "_g1").unwrap();
        assert_eq!(words(&cap), vec!["_g1 _g1 x y' x' b"]);
        let sw = apply_swap(&cc(&[("A", "a u v a' x x")]), "A", 0, 1, "_g1").unwrap();
        assert_eq!(words(&sw), vec!["_g1 v u _g1' x x"]);
        assert!(apply_swap(&k, "A", 0, 1, "_g1").is_err());
        let hc = apply_handle_crosscap(
            &cc(&[("A", "a a b c b' c'")]),
            "A",
            0,
            2,
            &["_g1".into(), "_g2".into(), "_g3".into()],
        )
        .unwrap();
        assert_eq!(words(&hc), vec!["_g1 _g1 _g3 _g3 _g2 _g2"]);
        let c = apply_cancel(&cc(&[("A", "a b b' a'")]), "A", 1).unwrap();
        assert_eq!(words(&c), vec!["a' a"]);
    }

    #[test]
    fn rename_is_simultaneous() {
        let k = cc(&[("A", "a b a' b'")]);
        let r = apply_relabel(&k, &[("a".into(), s("b")), ("b".into(), s("a'"))], 0).unwrap();
        assert_eq!(words(&r), vec!["b a' b' a"]);
        let r = apply_relabel(&k, &[], 1).unwrap();
        assert_eq!(words(&r), vec!["b a' b' a"]);
        assert!(apply_relabel(&k, &[("a".into(), s("b"))], 0).is_err());
    }
}
