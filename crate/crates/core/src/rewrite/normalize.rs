use std::collections::HashMap;

use super::normal::{is_canonical, NormalForm, SurfaceType};
use super::{sym, Move, MoveKind, NameGen, RewriteError};
use crate::cellcomplex::{CellComplex, VertexKind};
use crate::edgeword::{EdgeSym, Word};

#[derive(Debug, Clone)]
pub struct NormalizationResult {
    pub normal: NormalForm,
    pub canonical_word: Word,
    pub complex: CellComplex,
    pub trace: Vec<Move>,
}

fn internal(msg: impl Into<String>) -> RewriteError {
    RewriteError::InternalInvariantViolation(msg.into())
}

/// Brings `k` to canonical form. Orientability, contour count and Euler
/// characteristic are re-checked after every move; any change is reported
/// as [`RewriteError::InternalInvariantViolation`].
pub fn normalize(k: &CellComplex) -> Result<NormalizationResult, RewriteError> {
    let report = k.invariant_report();
    let expected =
        NormalForm::from_invariants(report.orientable, report.num_contours, report.euler)
            .map_err(|e| internal(e.to_string()))?;
    let mut n = Normalizer {
        k: k.clone(),
        trace: Vec::new(),
        names: NameGen::for_complex(k),
        key: report.key(),
    };
    let budget = 1000 + 100 * (k.num_edges() + k.num_faces());
    let mut rounds = 0;
    while n.step()? {
        rounds += 1;
        if rounds > budget {
            return Err(internal(format!("no normal form after {budget} rounds")));
        }
    }
    n.relabel(&expected)?;

    let form = is_canonical(&n.k).ok_or_else(|| internal("final complex is not canonical"))?;
    if form != expected {
        return Err(internal(format!(
            "reached {form}, invariants say {expected}"
        )));
    }
    let canonical_word = n.k.faces()[0].word.clone();
    if canonical_word != expected.word() {
        return Err(internal(format!(
            "final word {canonical_word} is not in standard naming"
        )));
    }
    Ok(NormalizationResult {
        normal: form,
        canonical_word,
        complex: n.k,
        trace: n.trace,
    })
}

struct Normalizer {
    k: CellComplex,
    trace: Vec<Move>,
    names: NameGen,
    key: (bool, usize, i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BlockKind {
    Loop,
    Cross,
    Handle,
}

#[derive(Debug, Clone, Copy)]
struct Block {
    start: usize,
    kind: BlockKind,
}

/// Loops, cross-caps and handles found in a single face word; positions
/// outside all blocks are free.
struct Layout {
    blocks: Vec<Block>,
    taken: Vec<bool>,
}

impl Layout {
    fn of(k: &CellComplex) -> Layout {
        let w = &k.faces()[0].word;
        let n = w.len();
        let border = |s: &EdgeSym| k.is_border_edge(s.name());
        let mut taken = vec![false; n];
        let mut blocks = Vec::new();
        if n >= 3 {
            for i in 0..n {
                let (p, q) = ((i + n - 1) % n, (i + 1) % n);
                if border(w.at(i))
                    && !border(w.at(p))
                    && *w.at(q) == w.at(p).inverse()
                    && !taken[p]
                    && !taken[q]
                {
                    for x in [p, i, q] {
                        taken[x] = true;
                    }
                    blocks.push(Block {
                        start: p,
                        kind: BlockKind::Loop,
                    });
                }
            }
        }
        if n >= 2 {
            for i in 0..n {
                let j = (i + 1) % n;
                if !taken[i] && !taken[j] && w.at(i) == w.at(j) {
                    taken[i] = true;
                    taken[j] = true;
                    blocks.push(Block {
                        start: i,
                        kind: BlockKind::Cross,
                    });
                }
            }
        }
        if n >= 4 {
            for i in 0..n {
                let idx = [i, (i + 1) % n, (i + 2) % n, (i + 3) % n];
                if idx.iter().any(|&x| taken[x]) {
                    continue;
                }
                let (t, u) = (w.at(i), w.at(i + 1));
                if !t.same_edge(u) && *w.at(i + 2) == t.inverse() && *w.at(i + 3) == u.inverse() {
                    for x in idx {
                        taken[x] = true;
                    }
                    blocks.push(Block {
                        start: i,
                        kind: BlockKind::Handle,
                    });
                }
            }
        }
        blocks.sort_by_key(|b| b.start);
        Layout { blocks, taken }
    }

    fn count(&self, kind: BlockKind) -> usize {
        self.blocks.iter().filter(|b| b.kind == kind).count()
    }

    fn first(&self, kind: BlockKind) -> Option<Block> {
        self.blocks.iter().copied().find(|b| b.kind == kind)
    }
}

fn positions(w: &Word) -> HashMap<&str, Vec<usize>> {
    let mut m: HashMap<&str, Vec<usize>> = HashMap::new();
    for (i, s) in w.iter().enumerate() {
        m.entry(s.name()).or_default().push(i);
    }
    m
}

impl Normalizer {
    fn apply(&mut self, kind: MoveKind) -> Result<(), RewriteError> {
        let mv = Move::perform(kind, &self.k).map_err(|e| internal(e.to_string()))?;
        let key = mv.after.invariant_report().key();
        if key != self.key {
            return Err(internal(format!(
                "{} changed (orientable, contours, euler) from {:?} to {:?}",
                mv.kind, self.key, key
            )));
        }
        self.k = mv.after.clone();
        self.trace.push(mv);
        Ok(())
    }

    fn fresh(&mut self) -> String {
        self.names.fresh()
    }

    fn face_name(&self, idx: usize) -> String {
        self.k.faces()[idx].name.to_string()
    }

    fn step(&mut self) -> Result<bool, RewriteError> {
        Ok(self.cancel()?
            || self.reduce_vertices()?
            || self.merge_faces()?
            || self.single_face()?)
    }

    /// A cancellable `x x⁻¹` in word `w`. The disk `c h c⁻¹` is left alone.
    fn cancellable(&self, w: &Word) -> Option<usize> {
        let n = w.len();
        if n == 3 {
            let border = (0..3).find(|&i| self.k.is_border_edge(w.at(i).name()));
            if border.is_some() {
                return None;
            }
        }
        (0..n).find(|&i| n >= 2 && *w.at(i + 1) == w.at(i).inverse())
    }

    // Step 1
    fn cancel(&mut self) -> Result<bool, RewriteError> {
        for (fi, f) in self.k.faces().iter().enumerate() {
            if let Some(pos) = self.cancellable(&f.word) {
                let face = self.face_name(fi);
                self.apply(MoveKind::Cancel { face, pos })?;
                return Ok(true);
            }
        }
        Ok(false)
    }

    // Step 2
    fn reduce_vertices(&mut self) -> Result<bool, RewriteError> {
        let vs = self.k.vertex_structure();
        if vs.vertices[0].kind == VertexKind::Null {
            return Ok(false);
        }
        let inner: Vec<usize> = (0..vs.vertices.len())
            .filter(|&i| vs.vertices[i].kind == VertexKind::Inner)
            .collect();
        match inner.len() {
            0 => {
                self.create_inner_vertex()?;
                Ok(true)
            }
            1 => self.reduce_border(inner[0]),
            _ => {
                let survivor = *inner
                    .iter()
                    .rev()
                    .max_by_key(|&&i| vs.vertices[i].len())
                    .unwrap();
                for &ai in inner.iter().filter(|&&i| i != survivor) {
                    let m = &vs.vertices[ai].members;
                    for (i, b1) in m.iter().enumerate() {
                        let target = vs.vertex_of(&b1.inverse());
                        let ok = target == Some(survivor)
                            || target.is_some_and(|t| vs.vertices[t].kind == VertexKind::Border);
                        if ok && m.len() >= 2 {
                            let b2 = m[(i + 1) % m.len()].clone();
                            self.eliminate(b1, &b2)?;
                            return Ok(true);
                        }
                    }
                }
                Err(internal("no inner vertex can be shrunk"))
            }
        }
    }

    /// Removes `b₂` from the vertex holding `b₁` and `b₂` next to each other:
    /// split off `b₁ b₂⁻¹` as its own face, then glue along `b₂`.
    fn eliminate(&mut self, b1: &EdgeSym, b2: &EdgeSym) -> Result<(), RewriteError> {
        let vs = self.k.vertex_structure();
        let &(fi, pos) = vs
            .corners_linking(b1, b2)
            .first()
            .ok_or_else(|| internal(format!("{b1} and {b2} are not linked")))?;
        let face = self.face_name(fi);
        if self.k.faces()[fi].word.len() > 2 {
            let (d, new_face) = (self.fresh(), self.fresh());
            self.apply(MoveKind::P2 {
                face: face.clone(),
                start: pos,
                len: 2,
                d,
                new_face,
            })?;
        }
        let other = self
            .k
            .occurrences(b2.name())
            .into_iter()
            .map(|(f, _)| self.face_name(f))
            .find(|f| *f != face)
            .ok_or_else(|| internal(format!("{b2} has no second face")))?;
        self.apply(MoveKind::P2Inv {
            a1: face,
            a2: other,
            d: b2.name().to_string(),
        })
    }

    fn create_inner_vertex(&mut self) -> Result<(), RewriteError> {
        let long = self.k.faces().iter().position(|f| f.word.len() >= 2);
        match long {
            Some(fi) => {
                let face = self.face_name(fi);
                let (d, new_face) = (self.fresh(), self.fresh());
                self.apply(MoveKind::P2 {
                    face,
                    start: 0,
                    len: 1,
                    d: d.clone(),
                    new_face,
                })?;
                let (b, c) = (self.fresh(), self.fresh());
                self.apply(MoveKind::P1 { edge: d, b, c })
            }
            None => {
                let edge = self.k.faces()[0].word.symbols()[0].name().to_string();
                let (b, c) = (self.fresh(), self.fresh());
                self.apply(MoveKind::P1 { edge, b, c })
            }
        }
    }

    fn reduce_border(&mut self, alpha: usize) -> Result<bool, RewriteError> {
        let vs = self.k.vertex_structure();
        let open: Vec<&Vec<EdgeSym>> = vs
            .vertices
            .iter()
            .filter(|v| v.kind == VertexKind::Border && !v.is_loop())
            .map(|v| &v.members)
            .collect();
        if open.is_empty() {
            return Ok(false);
        }
        for m in &open {
            if m.len() == 2 && m[0] != m[1].inverse() {
                let fresh = self.fresh();
                self.apply(MoveKind::P1Inv {
                    b: m[0].clone(),
                    c: m[1].inverse(),
                    fresh,
                })?;
                return Ok(true);
            }
        }
        for m in &open {
            for i in 1..m.len().saturating_sub(1) {
                if vs.vertex_of(&m[i].inverse()) != Some(alpha) {
                    continue;
                }
                if m.len() > 3 {
                    let nb = if i > 1 { &m[i - 1] } else { &m[i + 1] };
                    self.eliminate(&m[i], nb)?;
                } else {
                    self.eliminate(&m[0], &m[1])?;
                }
                return Ok(true);
            }
        }
        Err(internal("no border vertex is adjacent to the inner vertex"))
    }

    // Step 3, first half
    fn merge_faces(&mut self) -> Result<bool, RewriteError> {
        if self.k.num_faces() < 2 {
            return Ok(false);
        }
        let a = self.face_name(0);
        let mut candidates = Vec::new();
        for s in self.k.faces()[0].word.iter() {
            let occ = self.k.occurrences(s.name());
            if let [(f1, _), (f2, _)] = occ[..] {
                let other = if f1 == 0 { f2 } else { f1 };
                if other != 0 {
                    candidates.push((self.face_name(other), s.name().to_string()));
                }
            }
        }
        if candidates.is_empty() {
            return Err(internal("first face shares no edge with another face"));
        }
        // prefer a gluing that does not create a cancellable pair
        let mut pick = candidates[0].clone();
        for (b, d) in &candidates {
            let merged =
                super::apply_p2_inverse(&self.k, &a, b, d).map_err(|e| internal(e.to_string()))?;
            let idx = merged.face_index(&a).unwrap();
            if self.cancellable(&merged.faces()[idx].word).is_none() {
                pick = (b.clone(), d.clone());
                break;
            }
        }
        self.apply(MoveKind::P2Inv {
            a1: a,
            a2: pick.0,
            d: pick.1,
        })?;
        Ok(true)
    }

    /// Cross-caps, handles, handle/cross-cap conversion and loop grouping on
    /// the single remaining face.
    fn single_face(&mut self) -> Result<bool, RewriteError> {
        let layout = Layout::of(&self.k);
        let face = self.face_name(0);
        let w = self.k.faces()[0].word.clone();
        let n = w.len();
        let pos = positions(&w);
        let partner = |i: usize| -> usize {
            let p = &pos[w.at(i).name()];
            if p[0] == i {
                p[p.len() - 1]
            } else {
                p[0]
            }
        };

        // aXaY -> bbY'X
        if let Some(i) = (0..n).find(|&i| !layout.taken[i] && *w.at(partner(i)) == *w.at(i)) {
            let fresh = self.fresh();
            self.apply(MoveKind::CrossCap {
                face,
                pos: i,
                fresh,
            })?;
            return Ok(true);
        }

        // aUbVa'Xb'Y -> handle
        for i in (0..n).filter(|&i| !layout.taken[i]) {
            let j = partner(i);
            let dist = |x: usize| (x + n - i) % n;
            let b = (1..dist(j))
                .map(|d| (i + d) % n)
                .find(|&p| !layout.taken[p] && dist(partner(p)) > dist(j));
            if let Some(p) = b {
                let (a, b) = (w.at(i).clone(), w.at(p).clone());
                self.make_handle(&a, &b)?;
                return Ok(true);
            }
        }
        if let Some(i) = (0..n).find(|&i| !layout.taken[i]) {
            return Err(internal(format!(
                "{} at {i} is in no block and no interleaved pair",
                w.at(i)
            )));
        }

        if let (Some(c), Some(h)) = (
            layout.first(BlockKind::Cross),
            layout.first(BlockKind::Handle),
        ) {
            let fresh = [self.fresh(), self.fresh(), self.fresh()];
            self.apply(MoveKind::HandleCrossCap {
                face,
                cross: c.start,
                handle: h.start,
                fresh,
            })?;
            return Ok(true);
        }

        self.group_loops(&layout, &w)
    }

    /// Rewrites `e … target … e⁻¹` as `f target … f⁻¹` by moving the part
    /// between `e` and `target` behind it. Returns the symbol now at `e`'s place.
    fn swap_to(&mut self, e: &EdgeSym, target: &EdgeSym) -> Result<EdgeSym, RewriteError> {
        let w = &self.k.faces()[0].word;
        let n = w.len();
        let find = |s: &EdgeSym| {
            w.iter()
                .position(|x| x == s)
                .ok_or_else(|| internal(format!("{s} not in the face")))
        };
        let (pe, pt) = (find(e)?, find(target)?);
        let u_len = (pt + n - pe) % n - 1;
        if u_len == 0 {
            return Ok(e.clone());
        }
        let fresh = self.fresh();
        self.apply(MoveKind::Swap {
            face: self.face_name(0),
            pos: pe,
            u_len,
            fresh: fresh.clone(),
        })?;
        Ok(sym(&fresh, false))
    }

    /// `aUbVa⁻¹Xb⁻¹Y ≃ a₂b₁a₂⁻¹b₁⁻¹YXVU` by three swaps.
    fn make_handle(&mut self, a: &EdgeSym, b: &EdgeSym) -> Result<(), RewriteError> {
        let a1 = self.swap_to(a, b)?;
        let b1 = self.swap_to(b, &a1.inverse())?;
        self.swap_to(&a1.inverse(), &b1.inverse())?;
        Ok(())
    }

    fn group_loops(&mut self, layout: &Layout, w: &Word) -> Result<bool, RewriteError> {
        let blocks = &layout.blocks;
        let is_loop = |t: usize| blocks[t].kind == BlockKind::Loop;
        let m = blocks.len();
        let Some(s0) = (0..m).find(|&t| !is_loop(t)) else {
            return Ok(false);
        };
        let mut runs: Vec<Vec<usize>> = Vec::new();
        let mut in_run = false;
        for t in (0..m).map(|x| (s0 + x) % m) {
            if is_loop(t) {
                if !in_run {
                    runs.push(Vec::new());
                    in_run = true;
                }
                runs.last_mut().unwrap().push(t);
            } else {
                in_run = false;
            }
        }
        if runs.len() <= 1 {
            return Ok(false);
        }
        let a = (0..runs.len()).min_by_key(|&r| runs[r].len()).unwrap();
        let l1 = *runs[a].last().unwrap();
        let l2 = runs[(a + 1) % runs.len()][0];
        let e = w.at(blocks[l1].start + 2).clone();
        let target = w.at(blocks[l2].start).clone();
        self.swap_to(&e, &target)?;
        Ok(true)
    }

    /// Renames to `a₁ b₁ …`/`a₁ a₁ …` and `c₁ h₁ c₁⁻¹ …` and rotates so
    /// that the loops come last.
    fn relabel(&mut self, expected: &NormalForm) -> Result<(), RewriteError> {
        if self.k.num_faces() != 1 {
            return Err(internal("more than one face left"));
        }
        let w = self.k.faces()[0].word.clone();
        if w.is_empty() || w == expected.word() {
            return Ok(());
        }
        let layout = Layout::of(&self.k);
        let blocks = &layout.blocks;
        let m = blocks.len();
        let is_loop = |t: usize| blocks[t].kind == BlockKind::Loop;
        let first = (0..m)
            .find(|&t| !is_loop(t) && is_loop((t + m - 1) % m))
            .or_else(|| (0..m).find(|&t| !is_loop(t)))
            .unwrap_or(0);
        let mut map: Vec<(String, EdgeSym)> = Vec::new();
        let mut rename = |from: &EdgeSym, to: String| {
            map.push((from.name().to_string(), sym(&to, from.is_inverted())));
        };
        let (mut gi, mut li) = (0, 0);
        for t in (0..m).map(|x| (first + x) % m) {
            let s = blocks[t].start;
            match blocks[t].kind {
                BlockKind::Handle => {
                    gi += 1;
                    rename(w.at(s), format!("a{gi}"));
                    rename(w.at(s + 1), format!("b{gi}"));
                }
                BlockKind::Cross => {
                    gi += 1;
                    rename(w.at(s), format!("a{gi}"));
                }
                BlockKind::Loop => {
                    li += 1;
                    rename(w.at(s), format!("c{li}"));
                    rename(w.at(s + 1), format!("h{li}"));
                }
            }
        }
        if expected.kind == SurfaceType::TypeII && layout.count(BlockKind::Handle) > 0 {
            return Err(internal("handles left in a nonorientable word"));
        }
        self.apply(MoveKind::Relabel {
            map,
            start: blocks.get(first).map_or(0, |b| b.start),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edgeword::parse_word;

    fn cc(faces: &[(&str, &str)]) -> CellComplex {
        CellComplex::build(faces.iter().map(|(n, w)| (*n, parse_word(w).unwrap()))).unwrap()
    }

    fn norm(faces: &[(&str, &str)]) -> NormalizationResult {
        normalize(&cc(faces)).unwrap()
    }

    fn nf(kind: SurfaceType, p: usize, q: usize) -> NormalForm {
        NormalForm { kind, p, q }
    }

    #[test]
    fn canonical_inputs_stay() {
        let r = norm(&[("A", "a b a' b'")]);
        assert_eq!(r.normal, nf(SurfaceType::TypeI, 1, 0));
        assert_eq!(r.canonical_word.to_string(), "a1 b1 a1' b1'");
        let r = norm(&[("A", "a1 a1")]);
        assert!(r.trace.is_empty());
    }

    #[test]
    fn klein_bottle_becomes_two_crosscaps() {
        let r = norm(&[("A", "a b a b'")]);
        assert_eq!(r.normal, nf(SurfaceType::TypeII, 2, 0));
        assert_eq!(r.canonical_word.to_string(), "a1 a1 a2 a2");
    }

    #[test]
    fn mobius_strip() {
        let r = norm(&[("A", "a b a c")]);
        assert_eq!(r.normal, nf(SurfaceType::TypeII, 1, 1));
        assert_eq!(r.canonical_word.to_string(), "a1 a1 c1 h1 c1'");
    }

    #[test]
    fn handle_and_crosscap_give_three_crosscaps() {
        let r = norm(&[("A", "a a b c b' c'")]);
        assert_eq!(r.normal, nf(SurfaceType::TypeII, 3, 0));
    }

    #[test]
    fn spheres() {
        assert_eq!(norm(&[("A", "")]).normal, nf(SurfaceType::TypeI, 0, 0));
        let r = norm(&[("A", "a a'")]);
        assert_eq!(r.normal, nf(SurfaceType::TypeI, 0, 0));
        assert!(r.canonical_word.is_empty());
        assert_eq!(
            norm(&[("A", "a b"), ("B", "b' a'")]).normal,
            nf(SurfaceType::TypeI, 0, 0)
        );
    }

    #[test]
    fn disks_and_annuli() {
        assert_eq!(norm(&[("A", "h")]).normal, nf(SurfaceType::TypeI, 0, 1));
        assert_eq!(norm(&[("A", "h k")]).normal, nf(SurfaceType::TypeI, 0, 1));
        assert_eq!(
            norm(&[("A", "a h a' k")]).normal,
            nf(SurfaceType::TypeI, 0, 2)
        );
        assert_eq!(
            norm(&[("A", "a b c"), ("B", "b e d'"), ("C", "a d f'")]).normal,
            nf(SurfaceType::TypeI, 0, 1)
        );
    }

    #[test]
    fn trace_replays() {
        let r = norm(&[("A", "a b c a' d b' e c' f d'")]);
        assert!(!r.trace.is_empty());
        for mv in &r.trace {
            assert_eq!(mv.replay().unwrap(), mv.after);
        }
        for pair in r.trace.windows(2) {
            assert_eq!(pair[0].after, pair[1].before);
        }
    }

    #[test]
    fn deterministic() {
        let k = cc(&[("A", "a b c a b d e d' e'")]);
        let r1 = normalize(&k).unwrap();
        let r2 = normalize(&k).unwrap();
        let l1: Vec<String> = r1.trace.iter().map(Move::trace_line).collect();
        let l2: Vec<String> = r2.trace.iter().map(Move::trace_line).collect();
        assert_eq!(l1, l2);
    }
}
