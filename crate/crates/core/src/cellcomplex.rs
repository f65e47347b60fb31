//! Cell complexes: faces with cyclic boundary words over oriented edges.
//!
//! Vertices are not stored. They are recovered from the boundaries: every
//! corner `x y` of a face (with `y` cyclically following `x`) links the
//! oriented symbols `x` and `y⁻¹`. Each symbol takes part in one link per
//! occurrence of its edge, so every symbol has one or two links and the
//! connected components are cycles (inner vertices) or paths (border
//! vertices). Tracing happens on corners rather than on symbol sets, so a
//! word such as `a a⁻¹` where the same successor appears twice stays
//! unambiguous.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::edgeword::{EdgeSym, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("a cell complex needs at least one face")]
    EmptyFaceSet,
    #[error("face name {0:?} is used twice")]
    DuplicateFace(String),
    #[error("edge {edge:?} occurs {count} times (must be 1 or 2)")]
    EdgeMultiplicity { edge: String, count: usize },
    #[error("complex is disconnected: faces {first:?} share no edge with faces {second:?}")]
    Disconnected {
        first: Vec<String>,
        second: Vec<String>,
    },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Face {
    pub name: Arc<str>,
    pub word: Word,
}

impl Face {
    pub fn new(name: impl Into<Arc<str>>, word: Word) -> Self {
        Face {
            name: name.into(),
            word,
        }
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.word)
    }
}

/// A validated cell complex. Immutable; every edit produces a new complex.
#[derive(Clone, PartialEq, Eq)]
pub struct CellComplex {
    faces: Vec<Face>,
    edges: Vec<Arc<str>>,
    edge_index: HashMap<Arc<str>, usize>,
}

impl fmt::Debug for CellComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.faces.iter()).finish()
    }
}

impl CellComplex {
    /// Builds and validates a complex from `(face name, boundary word)` pairs.
    pub fn build<I, S>(faces: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = (S, Word)>,
        S: AsRef<str>,
    {
        Self::from_faces(
            faces
                .into_iter()
                .map(|(n, w)| Face::new(n.as_ref(), w))
                .collect(),
        )
    }

    pub fn from_faces(faces: Vec<Face>) -> Result<Self, ComplexError> {
        if faces.is_empty() {
            return Err(ComplexError::EmptyFaceSet);
        }
        let mut seen = HashSet::new();
        for f in &faces {
            if !seen.insert(f.name.clone()) {
                return Err(ComplexError::DuplicateFace(f.name.to_string()));
            }
        }

        let mut edges: Vec<Arc<str>> = Vec::new();
        let mut edge_index: HashMap<Arc<str>, usize> = HashMap::new();
        let mut counts: Vec<usize> = Vec::new();
        for f in &faces {
            for s in &f.word {
                let idx = *edge_index.entry(s.name_arc().clone()).or_insert_with(|| {
                    edges.push(s.name_arc().clone());
                    counts.push(0);
                    edges.len() - 1
                });
                counts[idx] += 1;
            }
        }
        if let Some((i, &count)) = counts.iter().enumerate().find(|(_, &c)| c > 2) {
            return Err(ComplexError::EdgeMultiplicity {
                edge: edges[i].to_string(),
                count,
            });
        }

        let complex = CellComplex {
            faces,
            edges,
            edge_index,
        };
        complex.check_connected()?;
        Ok(complex)
    }

    fn check_connected(&self) -> Result<(), ComplexError> {
        let n = self.faces.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut first_face: Vec<Option<usize>> = vec![None; self.edges.len()];
        for (fi, f) in self.faces.iter().enumerate() {
            for s in &f.word {
                let e = self.edge_index[s.name_arc()];
                match first_face[e] {
                    None => first_face[e] = Some(fi),
                    Some(g) => {
                        let (a, b) = (find(&mut parent, fi), find(&mut parent, g));
                        parent[a] = b;
                    }
                }
            }
        }
        let root = find(&mut parent, 0);
        let (first, second): (Vec<usize>, Vec<usize>) =
            (0..n).partition(|&i| find(&mut parent, i) == root);
        if second.is_empty() {
            Ok(())
        } else {
            let names = |v: Vec<usize>| v.iter().map(|&i| self.faces[i].name.to_string()).collect();
            Err(ComplexError::Disconnected {
                first: names(first),
                second: names(second),
            })
        }
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, name: &str) -> Option<&Face> {
        self.faces.iter().find(|f| &*f.name == name)
    }

    pub fn face_index(&self, name: &str) -> Option<usize> {
        self.faces.iter().position(|f| &*f.name == name)
    }

    /// Edge names in order of first appearance.
    pub fn edges(&self) -> impl Iterator<Item = &str> {
        self.edges.iter().map(|e| &**e)
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn has_edge(&self, name: &str) -> bool {
        self.edge_index.contains_key(name)
    }

    /// Total occurrences of an edge (either orientation) over all face words.
    pub fn edge_multiplicity(&self, name: &str) -> usize {
        self.faces
            .iter()
            .map(|f| f.word.iter().filter(|s| s.name() == name).count())
            .sum()
    }

    pub fn is_border_edge(&self, name: &str) -> bool {
        self.edge_multiplicity(name) == 1
    }

    /// `(face index, position)` of every occurrence of an edge.
    pub fn occurrences(&self, name: &str) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (fi, f) in self.faces.iter().enumerate() {
            for (pos, s) in f.word.iter().enumerate() {
                if s.name() == name {
                    out.push((fi, pos));
                }
            }
        }
        out
    }

    /// Successor lists over the boundaries of `F ∪ F⁻¹`. Multiplicity is
    /// kept: a symbol with two slots has two entries even when they agree.
    pub fn successors(&self) -> BTreeMap<EdgeSym, Vec<EdgeSym>> {
        let mut out: BTreeMap<EdgeSym, Vec<EdgeSym>> = BTreeMap::new();
        for f in &self.faces {
            for w in [f.word.clone(), f.word.inverse()] {
                let n = w.len();
                for i in 0..n {
                    out.entry(w.at(i).clone())
                        .or_default()
                        .push(w.at(i + 1).clone());
                }
            }
        }
        for v in out.values_mut() {
            v.sort();
        }
        out
    }

    pub fn vertex_structure(&self) -> VertexStructure {
        VertexStructure::compute(self)
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.vertex_structure().vertices
    }

    /// `n0 − n1 + n2`, the null vertex of an empty boundary counting as one.
    pub fn euler_characteristic(&self) -> i64 {
        let n0 = self.vertex_structure().vertices.len() as i64;
        n0 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn contours(&self) -> Vec<Contour> {
        self.vertex_structure().contours()
    }

    /// Whether some choice of face orientations makes every inner edge occur
    /// once with each sign.
    pub fn is_orientable(&self) -> bool {
        let mut occ: Vec<Vec<(usize, i8)>> = vec![Vec::new(); self.edges.len()];
        for (fi, f) in self.faces.iter().enumerate() {
            for s in &f.word {
                occ[self.edge_index[s.name_arc()]].push((fi, s.sign()));
            }
        }
        // adjacency: (other face, required product of the two orientations)
        let mut adj: Vec<Vec<(usize, i8)>> = vec![Vec::new(); self.faces.len()];
        for o in &occ {
            if let [(fa, sa), (fb, sb)] = o[..] {
                let product = -sa * sb;
                if fa == fb {
                    if product != 1 {
                        return false;
                    }
                } else {
                    adj[fa].push((fb, product));
                    adj[fb].push((fa, product));
                }
            }
        }
        let mut orient: Vec<i8> = vec![0; self.faces.len()];
        for start in 0..self.faces.len() {
            if orient[start] != 0 {
                continue;
            }
            orient[start] = 1;
            let mut queue = VecDeque::from([start]);
            while let Some(f) = queue.pop_front() {
                for &(g, product) in &adj[f] {
                    let want = orient[f] * product;
                    if orient[g] == 0 {
                        orient[g] = want;
                        queue.push_back(g);
                    } else if orient[g] != want {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn invariant_report(&self) -> InvariantReport {
        let vs = self.vertex_structure();
        let n0 = vs.vertices.len();
        let n1 = self.edges.len();
        let n2 = self.faces.len();
        InvariantReport {
            orientable: self.is_orientable(),
            num_contours: vs.contours().len(),
            euler: n0 as i64 - n1 as i64 + n2 as i64,
            n0,
            n1,
            n2,
        }
    }

    /// Renders in the `face <name> : <word>` text format.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for f in &self.faces {
            s.push_str(&format!("face {} : {}\n", f.name, f.word));
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Inner,
    Border,
    Null,
}

/// A vertex as its list of incoming oriented edges: cyclic for inner
/// vertices, a chain between two border symbols for border vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub kind: VertexKind,
    pub members: Vec<EdgeSym>,
}

impl Vertex {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &EdgeSym) -> bool {
        self.members.contains(s)
    }

    /// A border vertex of the form `(h, c, h⁻¹)`.
    pub fn is_loop(&self) -> bool {
        self.kind == VertexKind::Border
            && self.members.len() == 3
            && self.members[2] == self.members[0].inverse()
    }
}

/// Contour: the cyclic sequence of border edges around one boundary circle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contour {
    pub edges: Word,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InvariantReport {
    pub orientable: bool,
    pub num_contours: usize,
    pub euler: i64,
    pub n0: usize,
    pub n1: usize,
    pub n2: usize,
}

impl InvariantReport {
    /// The triple that classifies the surface.
    pub fn key(&self) -> (bool, usize, i64) {
        (self.orientable, self.num_contours, self.euler)
    }
}

/// Partition of the oriented symbols into vertices, with lookup.
#[derive(Debug, Clone)]
pub struct VertexStructure {
    pub vertices: Vec<Vertex>,
    of_symbol: HashMap<EdgeSym, usize>,
    /// The corner linking two symbols, for every link: `(face, position)`
    /// with `word[position]` followed by `word[position + 1]`.
    corners: HashMap<(EdgeSym, EdgeSym), Vec<(usize, usize)>>,
}

impl VertexStructure {
    fn compute(k: &CellComplex) -> Self {
        let n_sym = 2 * k.edges.len();
        if n_sym == 0 {
            return VertexStructure {
                vertices: vec![Vertex {
                    kind: VertexKind::Null,
                    members: Vec::new(),
                }],
                of_symbol: HashMap::new(),
                corners: HashMap::new(),
            };
        }
        let id = |s: &EdgeSym| 2 * k.edge_index[s.name_arc()] + usize::from(s.is_inverted());
        let sym = |i: usize| EdgeSym::from_arc(k.edges[i / 2].clone(), i % 2 == 1);

        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n_sym];
        let mut corners: HashMap<(EdgeSym, EdgeSym), Vec<(usize, usize)>> = HashMap::new();
        let mut corner_id = 0usize;
        for (fi, f) in k.faces.iter().enumerate() {
            let n = f.word.len();
            for pos in 0..n {
                let x = f.word.at(pos);
                let y_inv = f.word.at(pos + 1).inverse();
                let (a, b) = (id(x), id(&y_inv));
                adj[a].push((b, corner_id));
                adj[b].push((a, corner_id));
                corner_id += 1;
                corners
                    .entry((x.clone(), y_inv.clone()))
                    .or_default()
                    .push((fi, pos));
                if *x != y_inv {
                    corners
                        .entry((y_inv, x.clone()))
                        .or_default()
                        .push((fi, pos));
                }
            }
        }

        let mut order: Vec<usize> = (0..n_sym).collect();
        order.sort_by_key(|&a| sym(a));
        let rank: Vec<usize> = {
            let mut r = vec![0; n_sym];
            for (i, &s) in order.iter().enumerate() {
                r[s] = i;
            }
            r
        };

        let mut visited = vec![false; n_sym];
        let mut used = vec![false; corner_id];
        let mut vertices = Vec::new();
        let mut of_symbol = HashMap::new();
        for &start in &order {
            if visited[start] {
                continue;
            }
            // collect component
            let mut comp = vec![start];
            visited[start] = true;
            let mut i = 0;
            while i < comp.len() {
                for &(nb, _) in &adj[comp[i]] {
                    if !visited[nb] {
                        visited[nb] = true;
                        comp.push(nb);
                    }
                }
                i += 1;
            }
            let ends: Vec<usize> = comp
                .iter()
                .copied()
                .filter(|&s| adj[s].len() == 1)
                .collect();
            let kind = if ends.is_empty() {
                VertexKind::Inner
            } else {
                VertexKind::Border
            };
            let first = match kind {
                VertexKind::Border => *ends.iter().min_by_key(|&&s| rank[s]).unwrap(),
                _ => *comp.iter().min_by_key(|&&s| rank[s]).unwrap(),
            };
            let mut seq = vec![first];
            let mut cur = first;
            loop {
                let next = adj[cur]
                    .iter()
                    .filter(|(_, c)| !used[*c])
                    .min_by_key(|(nb, _)| rank[*nb])
                    .copied();
                let Some((nb, c)) = next else { break };
                used[c] = true;
                if kind == VertexKind::Inner && nb == first {
                    break;
                }
                seq.push(nb);
                cur = nb;
            }
            let vi = vertices.len();
            let members: Vec<EdgeSym> = seq.iter().map(|&s| sym(s)).collect();
            for m in &members {
                of_symbol.insert(m.clone(), vi);
            }
            vertices.push(Vertex { kind, members });
        }
        VertexStructure {
            vertices,
            of_symbol,
            corners,
        }
    }

    /// Index of the vertex that `s` leads to.
    pub fn vertex_of(&self, s: &EdgeSym) -> Option<usize> {
        self.of_symbol.get(s).copied()
    }

    pub fn vertex_containing(&self, s: &EdgeSym) -> Option<&Vertex> {
        self.vertex_of(s).map(|i| &self.vertices[i])
    }

    pub fn inner_count(&self) -> usize {
        self.vertices
            .iter()
            .filter(|v| v.kind == VertexKind::Inner)
            .count()
    }

    /// Corners `(face, position)` that link `a` and `b`.
    pub fn corners_linking(&self, a: &EdgeSym, b: &EdgeSym) -> &[(usize, usize)] {
        self.corners
            .get(&(a.clone(), b.clone()))
            .map_or(&[], Vec::as_slice)
    }

    /// For a border symbol, the symbol at the other end of its chain.
    fn other_end(&self, s: &EdgeSym) -> Option<&EdgeSym> {
        let v = self.vertex_containing(s)?;
        if v.kind != VertexKind::Border {
            return None;
        }
        if v.members.first() == Some(s) {
            v.members.last()
        } else if v.members.last() == Some(s) {
            v.members.first()
        } else {
            None
        }
    }

    pub fn contours(&self) -> Vec<Contour> {
        let mut border: Vec<EdgeSym> = self
            .vertices
            .iter()
            .filter(|v| v.kind == VertexKind::Border)
            .flat_map(|v| [v.members[0].clone(), v.members[v.members.len() - 1].clone()])
            .collect();
        border.sort();
        let mut seen: HashSet<EdgeSym> = HashSet::new();
        let mut keys: HashSet<Word> = HashSet::new();
        let mut out = Vec::new();
        for start in border {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start.clone();
            loop {
                seen.insert(cur.clone());
                cycle.push(cur.clone());
                let next = self
                    .other_end(&cur)
                    .expect("border symbol lies at the end of a border vertex")
                    .inverse();
                if next == start {
                    break;
                }
                cur = next;
            }
            let w = Word::new(cycle);
            let fwd = w.cyclic_canonical();
            let bwd = w.inverse().cyclic_canonical();
            let key = fwd.clone().min(bwd);
            if keys.insert(key.clone()) {
                out.push(Contour { edges: key });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edgeword::parse_word;

    fn cc(faces: &[(&str, &str)]) -> CellComplex {
        CellComplex::build(faces.iter().map(|(n, w)| (*n, parse_word(w).unwrap()))).unwrap()
    }

    fn sym(s: &str) -> EdgeSym {
        parse_word(s).unwrap().symbols()[0].clone()
    }

    fn fig1() -> CellComplex {
        cc(&[("A", "a b c"), ("B", "b e d'"), ("C", "a d f'")])
    }

    /// Equality of vertex member lists up to rotation (inner) or reversal.
    fn same_vertex(v: &Vertex, expect: &str) -> bool {
        let w = Word::new(v.members.clone());
        let e = parse_word(expect).unwrap();
        let rev = Word::new(e.symbols().iter().rev().cloned().collect());
        match v.kind {
            VertexKind::Inner => w.cyclic_equal(&e) || w.cyclic_equal(&rev),
            _ => w == e || w == rev,
        }
    }

    #[test]
    fn validates_edge_multiplicity() {
        let err = CellComplex::build([("A", parse_word("a a a").unwrap())]).unwrap_err();
        assert_eq!(
            err,
            ComplexError::EdgeMultiplicity {
                edge: "a".into(),
                count: 3
            }
        );
    }

    #[test]
    fn validates_nonempty_and_connected() {
        let none: Vec<(&str, Word)> = Vec::new();
        assert_eq!(
            CellComplex::build(none).unwrap_err(),
            ComplexError::EmptyFaceSet
        );
        let err = CellComplex::build([
            ("A", parse_word("a a").unwrap()),
            ("B", parse_word("b b").unwrap()),
        ])
        .unwrap_err();
        assert!(matches!(err, ComplexError::Disconnected { .. }));
        let err = CellComplex::build([
            ("A", parse_word("a b").unwrap()),
            ("A", parse_word("b' a'").unwrap()),
        ])
        .unwrap_err();
        assert_eq!(err, ComplexError::DuplicateFace("A".into()));
    }

    #[test]
    fn accepts_torus_and_figure_complex() {
        let t = cc(&[("A", "a b a' b'")]);
        assert_eq!(t.num_edges(), 2);
        let k = fig1();
        assert_eq!(
            k.edges().collect::<Vec<_>>(),
            vec!["a", "b", "c", "e", "d", "f"]
        );
    }

    #[test]
    fn successors_follow_both_orientations() {
        let k = fig1();
        let succ = k.successors();
        assert_eq!(succ[&sym("a")], vec![sym("b"), sym("d")]);
        let t = cc(&[("A", "a b a' b'")]);
        assert_eq!(t.successors()[&sym("a")], vec![sym("b"), sym("b'")]);
        let s = cc(&[("A", "a a'")]);
        assert_eq!(s.successors()[&sym("a")], vec![sym("a'"), sym("a'")]);
    }

    #[test]
    fn figure_complex_vertices() {
        let vs = fig1().vertices();
        assert_eq!(vs.len(), 4);
        let inner: Vec<_> = vs.iter().filter(|v| v.kind == VertexKind::Inner).collect();
        assert_eq!(inner.len(), 1);
        assert!(same_vertex(inner[0], "b' a d'"));
        let border: Vec<_> = vs.iter().filter(|v| v.kind == VertexKind::Border).collect();
        for expect in ["e d f", "c' b e'", "c a' f'"] {
            assert!(
                border.iter().any(|v| same_vertex(v, expect)),
                "missing {expect}"
            );
        }
        // border chains start at the lesser end
        assert!(border
            .iter()
            .any(|v| Word::new(v.members.clone()) == parse_word("c a' f'").unwrap()));
    }

    #[test]
    fn torus_has_one_inner_vertex() {
        let vs = cc(&[("A", "a b a' b'")]).vertices();
        assert_eq!(vs.len(), 1);
        assert_eq!(vs[0].kind, VertexKind::Inner);
        assert_eq!(vs[0].len(), 4);
    }

    #[test]
    fn empty_boundary_has_null_vertex() {
        let k = cc(&[("A", "")]);
        let vs = k.vertices();
        assert_eq!(vs.len(), 1);
        assert_eq!(vs[0].kind, VertexKind::Null);
        assert_eq!(k.euler_characteristic(), 2);
    }

    #[test]
    fn cancelling_pair_gives_two_singleton_vertices() {
        let k = cc(&[("A", "a a'")]);
        let vs = k.vertices();
        assert_eq!(vs.len(), 2);
        assert!(vs
            .iter()
            .all(|v| v.kind == VertexKind::Inner && v.len() == 1));
        assert_eq!(k.euler_characteristic(), 2);
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(cc(&[("A", "a b a' b'")]).euler_characteristic(), 0);
        assert_eq!(fig1().euler_characteristic(), 1);
        assert_eq!(cc(&[("A", "a a")]).euler_characteristic(), 1);
        assert_eq!(cc(&[("A", "a b a b'")]).euler_characteristic(), 0);
    }

    #[test]
    fn contours_of_examples() {
        let c = fig1().contours();
        assert_eq!(c.len(), 1);
        let expect = parse_word("c f e'").unwrap();
        assert!(c[0].edges.cyclic_equal(&expect) || c[0].edges.cyclic_equal(&expect.inverse()));
        assert!(cc(&[("A", "a b a' b'")]).contours().is_empty());
        assert_eq!(cc(&[("A", "a b a c")]).contours().len(), 1);
        assert_eq!(cc(&[("A", "a h a' b k b'")]).contours().len(), 2);
    }

    #[test]
    fn orientability() {
        assert!(cc(&[("A", "a b a' b'")]).is_orientable());
        assert!(!cc(&[("A", "a a")]).is_orientable());
        assert!(cc(&[("A", "a b c")]).is_orientable());
        assert!(fig1().is_orientable());
        // two faces glued so that one must be flipped
        assert!(cc(&[("A", "a b c"), ("B", "a d e")]).is_orientable());
        assert!(!cc(&[("A", "a b a c")]).is_orientable());
    }

    #[test]
    fn invariant_reports() {
        let r = cc(&[("A", "a b a' b'")]).invariant_report();
        assert_eq!(r.key(), (true, 0, 0));
        let r = cc(&[("A", "a b a b'")]).invariant_report();
        assert_eq!(r.key(), (false, 0, 0));
        let r = cc(&[("A", "a a")]).invariant_report();
        assert_eq!(r.key(), (false, 0, 1));
        assert_eq!((r.n0, r.n1, r.n2), (1, 1, 1));
    }

    #[test]
    fn loop_vertex_shape() {
        let k = cc(&[("A", "a b a' b' c h c'")]);
        let vs = k.vertex_structure();
        assert_eq!(vs.inner_count(), 1);
        let l = vs.vertex_containing(&sym("h")).unwrap();
        assert!(l.is_loop());
    }
}
