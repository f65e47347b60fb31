//! Two-dimensional abstract simplicial complexes: validation as closed or
//! bordered surfaces, boundary operators and integral homology.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cellcomplex::{CellComplex, ComplexError};
use crate::edgeword::{EdgeSym, Word};
use crate::intlinalg::{smith_normal_form_sparse, FgAbelianGroup, IntMatrix, LinAlgError};

pub mod figures;
mod refine;

pub use refine::{refine_to_triangulation, RefineError, Refinement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicialError {
    #[error("degenerate triangle {0} {1} {2}")]
    DegenerateTriangle(String, String, String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// `(row, column, value)` of a sparse matrix.
type Entry = (usize, usize, i64);

/// A pure 2-dimensional complex given by its triangles. Vertices and
/// edges are the closure of the triangles; vertex order is by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex2 {
    vertices: Vec<String>,
    edges: Vec<[usize; 2]>,
    triangles: Vec<[usize; 3]>,
}

impl SimplicialComplex2 {
    /// Builds the closure of a set of triangles. Repeated triangles are
    /// merged.
    pub fn build<I, S>(triangles: I) -> Result<Self, SimplicialError>
    where
        I: IntoIterator<Item = [S; 3]>,
        S: AsRef<str>,
    {
        let mut named: BTreeSet<[String; 3]> = BTreeSet::new();
        for t in triangles {
            let mut t = t.map(|v| v.as_ref().to_string());
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                let [a, b, c] = t;
                return Err(SimplicialError::DegenerateTriangle(a, b, c));
            }
            t.sort();
            named.insert(t);
        }
        let vertices: Vec<String> = named
            .iter()
            .flatten()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index = |v: &String| vertices.binary_search(v).unwrap();
        let triangles: Vec<[usize; 3]> = named
            .iter()
            .map(|t| [index(&t[0]), index(&t[1]), index(&t[2])])
            .collect();
        let edges: Vec<[usize; 2]> = triangles
            .iter()
            .flat_map(|&[a, b, c]| [[a, b], [a, c], [b, c]])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Ok(SimplicialComplex2 {
            vertices,
            edges,
            triangles,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Edges as ascending name pairs, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = [&str; 2]> {
        self.edges
            .iter()
            .map(|e| e.map(|v| self.vertices[v].as_str()))
    }

    /// Triangles as ascending name triples, in lexicographic order.
    pub fn triangles(&self) -> impl Iterator<Item = [&str; 3]> {
        self.triangles
            .iter()
            .map(|t| t.map(|v| self.vertices[v].as_str()))
    }

    /// `|V| − |E| + |T|`.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    fn edge_index(&self, a: usize, b: usize) -> usize {
        let key = if a < b { [a, b] } else { [b, a] };
        self.edges.binary_search(&key).expect("edge of a triangle")
    }

    /// Number of triangles on each edge.
    fn edge_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.edges.len()];
        for &[a, b, c] in &self.triangles {
            for (x, y) in [(a, b), (a, c), (b, c)] {
                deg[self.edge_index(x, y)] += 1;
            }
        }
        deg
    }

    fn components(&self, edges: impl Iterator<Item = [usize; 2]>) -> UnionFind {
        let mut uf = UnionFind::new(self.vertices.len());
        for [a, b] in edges {
            uf.union(a, b);
        }
        uf
    }

    fn is_connected(&self) -> bool {
        let mut uf = self.components(self.edges.iter().copied());
        !self.vertices.is_empty() && (0..self.vertices.len()).all(|v| uf.find(v) == uf.find(0))
    }

    /// Link of each vertex: neighbour -> number of triangles on the edge,
    /// plus the link edges (opposite sides of the incident triangles).
    fn links(&self) -> Vec<Link> {
        let mut links: Vec<Link> = (0..self.vertices.len()).map(|_| Link::default()).collect();
        for &[a, b, c] in &self.triangles {
            for (v, x, y) in [(a, b, c), (b, a, c), (c, a, b)] {
                let l = &mut links[v];
                *l.degree.entry(x).or_default() += 1;
                *l.degree.entry(y).or_default() += 1;
                l.sides.push((x, y));
            }
        }
        links
    }

    /// Checks the conditions for a triangulated surface without border.
    pub fn validate_closed_surface(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (e, &d) in self.edges.iter().zip(&self.edge_degrees()) {
            if d != 2 {
                violations.push(Violation::new(
                    Condition::D1,
                    format!(
                        "edge {} lies in {d} triangle(s), expected 2",
                        self.edge_label(*e)
                    ),
                ));
            }
        }
        for (v, link) in self.links().iter().enumerate() {
            if let Err(why) = link.fan(false) {
                violations.push(Violation::new(
                    Condition::D2,
                    format!("vertex {}: {why}", self.vertices[v]),
                ));
            }
        }
        if !self.is_connected() {
            violations.push(Violation::new(
                Condition::D3,
                "complex is not connected".to_string(),
            ));
        }
        ValidationReport {
            bordered: false,
            violations,
            border_edges: 0,
            border_circles: 0,
        }
    }

    /// Checks the conditions for a triangulated surface with (possibly
    /// empty) border: every edge on one or two triangles, cyclic fans at
    /// interior vertices and linear fans ending in border edges at border
    /// vertices.
    pub fn validate_bordered_surface(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let degrees = self.edge_degrees();
        for (e, &d) in self.edges.iter().zip(&degrees) {
            if d != 1 && d != 2 {
                violations.push(Violation::new(
                    Condition::D1,
                    format!(
                        "edge {} lies in {d} triangles, expected 1 or 2",
                        self.edge_label(*e)
                    ),
                ));
            }
        }
        for (v, link) in self.links().iter().enumerate() {
            let border = link.degree.values().any(|&d| d == 1);
            let (cond, res) = if border {
                (Condition::D3, link.fan(true))
            } else {
                (Condition::D2, link.fan(false))
            };
            if let Err(why) = res {
                violations.push(Violation::new(
                    cond,
                    format!("vertex {}: {why}", self.vertices[v]),
                ));
            }
        }
        if !self.is_connected() {
            violations.push(Violation::new(
                Condition::D4,
                "complex is not connected".to_string(),
            ));
        }
        let border: Vec<[usize; 2]> = self
            .edges
            .iter()
            .zip(&degrees)
            .filter(|(_, &d)| d == 1)
            .map(|(e, _)| *e)
            .collect();
        let mut uf = self.components(border.iter().copied());
        let circles = border
            .iter()
            .map(|e| uf.find(e[0]))
            .collect::<BTreeSet<_>>()
            .len();
        ValidationReport {
            bordered: true,
            violations,
            border_edges: border.len(),
            border_circles: circles,
        }
    }

    /// The closed validator when no edge lies on a single triangle, the
    /// bordered one otherwise.
    pub fn validate_surface(&self) -> ValidationReport {
        if self.edge_degrees().contains(&1) {
            self.validate_bordered_surface()
        } else {
            self.validate_closed_surface()
        }
    }

    fn edge_label(&self, [a, b]: [usize; 2]) -> String {
        format!("{} {}", self.vertices[a], self.vertices[b])
    }

    /// Nonzero entries of ∂₁ and ∂₂ with respect to ascending reference
    /// orientations.
    fn boundary_entries(&self) -> (Vec<Entry>, Vec<Entry>) {
        let d1 = self
            .edges
            .iter()
            .enumerate()
            .flat_map(|(j, &[a, b])| [(a, j, -1), (b, j, 1)])
            .collect();
        let d2 = self
            .triangles
            .iter()
            .enumerate()
            .flat_map(|(j, &[a, b, c])| {
                [
                    (self.edge_index(b, c), j, 1),
                    (self.edge_index(a, c), j, -1),
                    (self.edge_index(a, b), j, 1),
                ]
            })
            .collect();
        (d1, d2)
    }

    pub fn boundary_matrices(&self) -> ChainComplexData {
        let (e1, e2) = self.boundary_entries();
        let mut d1 = IntMatrix::zeros(self.vertices.len(), self.edges.len());
        for (r, c, v) in e1 {
            d1.set(r, c, v);
        }
        let mut d2 = IntMatrix::zeros(self.edges.len(), self.triangles.len());
        for (r, c, v) in e2 {
            d2.set(r, c, v);
        }
        assert!(
            d1.checked_mul(&d2).map(|p| p.is_zero()).unwrap_or(false),
            "boundary of a boundary must vanish"
        );
        ChainComplexData {
            basis0: self.vertices.clone(),
            basis1: self.edges().map(|e| e.map(str::to_string)).collect(),
            basis2: self.triangles().map(|t| t.map(str::to_string)).collect(),
            d1,
            d2,
        }
    }

    pub fn homology(&self) -> Result<Homology, LinAlgError> {
        let (e1, e2) = self.boundary_entries();
        let (nv, ne, nt) = (self.vertices.len(), self.edges.len(), self.triangles.len());
        let f1 = smith_normal_form_sparse(nv, ne, e1)?;
        let f2 = smith_normal_form_sparse(ne, nt, e2)?;
        let torsion = |f: &[i64]| {
            f.iter()
                .filter(|&&d| d > 1)
                .map(|&d| d as u64)
                .collect::<Vec<_>>()
        };
        let h = Homology {
            h0: FgAbelianGroup::new(nv - f1.len(), torsion(&f1))?,
            h1: FgAbelianGroup::new(ne - f1.len() - f2.len(), torsion(&f2))?,
            h2: FgAbelianGroup::free(nt - f2.len()),
        };
        assert_eq!(
            h.euler(),
            self.euler_characteristic(),
            "Betti numbers disagree with counting"
        );
        Ok(h)
    }

    /// One face per triangle, its word running around the ascending vertex
    /// order; edge `eᵢ` is the i-th edge, oriented from its lesser vertex.
    pub fn to_cell_complex(&self) -> Result<CellComplex, ComplexError> {
        let sym = |a: usize, b: usize| {
            let name = format!("e{}", self.edge_index(a, b) + 1);
            let s = EdgeSym::new(&name).expect("generated edge names are identifiers");
            if a < b {
                s
            } else {
                s.inverse()
            }
        };
        CellComplex::build(self.triangles.iter().enumerate().map(|(i, &[a, b, c])| {
            (
                format!("t{}", i + 1),
                Word::new(vec![sym(a, b), sym(b, c), sym(c, a)]),
            )
        }))
    }

    /// Orientability of the underlying surface. `None` when the triangles
    /// do not form a cell complex (an edge on three triangles, or
    /// disconnected).
    pub fn is_orientable(&self) -> Option<bool> {
        self.to_cell_complex().ok().map(|k| k.is_orientable())
    }

    /// Renders in the `triangle a b c` text format.
    pub fn to_text(&self) -> String {
        self.triangles()
            .map(|[a, b, c]| format!("triangle {a} {b} {c}\n"))
            .collect()
    }
}

/// `χ` by counting, checked against the alternating sum of Betti numbers.
pub fn euler_simplicial(k: &SimplicialComplex2) -> Result<i64, LinAlgError> {
    let h = k.homology()?;
    Ok(h.euler())
}

/// Parses the `triangle v1 v2 v3` format. `#` starts a comment.
pub fn parse_simplicial(text: &str) -> Result<SimplicialComplex2, SimplicialError> {
    let mut triangles = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[..] {
            ["triangle", a, b, c] => triangles.push([a, b, c]),
            _ => {
                return Err(SimplicialError::Parse {
                    line: i + 1,
                    message: format!("expected `triangle v1 v2 v3`, found `{line}`"),
                })
            }
        }
    }
    SimplicialComplex2::build(triangles)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplexData {
    pub basis0: Vec<String>,
    pub basis1: Vec<[String; 2]>,
    pub basis2: Vec<[String; 3]>,
    /// `∂₁ : C₁ → C₀`
    pub d1: IntMatrix,
    /// `∂₂ : C₂ → C₁`
    pub d2: IntMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homology {
    pub h0: FgAbelianGroup,
    pub h1: FgAbelianGroup,
    pub h2: FgAbelianGroup,
}

impl Homology {
    pub fn betti(&self) -> [usize; 3] {
        [
            self.h0.free_rank(),
            self.h1.free_rank(),
            self.h2.free_rank(),
        ]
    }

    pub fn euler(&self) -> i64 {
        let [b0, b1, b2] = self.betti();
        b0 as i64 - b1 as i64 + b2 as i64
    }
}

impl fmt::Display for Homology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H0 = {}\nH1 = {}\nH2 = {}", self.h0, self.h1, self.h2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Condition {
    D1,
    D2,
    D3,
    D4,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub message: String,
}

impl Violation {
    fn new(condition: Condition, message: String) -> Self {
        Violation { condition, message }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub bordered: bool,
    pub violations: Vec<Violation>,
    pub border_edges: usize,
    /// Connected components of the border; meaningful when the report
    /// passes.
    pub border_circles: usize,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn fails(&self, c: Condition) -> bool {
        self.violations.iter().any(|v| v.condition == c)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passes() {
            let kind = if self.bordered { "bordered" } else { "closed" };
            write!(f, "ok: {kind} surface")?;
            if self.bordered {
                write!(f, ", {} border circle(s)", self.border_circles)?;
            }
            return Ok(());
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}: {}", v.condition, v.message)?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Link {
    degree: BTreeMap<usize, usize>,
    sides: Vec<(usize, usize)>,
}

impl Link {
    /// Whether the triangles around the vertex form one fan: a cycle of
    /// length at least 3, or with `open` a path whose two ends are border
    /// edges.
    fn fan(&self, open: bool) -> Result<(), String> {
        let nodes: Vec<usize> = self.degree.keys().copied().collect();
        let pos = |v: usize| nodes.binary_search(&v).unwrap();
        let mut uf = UnionFind::new(nodes.len());
        for &(x, y) in &self.sides {
            uf.union(pos(x), pos(y));
        }
        let pieces = (0..nodes.len())
            .map(|i| uf.find(i))
            .collect::<BTreeSet<_>>()
            .len();
        if pieces != 1 {
            return Err(format!("triangles form {pieces} separate fans"));
        }
        let ends = self.degree.values().filter(|&&d| d == 1).count();
        if self.degree.values().any(|&d| d > 2) {
            return Err("an edge at this vertex lies in more than two triangles".to_string());
        }
        if open {
            if ends != 2 {
                return Err(format!("fan has {ends} border edges, expected 2"));
            }
        } else {
            if ends != 0 {
                return Err("fan is not closed".to_string());
            }
            if self.sides.len() < 3 {
                return Err(format!(
                    "cyclic fan has only {} triangles",
                    self.sides.len()
                ));
            }
        }
        Ok(())
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}
