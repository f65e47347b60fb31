//! Exact integer matrices, Smith normal form and finitely generated
//! abelian groups.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("integer overflow")]
    Overflow,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid torsion coefficients: {0}")]
    InvalidTorsion(String),
}

type Result<T> = std::result::Result<T, LinAlgError>;

fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(LinAlgError::Overflow)
}

fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(LinAlgError::Overflow)
}

fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(LinAlgError::Overflow)
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix {}x{} ", self.rows, self.cols)?;
        f.debug_list()
            .entries(self.data.chunks(self.cols.max(1)).take(self.rows))
            .finish()
    }
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// From a list of rows. Every row must have the same length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.as_ref().len() != cols {
                return Err(LinAlgError::DimensionMismatch("ragged rows".to_string()));
            }
            data.extend_from_slice(r.as_ref());
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[i64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Exact product; zero entries of `self` are skipped, so sparse
    /// boundary matrices multiply quickly.
    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * other.cols + j;
                        out.data[idx] = add(out.data[idx], mul(a, b)?)?;
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Nonzero invariant factors `d₁ | d₂ | … | d_r` of `m`, all positive.
pub fn smith_normal_form(m: &IntMatrix) -> Result<Vec<i64>> {
    let entries = (0..m.rows())
        .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
        .filter_map(|(r, c)| Some((r, c, m.get(r, c))).filter(|e| e.2 != 0));
    smith_normal_form_sparse(m.rows(), m.cols(), entries)
}

/// Invariant factors of a `rows × cols` matrix given by its nonzero
/// entries `(row, col, value)`.
pub(crate) fn smith_normal_form_sparse(
    rows: usize,
    cols: usize,
    entries: impl IntoIterator<Item = (usize, usize, i64)>,
) -> Result<Vec<i64>> {
    let mut sparse = SparseElim::from_entries(rows, cols, entries);
    let units = sparse.eliminate_units()?;
    let mut rest = sparse.residue();
    let mut out = vec![1; units];
    out.extend(dense_snf(&mut rest)?);
    Ok(out)
}

pub fn rank(m: &IntMatrix) -> Result<usize> {
    Ok(smith_normal_form(m)?.len())
}

/// `Z^ambient / column space of m`.
pub fn cokernel(ambient: usize, m: &IntMatrix) -> Result<FgAbelianGroup> {
    if m.rows() != ambient {
        return Err(LinAlgError::DimensionMismatch(format!(
            "relation matrix has {} rows, ambient rank is {ambient}",
            m.rows()
        )));
    }
    let factors = smith_normal_form(m)?;
    let torsion = factors
        .iter()
        .filter(|&&d| d > 1)
        .map(|&d| d as u64)
        .collect();
    FgAbelianGroup::new(ambient - factors.len(), torsion)
}

/// Unit-pivot elimination over sparse rows. Each ±1 pivot contributes an
/// invariant factor 1 and removes its row and column.
struct SparseElim {
    rows: Vec<BTreeMap<usize, i64>>,
    cols: Vec<BTreeSet<usize>>,
}

impl SparseElim {
    fn from_entries(
        nrows: usize,
        ncols: usize,
        entries: impl IntoIterator<Item = (usize, usize, i64)>,
    ) -> Self {
        let mut rows = vec![BTreeMap::new(); nrows];
        let mut cols = vec![BTreeSet::new(); ncols];
        for (r, c, v) in entries {
            if v != 0 {
                rows[r].insert(c, v);
                cols[c].insert(r);
            }
        }
        SparseElim { rows, cols }
    }

    fn eliminate_units(&mut self) -> Result<usize> {
        let mut count = 0;
        loop {
            // Markowitz choice among unit entries
            let mut best: Option<(usize, usize, usize)> = None;
            'scan: for (r, row) in self.rows.iter().enumerate() {
                for (&c, &v) in row {
                    if v.abs() == 1 {
                        let cost = (row.len() - 1) * (self.cols[c].len() - 1);
                        if best.is_none_or(|b| cost < b.0) {
                            best = Some((cost, r, c));
                            if cost == 0 {
                                break 'scan;
                            }
                        }
                    }
                }
            }
            let Some((_, r, c)) = best else {
                return Ok(count);
            };
            let pivot_row = std::mem::take(&mut self.rows[r]);
            let u = pivot_row[&c];
            let others: Vec<usize> = self.cols[c].iter().copied().filter(|&x| x != r).collect();
            for r2 in others {
                let factor = mul(self.rows[r2][&c], u)?;
                for (&j, &v) in &pivot_row {
                    let cur = self.rows[r2].get(&j).copied().unwrap_or(0);
                    let new = sub(cur, mul(factor, v)?)?;
                    if new == 0 {
                        self.rows[r2].remove(&j);
                        self.cols[j].remove(&r2);
                    } else {
                        self.rows[r2].insert(j, new);
                        self.cols[j].insert(r2);
                    }
                }
            }
            for &j in pivot_row.keys() {
                self.cols[j].remove(&r);
            }
            debug_assert!(self.cols[c].is_empty());
            count += 1;
        }
    }

    fn residue(&self) -> Vec<Vec<i64>> {
        let live_rows: Vec<usize> = (0..self.rows.len())
            .filter(|&r| !self.rows[r].is_empty())
            .collect();
        let live_cols: Vec<usize> = (0..self.cols.len())
            .filter(|&c| !self.cols[c].is_empty())
            .collect();
        let col_pos: BTreeMap<usize, usize> =
            live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        live_rows
            .iter()
            .map(|&r| {
                let mut row = vec![0; live_cols.len()];
                for (c, &v) in &self.rows[r] {
                    row[col_pos[c]] = v;
                }
                row
            })
            .collect()
    }
}

#[allow(clippy::needless_range_loop)] // row operations read one row while writing another
fn dense_snf(a: &mut [Vec<i64>]) -> Result<Vec<i64>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..m.min(n) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if a[i][t] != 0 {
                    let q = a[i][t] / a[t][t];
                    for j in t..n {
                        a[i][j] = sub(a[i][j], mul(q, a[t][j])?)?;
                    }
                    dirty |= a[i][t] != 0;
                }
            }
            for j in t + 1..n {
                if a[t][j] != 0 {
                    let q = a[t][j] / a[t][t];
                    for row in a.iter_mut().skip(t) {
                        row[j] = sub(row[j], mul(q, row[t])?)?;
                    }
                    dirty |= a[t][j] != 0;
                }
            }
            if dirty {
                let col = (t + 1..m)
                    .filter(|&i| a[i][t] != 0)
                    .min_by_key(|&i| a[i][t].abs());
                let row = (t + 1..n)
                    .filter(|&j| a[t][j] != 0)
                    .min_by_key(|&j| a[t][j].abs());
                let from_col = col.map(|i| a[i][t].abs());
                let from_row = row.map(|j| a[t][j].abs());
                if from_col.is_some() && from_col <= from_row.or(from_col) {
                    a.swap(t, col.unwrap());
                } else if let Some(j) = row {
                    for r in a.iter_mut() {
                        r.swap(t, j);
                    }
                }
                continue;
            }
            let p = a[t][t];
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0));
            if let Some(i) = bad {
                for j in t..n {
                    a[t][j] = add(a[t][j], a[i][j])?;
                }
                continue;
            }
            break;
        }
        out.push(a[t][t].checked_abs().ok_or(LinAlgError::Overflow)?);
    }
    Ok(out)
}

/// `Z^free_rank ⊕ Z/t₁ ⊕ … ⊕ Z/t_k` with `t₁ | t₂ | … | t_k`, all `tᵢ ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

impl FgAbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Result<Self> {
        if let Some(t) = torsion.iter().find(|&&t| t < 2) {
            return Err(LinAlgError::InvalidTorsion(format!(
                "coefficient {t} is below 2"
            )));
        }
        if let Some(w) = torsion.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(LinAlgError::InvalidTorsion(format!(
                "{} does not divide {}",
                w[0], w[1]
            )));
        }
        Ok(FgAbelianGroup { free_rank, torsion })
    }

    pub fn trivial() -> Self {
        FgAbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// `"0"`, `"Z"`, `"Z^2"`, `"Z (+) Z/2"`, …
pub fn group_format(g: &FgAbelianGroup) -> String {
    g.to_string()
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" (+) "))
        }
    }
}
