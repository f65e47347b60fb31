use std::fmt;

use serde::Serialize;

use super::{sym, RewriteError};
use crate::cellcomplex::CellComplex;
use crate::edgeword::{EdgeSym, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SurfaceType {
    /// `a₁b₁a₁⁻¹b₁⁻¹ ⋯ aₚbₚaₚ⁻¹bₚ⁻¹ c₁h₁c₁⁻¹ ⋯ c_qh_qc_q⁻¹`, orientable.
    #[serde(rename = "I")]
    TypeI,
    /// `a₁a₁ ⋯ aₚaₚ c₁h₁c₁⁻¹ ⋯ c_qh_qc_q⁻¹` with `p ≥ 1`, nonorientable.
    #[serde(rename = "II")]
    TypeII,
}

impl fmt::Display for SurfaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SurfaceType::TypeI => "I",
            SurfaceType::TypeII => "II",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub kind: SurfaceType,
    pub p: usize,
    pub q: usize,
}

impl NormalForm {
    pub fn new(kind: SurfaceType, p: usize, q: usize) -> Result<Self, RewriteError> {
        if kind == SurfaceType::TypeII && p == 0 {
            return Err(RewriteError::InvalidInvariants(
                "type II needs p >= 1".to_string(),
            ));
        }
        Ok(NormalForm { kind, p, q })
    }

    /// The unique canonical form with the given invariants.
    pub fn from_invariants(orientable: bool, q: usize, euler: i64) -> Result<Self, RewriteError> {
        let rest = 2 - euler - q as i64;
        let bad = || {
            RewriteError::InvalidInvariants(format!("orientable={orientable} q={q} euler={euler}"))
        };
        if orientable {
            if rest < 0 || rest % 2 != 0 {
                return Err(bad());
            }
            Ok(NormalForm {
                kind: SurfaceType::TypeI,
                p: (rest / 2) as usize,
                q,
            })
        } else {
            if rest < 1 {
                return Err(bad());
            }
            Ok(NormalForm {
                kind: SurfaceType::TypeII,
                p: rest as usize,
                q,
            })
        }
    }

    pub fn orientable(&self) -> bool {
        self.kind == SurfaceType::TypeI
    }

    pub fn euler(&self) -> i64 {
        let (p, q) = (self.p as i64, self.q as i64);
        match self.kind {
            SurfaceType::TypeI => 2 - 2 * p - q,
            SurfaceType::TypeII => 2 - p - q,
        }
    }

    /// Genus: `p` for both types.
    pub fn genus(&self) -> usize {
        self.p
    }

    pub fn word(&self) -> Word {
        let mut out = Vec::new();
        for i in 1..=self.p {
            let a = sym(&format!("a{i}"), false);
            match self.kind {
                SurfaceType::TypeI => {
                    let b = sym(&format!("b{i}"), false);
                    out.extend([a.clone(), b.clone(), a.inverse(), b.inverse()]);
                }
                SurfaceType::TypeII => out.extend([a.clone(), a]),
            }
        }
        for j in 1..=self.q {
            let c = sym(&format!("c{j}"), false);
            out.extend([c.clone(), sym(&format!("h{j}"), false), c.inverse()]);
        }
        Word::new(out)
    }

    pub fn complex(&self) -> CellComplex {
        CellComplex::build([("A", self.word())]).expect("canonical words are valid")
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "type {} p={} q={}", self.kind, self.p, self.q)
    }
}

/// `Some(form)` iff `k` is a single face whose word, up to rotation and
/// renaming, has the canonical shape.
pub fn is_canonical(k: &CellComplex) -> Option<NormalForm> {
    if k.num_faces() != 1 {
        return None;
    }
    let w = &k.faces()[0].word;
    if w.is_empty() {
        return Some(NormalForm {
            kind: SurfaceType::TypeI,
            p: 0,
            q: 0,
        });
    }
    (0..w.len()).find_map(|r| parse_canonical(k, &w.rotated(r)))
}

fn parse_canonical(k: &CellComplex, w: &Word) -> Option<NormalForm> {
    let s = w.symbols();
    let n = s.len();
    let border = |x: &EdgeSym| k.is_border_edge(x.name());
    let (mut handles, mut caps, mut loops) = (0, 0, 0);
    let mut i = 0;
    while i < n {
        if i + 1 < n && s[i] == s[i + 1] && !border(&s[i]) {
            caps += 1;
            i += 2;
        } else if i + 3 < n
            && !s[i].same_edge(&s[i + 1])
            && s[i + 2] == s[i].inverse()
            && s[i + 3] == s[i + 1].inverse()
        {
            handles += 1;
            i += 4;
        } else {
            break;
        }
    }
    while i + 2 < n && s[i + 2] == s[i].inverse() && border(&s[i + 1]) && !border(&s[i]) {
        loops += 1;
        i += 3;
    }
    if i != n || (handles > 0 && caps > 0) {
        return None;
    }
    Some(if caps > 0 {
        NormalForm {
            kind: SurfaceType::TypeII,
            p: caps,
            q: loops,
        }
    } else {
        NormalForm {
            kind: SurfaceType::TypeI,
            p: handles,
            q: loops,
        }
    })
}
