//! Elementary subdivisions, composite rewrite rules and normalization.
//!
//! Every move takes a complex and returns a new one. Fresh edges and faces
//! get names of the form `_g<n>`, which the word parser never accepts, so
//! they cannot clash with user names.

mod moves;
mod normal;
mod normalize;
mod scramble;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::cellcomplex::{CellComplex, ComplexError};
use crate::edgeword::{is_identifier, EdgeSym, Word};

pub use moves::{
    apply_cancel, apply_crosscap, apply_handle_crosscap, apply_p1, apply_p1_inverse, apply_p2,
    apply_p2_inverse, apply_relabel, apply_swap, split_face,
};
pub use normal::{is_canonical, NormalForm, SurfaceType};
pub use normalize::{normalize, NormalizationResult};
pub use scramble::{scramble, scramble_with_moves};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("edge {0:?} not found")]
    EdgeNotFound(String),
    #[error("face {0:?} not found")]
    FaceNotFound(String),
    #[error("name {0:?} is already in use")]
    NameCollision(String),
    #[error("{0:?} is not a valid name")]
    InvalidName(String),
    #[error("({b}, {c}) cannot be contracted: ({b}, {c}') is not a vertex")]
    NotContractible { b: String, c: String },
    #[error("bad split position {position} for face {face:?}")]
    BadPosition { face: String, position: usize },
    #[error("cannot merge: {0}")]
    NotMergeable(String),
    #[error("rule does not apply: {0}")]
    NotApplicable(String),
    #[error("no canonical complex has these invariants: {0}")]
    InvalidInvariants(String),
    #[error("internal invariant violation: {0}")]
    InternalInvariantViolation(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

pub(crate) fn is_generated(name: &str) -> bool {
    name.strip_prefix("_g")
        .is_some_and(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
}

pub(crate) fn check_name(name: &str) -> Result<(), RewriteError> {
    if is_identifier(name) || is_generated(name) {
        Ok(())
    } else {
        Err(RewriteError::InvalidName(name.to_string()))
    }
}

pub(crate) fn sym(name: &str, inverted: bool) -> EdgeSym {
    EdgeSym::from_arc(Arc::from(name), inverted)
}

/// Source of `_g<n>` names not yet used by a complex.
#[derive(Debug, Clone)]
pub struct NameGen {
    next: u64,
}

impl NameGen {
    pub fn for_complex(k: &CellComplex) -> Self {
        let max = k
            .edges()
            .chain(k.faces().iter().map(|f| &*f.name))
            .filter(|n| is_generated(n))
            .filter_map(|n| n[2..].parse::<u64>().ok())
            .max()
            .unwrap_or(0);
        NameGen { next: max + 1 }
    }

    pub fn fresh(&mut self) -> String {
        let s = format!("_g{}", self.next);
        self.next += 1;
        s
    }
}

/// A move together with its parameters. Positions index the stored face
/// word of the complex the move is applied to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveKind {
    P1 {
        edge: String,
        b: String,
        c: String,
    },
    P1Inv {
        b: EdgeSym,
        c: EdgeSym,
        fresh: String,
    },
    P2 {
        face: String,
        start: usize,
        len: usize,
        d: String,
        new_face: String,
    },
    P2Inv {
        a1: String,
        a2: String,
        d: String,
    },
    Cancel {
        face: String,
        pos: usize,
    },
    CrossCap {
        face: String,
        pos: usize,
        fresh: String,
    },
    Swap {
        face: String,
        pos: usize,
        u_len: usize,
        fresh: String,
    },
    HandleCrossCap {
        face: String,
        cross: usize,
        handle: usize,
        fresh: [String; 3],
    },
    /// Renames edges and restarts the first face's word at `start`.
    Relabel {
        map: Vec<(String, EdgeSym)>,
        start: usize,
    },
}

impl MoveKind {
    pub fn apply(&self, k: &CellComplex) -> Result<CellComplex, RewriteError> {
        match self {
            MoveKind::P1 { edge, b, c } => apply_p1(k, edge, b, c),
            MoveKind::P1Inv { b, c, fresh } => apply_p1_inverse(k, b, c, fresh),
            MoveKind::P2 {
                face,
                start,
                len,
                d,
                new_face,
            } => split_face(k, face, *start, *len, d, new_face),
            MoveKind::P2Inv { a1, a2, d } => apply_p2_inverse(k, a1, a2, d),
            MoveKind::Cancel { face, pos } => apply_cancel(k, face, *pos),
            MoveKind::CrossCap { face, pos, fresh } => apply_crosscap(k, face, *pos, fresh),
            MoveKind::Swap {
                face,
                pos,
                u_len,
                fresh,
            } => apply_swap(k, face, *pos, *u_len, fresh),
            MoveKind::HandleCrossCap {
                face,
                cross,
                handle,
                fresh,
            } => apply_handle_crosscap(k, face, *cross, *handle, fresh),
            MoveKind::Relabel { map, start } => apply_relabel(k, map, *start),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MoveKind::P1 { .. } => "P1",
            MoveKind::P1Inv { .. } => "P1inv",
            MoveKind::P2 { .. } => "P2",
            MoveKind::P2Inv { .. } => "P2inv",
            MoveKind::Cancel { .. } => "cancel",
            MoveKind::CrossCap { .. } => "crosscap",
            MoveKind::Swap { .. } => "swap",
            MoveKind::HandleCrossCap { .. } => "handle-crosscap",
            MoveKind::Relabel { .. } => "relabel",
        }
    }

    pub fn is_elementary(&self) -> bool {
        matches!(
            self,
            MoveKind::P1 { .. }
                | MoveKind::P1Inv { .. }
                | MoveKind::P2 { .. }
                | MoveKind::P2Inv { .. }
        )
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        match self {
            MoveKind::P1 { edge, b, c } => write!(f, " {edge} -> {b} {c}"),
            MoveKind::P1Inv { b, c, fresh } => write!(f, " {b} {c} -> {fresh}"),
            MoveKind::P2 {
                face,
                start,
                len,
                d,
                new_face,
            } => write!(f, " {face}@{start}+{len} d={d} new={new_face}"),
            MoveKind::P2Inv { a1, a2, d } => write!(f, " {a1} {a2} d={d}"),
            MoveKind::Cancel { face, pos } => write!(f, " {face}@{pos}"),
            MoveKind::CrossCap { face, pos, fresh } => write!(f, " {face}@{pos} b={fresh}"),
            MoveKind::Swap {
                face,
                pos,
                u_len,
                fresh,
            } => write!(f, " {face}@{pos} u={u_len} b={fresh}"),
            MoveKind::HandleCrossCap {
                face,
                cross,
                handle,
                fresh,
            } => write!(f, " {face}@{cross} handle@{handle} new={}", fresh.join(",")),
            MoveKind::Relabel { map, start } => {
                write!(f, " @{start}")?;
                for (old, new) in map {
                    write!(f, " {old}={new}")?;
                }
                Ok(())
            }
        }
    }
}

/// One recorded move with full before and after snapshots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub kind: MoveKind,
    pub before: CellComplex,
    pub after: CellComplex,
}

impl Move {
    pub fn perform(kind: MoveKind, before: &CellComplex) -> Result<Move, RewriteError> {
        let after = kind.apply(before)?;
        Ok(Move {
            kind,
            before: before.clone(),
            after,
        })
    }

    /// Re-applies the move to its `before` state.
    pub fn replay(&self) -> Result<CellComplex, RewriteError> {
        self.kind.apply(&self.before)
    }

    /// `<kind> <params> | <before-words> => <after-words>`
    pub fn trace_line(&self) -> String {
        format!(
            "{} | {} => {}",
            self.kind,
            face_words(&self.before),
            face_words(&self.after)
        )
    }
}

fn face_words(k: &CellComplex) -> String {
    k.faces()
        .iter()
        .map(|f| f.word.to_string())
        .collect::<Vec<_>>()
        .join(" ; ")
}

pub(crate) fn word_of(syms: impl IntoIterator<Item = EdgeSym>) -> Word {
    syms.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_names() {
        assert!(is_generated("_g1"));
        assert!(is_generated("_g104"));
        assert!(!is_generated("_g"));
        assert!(!is_generated("_gx"));
        assert!(!is_generated("g1"));
        assert!(check_name("_g3").is_ok());
        assert!(check_name("x'").is_err());
    }

    #[test]
    fn name_gen_skips_existing() {
        let k = CellComplex::build([("_g7", "a b".parse::<Word>().unwrap())]).unwrap();
        let mut g = NameGen::for_complex(&k);
        assert_eq!(g.fresh(), "_g8");
        assert_eq!(g.fresh(), "_g9");
    }
}
