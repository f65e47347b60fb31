//! Oriented edge symbols and cyclic boundary words.
//!
//! A word is written as whitespace-separated identifiers, with a trailing
//! apostrophe marking the inverse: `a b a' b'`. Text after `#` on a line is
//! ignored.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("malformed token {token:?} at position {position}")]
    MalformedToken { position: usize, token: String },
    #[error("invalid edge name {0:?}")]
    InvalidName(String),
}

/// Returns true for identifiers of the form `[A-Za-z][A-Za-z0-9_]*`.
pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// An oriented edge: an edge name together with a sign.
///
/// Ordering is by name first, then the positive symbol before its inverse.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSym {
    name: Arc<str>,
    inverted: bool,
}

impl EdgeSym {
    /// Positive symbol for a user-supplied edge name.
    pub fn new(name: &str) -> Result<Self, WordError> {
        if !is_identifier(name) {
            return Err(WordError::InvalidName(name.to_string()));
        }
        Ok(Self::from_arc(Arc::from(name), false))
    }

    /// Symbol for a machine-generated name (such as `_g12`). These names sit
    /// outside the user identifier grammar so they can never collide with
    /// names read from input files.
    pub(crate) fn from_arc(name: Arc<str>, inverted: bool) -> Self {
        EdgeSym { name, inverted }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub(crate) fn name_arc(&self) -> &Arc<str> {
        &self.name
    }

    pub fn is_inverted(&self) -> bool {
        self.inverted
    }

    /// `+1` for the edge itself, `-1` for its inverse.
    pub fn sign(&self) -> i8 {
        if self.inverted {
            -1
        } else {
            1
        }
    }

    pub fn inverse(&self) -> Self {
        EdgeSym {
            name: self.name.clone(),
            inverted: !self.inverted,
        }
    }

    /// Same edge, either orientation.
    pub fn same_edge(&self, other: &EdgeSym) -> bool {
        self.name == other.name
    }

    /// The positive orientation of this edge.
    pub fn positive(&self) -> Self {
        EdgeSym {
            name: self.name.clone(),
            inverted: false,
        }
    }
}

impl fmt::Display for EdgeSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverted {
            write!(f, "{}'", self.name)
        } else {
            f.write_str(&self.name)
        }
    }
}

impl fmt::Debug for EdgeSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A cyclic boundary word. The stored order is one representative of the
/// cyclic class; [`Word::cyclic_equal`] compares classes.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<EdgeSym>);

impl Word {
    pub fn new(symbols: Vec<EdgeSym>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn symbols(&self) -> &[EdgeSym] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<EdgeSym> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, EdgeSym> {
        self.0.iter()
    }

    /// `B(A⁻¹)`: reversed, every symbol inverted.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(EdgeSym::inverse).collect())
    }

    /// Rotation starting at index `k` (taken modulo the length).
    pub fn rotated(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return Word::empty();
        }
        let k = k % self.0.len();
        let mut v = Vec::with_capacity(self.0.len());
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// Symbol at cyclic index `i`.
    pub fn at(&self, i: usize) -> &EdgeSym {
        &self.0[i % self.0.len()]
    }

    pub fn cyclic_equal(&self, other: &Word) -> bool {
        if self.len() != other.len() {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        (0..self.len()).any(|k| (0..self.len()).all(|i| self.at(k + i) == &other.0[i]))
    }

    /// Lexicographically least rotation.
    pub fn cyclic_canonical(&self) -> Word {
        self.rotated(least_rotation(&self.0))
    }

    /// Number of occurrences of the edge of `s`, in either orientation.
    pub fn edge_count(&self, s: &EdgeSym) -> usize {
        self.0.iter().filter(|x| x.same_edge(s)).count()
    }
}

/// Booth's least-rotation algorithm.
pub(crate) fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let at = |i: usize| &s[i % n];
    let mut fail: Vec<isize> = vec![-1; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = fail[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if sj.cmp(at(k + i as usize + 1)) == Ordering::Less {
                k = j - i as usize - 1;
            }
            i = fail[i as usize];
        }
        if sj != at(k + (i + 1) as usize) {
            // here i == -1
            if sj.cmp(at(k)) == Ordering::Less {
                k = j;
            }
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    k % n
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

impl FromIterator<EdgeSym> for Word {
    fn from_iter<I: IntoIterator<Item = EdgeSym>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a EdgeSym;
    type IntoIter = std::slice::Iter<'a, EdgeSym>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Parses whitespace-separated tokens; `x'` is the inverse of `x`.
pub fn parse_word(text: &str) -> Result<Word, WordError> {
    let mut symbols = Vec::new();
    let tokens = text
        .lines()
        .map(|line| line.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace);
    for (position, token) in tokens.enumerate() {
        let malformed = || WordError::MalformedToken {
            position,
            token: token.to_string(),
        };
        let (name, inverted) = match token.strip_suffix('\'') {
            Some(rest) => (rest, true),
            None => (token, false),
        };
        if !is_identifier(name) {
            return Err(malformed());
        }
        symbols.push(EdgeSym::from_arc(Arc::from(name), inverted));
    }
    Ok(Word(symbols))
}

pub fn format_word(w: &Word) -> String {
    w.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    #[test]
    fn parses_inverse_marker() {
        let word = w("a b a' b'");
        let signs: Vec<i8> = word.iter().map(EdgeSym::sign).collect();
        assert_eq!(signs, vec![1, 1, -1, -1]);
        assert_eq!(word.symbols()[2].name(), "a");
    }

    #[test]
    fn parses_empty_and_repeated() {
        assert!(w("").is_empty());
        assert!(w("   # only a comment").is_empty());
        let word = w("a1 a1");
        assert_eq!(word.len(), 2);
        assert_eq!(word.symbols()[0], word.symbols()[1]);
    }

    #[test]
    fn rejects_malformed_tokens() {
        assert_eq!(
            parse_word("a ' b"),
            Err(WordError::MalformedToken {
                position: 1,
                token: "'".into()
            })
        );
        assert!(matches!(
            parse_word("a b'' c"),
            Err(WordError::MalformedToken { position: 1, .. })
        ));
        assert!(parse_word("1a").is_err());
        assert!(parse_word("_g1").is_err());
        assert!(parse_word("a-b").is_err());
    }

    #[test]
    fn inverse_reverses_and_flips() {
        assert_eq!(w("a b c").inverse(), w("c' b' a'"));
        assert_eq!(Word::empty().inverse(), Word::empty());
    }

    #[test]
    fn cyclic_equality() {
        assert!(w("a b c").cyclic_equal(&w("b c a")));
        assert!(!w("a b c").cyclic_equal(&w("c b a")));
        assert!(Word::empty().cyclic_equal(&Word::empty()));
        assert!(!w("a").cyclic_equal(&w("a'")));
    }

    #[test]
    fn canonical_rotation() {
        assert_eq!(w("b a c").cyclic_canonical(), w("a c b"));
        assert_eq!(w("a").cyclic_canonical(), w("a"));
        assert_eq!(w("a' a").cyclic_canonical(), w("a a'"));
        assert_eq!(w("b a b a").cyclic_canonical(), w("a b a b"));
    }

    #[test]
    fn formats_with_apostrophe() {
        assert_eq!(format_word(&w("a b'")), "a b'");
        assert_eq!(format_word(&Word::empty()), "");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_word() -> impl Strategy<Value = Word> {
            prop::collection::vec((0u8..4, any::<bool>()), 0..12).prop_map(|v| {
                v.into_iter()
                    .map(|(n, inv)| {
                        let name = ["a", "b", "c", "d"][n as usize];
                        EdgeSym::from_arc(Arc::from(name), inv)
                    })
                    .collect()
            })
        }

        proptest! {
            #[test]
            fn inverse_is_involution(word in arb_word()) {
                prop_assert_eq!(word.inverse().inverse(), word);
            }

            #[test]
            fn format_parse_round_trip(word in arb_word()) {
                prop_assert_eq!(parse_word(&format_word(&word)).unwrap(), word);
            }

            #[test]
            fn canonical_is_least_rotation(word in arb_word(), k in 0usize..12) {
                let brute = (0..word.len().max(1)).map(|i| word.rotated(i)).min().unwrap();
                prop_assert_eq!(word.cyclic_canonical(), brute.clone());
                prop_assert_eq!(word.rotated(k).cyclic_canonical(), brute);
                prop_assert!(word.rotated(k).cyclic_equal(&word));
            }
        }
    }
}
