//! Input files.
//!
//! Cell complexes are UTF-8 text, one statement per line:
//!
//! ```text
//! # a torus
//! surface torus
//! face A : a b a' b'
//! ```
//!
//! * `#` starts a comment that runs to the end of the line; blank lines are
//!   ignored.
//! * `surface <name>` is optional and may only appear before the first face.
//!   The name is informational.
//! * `face <Name> : <word>` declares one face. `<Name>` is an identifier
//!   `[A-Za-z][A-Za-z0-9_]*`; `<word>` is a whitespace-separated list of edge
//!   identifiers, each optionally followed by `'` for the inverse. The word
//!   may be empty (a sphere is `face A :`).
//!
//! Triangulations use one `triangle <u> <v> <w>` line per triangle. Point
//! sets and curves use one `x,y` pair per line, and IFS files one map per
//! line as `a b c d e f` for `(x, y) ↦ (ax + by + e, cx + dy + f)`.

use surfkit::cellcomplex::{CellComplex, Face};
use surfkit::edgeword::{is_identifier, parse_word};
use surfkit::simplicial::{parse_simplicial, SimplicialComplex2};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexFile {
    pub surface: Option<String>,
    pub faces: Vec<Face>,
}

impl ComplexFile {
    pub fn build(self) -> Result<CellComplex, CliError> {
        CellComplex::from_faces(self.faces).map_err(CliError::from)
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn parse_error(line: usize, message: impl std::fmt::Display) -> CliError {
    CliError::parse(format!("line {line}: {message}"))
}

pub fn parse_complex(text: &str) -> Result<ComplexFile, CliError> {
    let mut file = ComplexFile {
        surface: None,
        faces: Vec::new(),
    };
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match keyword {
            "surface" => {
                if file.surface.is_some() || !file.faces.is_empty() {
                    return Err(parse_error(n, "`surface` must come once, before the faces"));
                }
                let name = rest.trim();
                if name.is_empty() {
                    return Err(parse_error(n, "`surface` needs a name"));
                }
                file.surface = Some(name.to_string());
            }
            "face" => {
                let (name, word) = rest
                    .split_once(':')
                    .ok_or_else(|| parse_error(n, "expected `face <Name> : <word>`"))?;
                let name = name.trim();
                if !is_identifier(name) {
                    return Err(parse_error(n, format!("invalid face name {name:?}")));
                }
                let word = parse_word(word).map_err(|e| parse_error(n, e))?;
                file.faces.push(Face::new(name, word));
            }
            other => return Err(parse_error(n, format!("unknown statement `{other}`"))),
        }
    }
    Ok(file)
}

#[derive(Debug, Clone)]
pub enum Surface {
    Cells(ComplexFile),
    Triangles(SimplicialComplex2),
}

/// Decides the format from the first statement.
pub fn parse_surface(text: &str) -> Result<Surface, CliError> {
    let first = text.lines().map(strip_comment).find(|l| !l.is_empty());
    match first.and_then(|l| l.split_whitespace().next()) {
        Some("triangle") => parse_simplicial(text)
            .map(Surface::Triangles)
            .map_err(|e| CliError::parse(e.to_string())),
        Some("face" | "surface") => parse_complex(text).map(Surface::Cells),
        Some(other) => Err(parse_error(1, format!("unknown statement `{other}`"))),
        None => Err(CliError::parse("file has no faces or triangles")),
    }
}
