//! Surface classification: names, genus, fundamental group presentation,
//! first homology and connected sums.

use serde::Serialize;
use thiserror::Error;

use crate::cellcomplex::CellComplex;
use crate::edgeword::{format_word, EdgeSym, Word};
use crate::intlinalg::FgAbelianGroup;
use crate::rewrite::{normalize, Move, NormalForm, RewriteError, SurfaceType};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("infeasible invariants: {0}")]
    InfeasibleInvariants(String),
    #[error("connected sum is only defined here for surfaces without border")]
    BorderedNotSupported,
    #[error("normal form {found} disagrees with the invariants, which give {expected}")]
    Inconsistent {
        found: NormalForm,
        expected: NormalForm,
    },
    #[error(transparent)]
    Rewrite(RewriteError),
}

impl From<RewriteError> for ClassifyError {
    fn from(e: RewriteError) -> Self {
        match e {
            RewriteError::InvalidInvariants(m) => ClassifyError::InfeasibleInvariants(m),
            e => ClassifyError::Rewrite(e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceClass {
    pub orientable: bool,
    /// Number of contours (boundary circles).
    pub q: usize,
    pub euler: i64,
    pub form: NormalForm,
    pub genus: usize,
    pub name: String,
    pub canonical_word: Word,
}

impl SurfaceClass {
    pub fn from_normal_form(form: NormalForm) -> Self {
        SurfaceClass {
            orientable: form.orientable(),
            q: form.q,
            euler: form.euler(),
            form,
            genus: form.genus(),
            name: surface_name(form),
            canonical_word: form.word(),
        }
    }

    pub fn h1(&self) -> FgAbelianGroup {
        h1_from_normal_form(self.form)
    }

    pub fn fundamental_group(&self) -> Presentation {
        fundamental_group(self.form)
    }

    pub fn report(&self) -> ClassificationReport {
        let pi = self.fundamental_group();
        ClassificationReport {
            orientable: self.orientable,
            contours: self.q,
            euler: self.euler,
            kind: self.form.kind,
            p: self.form.p,
            q: self.q,
            genus: self.genus,
            name: self.name.clone(),
            normal_word: format_word(&self.canonical_word),
            h1: self.h1().to_string(),
            pi1_generators: pi.generators.clone(),
            pi1_relator: pi.relators.first().map(format_word),
        }
    }
}

/// The stable JSON shape of a classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub orientable: bool,
    pub contours: usize,
    pub euler: i64,
    #[serde(rename = "type")]
    pub kind: SurfaceType,
    pub p: usize,
    pub q: usize,
    pub genus: usize,
    pub name: String,
    pub normal_word: String,
    pub h1: String,
    pub pi1_generators: Vec<String>,
    /// `None` when the group is free (surfaces with border).
    pub pi1_relator: Option<String>,
}

/// Group presentation with at most one relator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl std::fmt::Display for Presentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "<")?;
        if !self.generators.is_empty() {
            write!(f, " {}", self.generators.join(", "))?;
        }
        if !self.relators.is_empty() {
            let rels: Vec<String> = self
                .relators
                .iter()
                .map(|r| {
                    if r.is_empty() {
                        "1".to_string()
                    } else {
                        format_word(r)
                    }
                })
                .collect();
            write!(f, " | {}", rels.join(", "))?;
        }
        write!(f, " >")
    }
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub class: SurfaceClass,
    pub trace: Vec<Move>,
}

pub fn classify(k: &CellComplex) -> Result<SurfaceClass, ClassifyError> {
    classify_with_trace(k).map(|c| c.class)
}

/// Classifies and keeps the normalization trace.
pub fn classify_with_trace(k: &CellComplex) -> Result<Classification, ClassifyError> {
    let rep = k.invariant_report();
    let expected = normal_form_from_invariants(rep.orientable, rep.num_contours, rep.euler)?;
    let res = normalize(k)?;
    if res.normal != expected {
        return Err(ClassifyError::Inconsistent {
            found: res.normal,
            expected,
        });
    }
    let mut class = SurfaceClass::from_normal_form(expected);
    class.canonical_word = res.canonical_word;
    Ok(Classification {
        class,
        trace: res.trace,
    })
}

pub fn normal_form_from_invariants(
    orientable: bool,
    q: usize,
    euler: i64,
) -> Result<NormalForm, ClassifyError> {
    Ok(NormalForm::from_invariants(orientable, q, euler)?)
}

fn surface_name(f: NormalForm) -> String {
    use SurfaceType::*;
    match (f.kind, f.p, f.q) {
        (TypeI, 0, 0) => "sphere".into(),
        (TypeI, 1, 0) => "torus".into(),
        (TypeI, p, 0) => format!("connected sum of {p} tori"),
        (TypeII, 1, 0) => "projective plane".into(),
        (TypeII, 2, 0) => "Klein bottle".into(),
        (TypeII, p, 0) => format!("connected sum of {p} projective planes"),
        (TypeI, 0, 1) => "closed disk".into(),
        (TypeI, 0, 2) => "annulus".into(),
        (TypeII, 1, 1) => "Möbius strip".into(),
        (kind, p, q) => {
            let o = if kind == TypeI {
                "orientable"
            } else {
                "nonorientable"
            };
            let circles = if q == 1 { "circle" } else { "circles" };
            format!("{o}, genus {p}, {q} boundary {circles}")
        }
    }
}

fn generator(name: String) -> EdgeSym {
    EdgeSym::new(&name).expect("generator names are identifiers")
}

/// Presentation read off the normal form: one relator for closed surfaces,
/// a free group for surfaces with border (`d_q` eliminated).
pub fn fundamental_group(form: NormalForm) -> Presentation {
    let mut generators = Vec::new();
    for i in 1..=form.p {
        generators.push(format!("a{i}"));
        if form.kind == SurfaceType::TypeI {
            generators.push(format!("b{i}"));
        }
    }
    if form.q > 0 {
        generators.extend((1..form.q).map(|j| format!("d{j}")));
        return Presentation {
            generators,
            relators: Vec::new(),
        };
    }
    let mut rel = Vec::new();
    for i in 1..=form.p {
        let a = generator(format!("a{i}"));
        match form.kind {
            SurfaceType::TypeI => {
                let b = generator(format!("b{i}"));
                rel.extend([a.clone(), b.clone(), a.inverse(), b.inverse()]);
            }
            SurfaceType::TypeII => rel.extend([a.clone(), a]),
        }
    }
    Presentation {
        generators,
        relators: vec![Word::new(rel)],
    }
}

/// `Z^{2p}`, `Z^{p−1} ⊕ Z/2`, `Z^{2p+q−1}` or `Z^{p+q−1}`.
pub fn h1_from_normal_form(form: NormalForm) -> FgAbelianGroup {
    match (form.kind, form.q) {
        (SurfaceType::TypeI, 0) => FgAbelianGroup::free(2 * form.p),
        (SurfaceType::TypeII, 0) => {
            FgAbelianGroup::new(form.p - 1, vec![2]).expect("2 is a valid coefficient")
        }
        (SurfaceType::TypeI, q) => FgAbelianGroup::free(2 * form.p + q - 1),
        (SurfaceType::TypeII, q) => FgAbelianGroup::free(form.p + q - 1),
    }
}

/// Connected sum of two closed surfaces, computed on the invariants.
pub fn connected_sum(s1: &SurfaceClass, s2: &SurfaceClass) -> Result<SurfaceClass, ClassifyError> {
    if s1.q > 0 || s2.q > 0 {
        return Err(ClassifyError::BorderedNotSupported);
    }
    let form =
        normal_form_from_invariants(s1.orientable && s2.orientable, 0, s1.euler + s2.euler - 2)?;
    Ok(SurfaceClass::from_normal_form(form))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edgeword::parse_word;

    fn one_face(w: &str) -> CellComplex {
        CellComplex::build([("A", parse_word(w).unwrap())]).unwrap()
    }

    fn form(kind: SurfaceType, p: usize, q: usize) -> NormalForm {
        NormalForm::new(kind, p, q).unwrap()
    }

    #[test]
    fn classification_table() {
        let t = classify(&one_face("a b a' b'")).unwrap();
        assert_eq!(
            (t.orientable, t.q, t.euler, t.genus, t.name.as_str()),
            (true, 0, 0, 1, "torus")
        );
        assert_eq!(t.form, form(SurfaceType::TypeI, 1, 0));
        let k = classify(&one_face("a b a b'")).unwrap();
        assert_eq!(
            (k.orientable, k.euler, k.name.as_str()),
            (false, 0, "Klein bottle")
        );
        assert_eq!(k.form, form(SurfaceType::TypeII, 2, 0));
        let m = classify(&one_face("a b a c")).unwrap();
        assert_eq!((m.q, m.name.as_str()), (1, "Möbius strip"));
        assert_eq!(m.form, form(SurfaceType::TypeII, 1, 1));
        let s = classify(&one_face("")).unwrap();
        assert_eq!((s.euler, s.name.as_str()), (2, "sphere"));
        let p = classify(&one_face("a a")).unwrap();
        assert_eq!((p.euler, p.name.as_str()), (1, "projective plane"));
    }

    #[test]
    fn systematic_names() {
        let f = |k, p, q| SurfaceClass::from_normal_form(form(k, p, q)).name;
        assert_eq!(f(SurfaceType::TypeI, 2, 0), "connected sum of 2 tori");
        assert_eq!(
            f(SurfaceType::TypeI, 2, 3),
            "orientable, genus 2, 3 boundary circles"
        );
        assert_eq!(
            f(SurfaceType::TypeII, 2, 1),
            "nonorientable, genus 2, 1 boundary circle"
        );
        assert_eq!(f(SurfaceType::TypeI, 0, 2), "annulus");
        assert_eq!(f(SurfaceType::TypeI, 0, 1), "closed disk");
    }

    #[test]
    fn invariants_to_forms() {
        assert_eq!(
            normal_form_from_invariants(true, 0, 2).unwrap(),
            form(SurfaceType::TypeI, 0, 0)
        );
        assert_eq!(
            normal_form_from_invariants(false, 0, 0).unwrap(),
            form(SurfaceType::TypeII, 2, 0)
        );
        assert!(matches!(
            normal_form_from_invariants(true, 0, 1),
            Err(ClassifyError::InfeasibleInvariants(_))
        ));
    }

    #[test]
    fn presentations() {
        let p = fundamental_group(form(SurfaceType::TypeI, 2, 0));
        assert_eq!(p.generators, ["a1", "b1", "a2", "b2"]);
        assert_eq!(format_word(&p.relators[0]), "a1 b1 a1' b1' a2 b2 a2' b2'");
        let s = fundamental_group(form(SurfaceType::TypeI, 0, 0));
        assert!(s.generators.is_empty() && s.relators[0].is_empty());
        assert_eq!(s.to_string(), "< | 1 >");
        assert_eq!(
            fundamental_group(form(SurfaceType::TypeII, 1, 0)).to_string(),
            "< a1 | a1 a1 >"
        );
        let m = fundamental_group(form(SurfaceType::TypeII, 1, 1));
        assert_eq!((m.generators.len(), m.relators.len()), (1, 0));
        let b = fundamental_group(form(SurfaceType::TypeI, 1, 3));
        assert_eq!(b.generators, ["a1", "b1", "d1", "d2"]);
    }

    #[test]
    fn first_homology() {
        assert_eq!(
            h1_from_normal_form(form(SurfaceType::TypeI, 1, 0)).to_string(),
            "Z^2"
        );
        assert_eq!(
            h1_from_normal_form(form(SurfaceType::TypeII, 2, 0)).to_string(),
            "Z (+) Z/2"
        );
        assert_eq!(
            h1_from_normal_form(form(SurfaceType::TypeI, 0, 2)).to_string(),
            "Z"
        );
        assert_eq!(
            h1_from_normal_form(form(SurfaceType::TypeI, 0, 0)).to_string(),
            "0"
        );
    }

    #[test]
    fn sums() {
        let c = |k, p| SurfaceClass::from_normal_form(form(k, p, 0));
        let torus = c(SurfaceType::TypeI, 1);
        let proj = c(SurfaceType::TypeII, 1);
        let tt = connected_sum(&torus, &torus).unwrap();
        assert_eq!((tt.form, tt.euler), (form(SurfaceType::TypeI, 2, 0), -2));
        assert_eq!(connected_sum(&proj, &proj).unwrap().name, "Klein bottle");
        assert_eq!(
            connected_sum(&proj, &torus).unwrap().form,
            form(SurfaceType::TypeII, 3, 0)
        );
        let disk = SurfaceClass::from_normal_form(form(SurfaceType::TypeI, 0, 1));
        assert_eq!(
            connected_sum(&disk, &torus),
            Err(ClassifyError::BorderedNotSupported)
        );
    }

    #[test]
    fn json_report() {
        let t = classify(&one_face("a b a' b'")).unwrap();
        let v = serde_json::to_value(t.report()).unwrap();
        assert_eq!(v["name"], "torus");
        assert_eq!(v["type"], "I");
        assert_eq!(v["h1"], "Z^2");
        assert_eq!(v["normal_word"], "a1 b1 a1' b1'");
        assert_eq!(v["pi1_relator"], "a1 b1 a1' b1'");
        let m = classify(&one_face("a b a c")).unwrap();
        let v = serde_json::to_value(m.report()).unwrap();
        assert!(v["pi1_relator"].is_null());
        assert_eq!(v["contours"], 1);
    }
}
