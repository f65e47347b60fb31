//! The `surfkit` command line.
//!
//! Every failure is reported on stderr as one line starting with an
//! upper-case code such as `E_EDGE_MULTIPLICITY:`. Exit status is 0 on
//! success, 1 when the input is well formed but mathematically rejected,
//! and 2 for usage, parse and I/O problems.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::json;
use surfkit::cellcomplex::{CellComplex, ComplexError};
use surfkit::classify::{classify_with_trace, ClassifyError};
use surfkit::intlinalg::LinAlgError;
use surfkit::planegeom::{
    directed_hausdorff, hausdorff_distance, ifs_iterate, parse_ifs, parse_point, parse_points,
    preset, preset_seed, snowflake, winding_number, ClosedCurve, GeomError, Point, Primitive,
    Scene,
};
use surfkit::rewrite::{normalize, scramble, RewriteError};
use surfkit::simplicial::{refine_to_triangulation, RefineError, SimplicialComplex2};

pub mod input;
mod svg;

pub use svg::render_svg;

use input::{parse_surface, Surface};

/// Moves applied by `--seed` before the real work starts.
pub const SCRAMBLE_MOVES: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: &'static str,
    pub exit: i32,
    pub message: String,
}

impl CliError {
    pub fn new(code: &'static str, exit: i32, message: impl Into<String>) -> Self {
        CliError {
            code,
            exit,
            message: message.into(),
        }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        CliError::new("E_PARSE", 2, message)
    }

    fn usage(message: impl Into<String>) -> Self {
        CliError::new("E_USAGE", 2, message)
    }

    fn domain(code: &'static str, message: impl fmt::Display) -> Self {
        CliError::new(code, 1, message.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // keep it on one line
        write!(f, "{}: {}", self.code, self.message.replace('\n', "; "))
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        let code = match e {
            ComplexError::EmptyFaceSet => "E_EMPTY_COMPLEX",
            ComplexError::DuplicateFace(_) => "E_DUPLICATE_FACE",
            ComplexError::EdgeMultiplicity { .. } => "E_EDGE_MULTIPLICITY",
            ComplexError::Disconnected { .. } => "E_DISCONNECTED",
        };
        CliError::domain(code, e)
    }
}

impl From<RewriteError> for CliError {
    fn from(e: RewriteError) -> Self {
        match e {
            RewriteError::Complex(c) => c.into(),
            RewriteError::InvalidInvariants(_) => CliError::domain("E_INFEASIBLE_INVARIANTS", e),
            e => CliError::domain("E_INTERNAL", e),
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Rewrite(r) => r.into(),
            ClassifyError::InfeasibleInvariants(_) => {
                CliError::domain("E_INFEASIBLE_INVARIANTS", e)
            }
            e => CliError::domain("E_INTERNAL", e),
        }
    }
}

impl From<RefineError> for CliError {
    fn from(e: RefineError) -> Self {
        match e {
            RefineError::Complex(c) => c.into(),
            e => CliError::domain("E_REFINE", e),
        }
    }
}

impl From<LinAlgError> for CliError {
    fn from(e: LinAlgError) -> Self {
        CliError::domain("E_ARITHMETIC", e)
    }
}

impl From<GeomError> for CliError {
    fn from(e: GeomError) -> Self {
        let code = match e {
            GeomError::Parse { .. } => return CliError::parse(e.to_string()),
            GeomError::UnknownPreset(_) => return CliError::usage(e.to_string()),
            GeomError::EmptySet => "E_EMPTY_SET",
            GeomError::EmptyIfs => "E_EMPTY_IFS",
            GeomError::NotContracting { .. } => "E_NOT_CONTRACTING",
            GeomError::InvalidPrimitive(_) => "E_INVALID_PRIMITIVE",
            GeomError::InvalidCurve(_) => "E_INVALID_CURVE",
            GeomError::PointOnCurve { .. } => "E_POINT_ON_CURVE",
            GeomError::RefinementLimit { .. } | GeomError::Residual(_) => "E_WINDING",
            GeomError::ConvergenceViolation { .. } => "E_CONVERGENCE",
        };
        CliError::domain(code, e)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "surfkit",
    version,
    about = "Classify compact surfaces and draw plane fractals"
)]
struct Cli {
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a cell complex or triangulation.
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Name the surface of a cell complex.
    Classify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        /// Scramble the complex with random moves first.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Rewrite a cell complex to its canonical form.
    Normalize {
        file: PathBuf,
        /// Print every move, one per line.
        #[arg(long)]
        trace: bool,
        #[arg(long)]
        json: bool,
        /// Scramble the complex with random moves first.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Integral homology of a triangulation (cell complexes are refined first).
    Homology {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Subdivide a cell complex into a triangulation.
    Refine { file: PathBuf },
    /// Iterate an IFS and draw the result as SVG.
    FractalRender {
        /// File with one map `a b c d e f` per line.
        #[arg(conflicts_with = "preset", required_unless_present = "preset")]
        ifs: Option<PathBuf>,
        #[arg(long)]
        preset: Option<String>,
        #[arg(long, default_value_t = 6)]
        iters: usize,
    },
    /// Hausdorff distance between two point sets.
    Hausdorff {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Winding number of a closed polygon around a point.
    Winding {
        curve: PathBuf,
        #[arg(long, allow_hyphen_values = true, value_name = "X,Y")]
        point: String,
        #[arg(long)]
        json: bool,
    },
}

/// Runs one invocation. `args` includes the program name. Results go to
/// `out` (or the `--out` file), notices and errors to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let text = e.render().to_string();
                    let first = text
                        .lines()
                        .next()
                        .unwrap_or("")
                        .trim_start_matches("error: ");
                    let _ = writeln!(err, "{}", CliError::usage(first));
                    let _ = write!(
                        err,
                        "{}",
                        text.split_once('\n').map_or("", |(_, rest)| rest)
                    );
                    2
                }
            };
        }
    };
    let result = dispatch(cli.command, err).and_then(|bytes| match &cli.out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| io_error(path, e)),
        None => out
            .write_all(&bytes)
            .map_err(|e| CliError::new("E_IO", 2, e.to_string())),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit
        }
    }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError::new("E_IO", 2, format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| io_error(path, e))
}

fn read_complex(path: &Path) -> Result<CellComplex, CliError> {
    match parse_surface(&read(path)?)? {
        Surface::Cells(f) => f.build(),
        Surface::Triangles(_) => Err(CliError::usage(format!(
            "{} is a triangulation; this command needs a cell complex",
            path.display()
        ))),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn json_line(v: &impl serde::Serialize) -> Vec<u8> {
    let mut s = serde_json::to_string(v).expect("values serialize");
    s.push('\n');
    s.into_bytes()
}

fn maybe_scramble(
    k: CellComplex,
    seed: Option<u64>,
    err: &mut dyn Write,
) -> Result<CellComplex, CliError> {
    let Some(seed) = seed else { return Ok(k) };
    let scrambled = scramble(&k, seed, SCRAMBLE_MOVES);
    let (before, after) = (
        k.invariant_report().key(),
        scrambled.invariant_report().key(),
    );
    if before != after {
        return Err(CliError::domain(
            "E_SELFTEST",
            format!("scrambling changed the invariants {before:?} -> {after:?}"),
        ));
    }
    let _ = writeln!(
        err,
        "note: scrambled with seed {seed}: {} face(s), {} edge(s)",
        scrambled.num_faces(),
        scrambled.num_edges()
    );
    Ok(scrambled)
}

fn dispatch(command: Command, err: &mut dyn Write) -> Result<Vec<u8>, CliError> {
    match command {
        Command::Validate { file, json } => validate(&file, json),
        Command::Classify { file, json, seed } => {
            let k = maybe_scramble(read_complex(&file)?, seed, err)?;
            let c = classify_with_trace(&k)?;
            let report = c.class.report();
            if json {
                return Ok(json_line(&report));
            }
            let mut s = String::new();
            s += &format!("name: {}\n", report.name);
            s += &format!("orientable: {}\n", yes_no(report.orientable));
            s += &format!("contours: {}\n", report.contours);
            s += &format!("euler: {}\n", report.euler);
            s += &format!("normal form: {}\n", c.class.form);
            s += &format!("genus: {}\n", report.genus);
            s += &format!("word: {}\n", report.normal_word);
            s += &format!("H1: {}\n", report.h1);
            s += &format!("pi1: {}\n", c.class.fundamental_group());
            Ok(s.into_bytes())
        }
        Command::Normalize {
            file,
            trace,
            json,
            seed,
        } => {
            let k = maybe_scramble(read_complex(&file)?, seed, err)?;
            let res = normalize(&k)?;
            if json {
                let mut v = json!({
                    "type": res.normal.kind,
                    "p": res.normal.p,
                    "q": res.normal.q,
                    "word": res.canonical_word.to_string(),
                    "moves": res.trace.len(),
                });
                if trace {
                    v["trace"] = res.trace.iter().map(|m| m.trace_line()).collect();
                }
                return Ok(json_line(&v));
            }
            let mut s = String::new();
            if trace {
                for m in &res.trace {
                    s += &m.trace_line();
                    s.push('\n');
                }
            }
            s += &format!("# {}\n", res.normal);
            s += format!("face A : {}", res.canonical_word).trim_end();
            s.push('\n');
            Ok(s.into_bytes())
        }
        Command::Homology { file, json } => {
            let tri = match parse_surface(&read(&file)?)? {
                Surface::Triangles(t) => t,
                Surface::Cells(f) => {
                    let r = refine_to_triangulation(&f.build()?)?;
                    let _ = writeln!(
                        err,
                        "note: refined the cell complex to {} triangles",
                        r.simplicial.num_triangles()
                    );
                    r.simplicial
                }
            };
            let h = tri.homology()?;
            let euler = tri.euler_characteristic();
            if json {
                return Ok(json_line(&json!({
                    "h0": h.h0.to_string(),
                    "h1": h.h1.to_string(),
                    "h2": h.h2.to_string(),
                    "betti": h.betti(),
                    "torsion": [h.h0.torsion(), h.h1.torsion(), h.h2.torsion()],
                    "euler": euler,
                })));
            }
            Ok(format!("{h}\neuler: {euler}\n").into_bytes())
        }
        Command::Refine { file } => {
            let k = read_complex(&file)?;
            let r = refine_to_triangulation(&k)?;
            let _ = writeln!(
                err,
                "note: {} vertices, {} edges, {} triangles",
                r.simplicial.num_vertices(),
                r.simplicial.num_edges(),
                r.simplicial.num_triangles()
            );
            Ok(r.simplicial.to_text().into_bytes())
        }
        Command::FractalRender {
            ifs,
            preset: name,
            iters,
        } => {
            let scene = match (ifs, name) {
                (_, Some(name)) if name == "snowflake" => snowflake(iters),
                (_, Some(name)) => ifs_iterate(&preset(&name)?, &preset_seed(&name)?, iters),
                (Some(path), None) => {
                    let sys = parse_ifs(&read(&path)?)?;
                    let square = Primitive::polygon(vec![
                        Point::new(0.0, 0.0),
                        Point::new(1.0, 0.0),
                        Point::new(1.0, 1.0),
                        Point::new(0.0, 1.0),
                    ])?;
                    ifs_iterate(&sys, &Scene::new(vec![square]), iters)
                }
                (None, None) => return Err(CliError::usage("give an IFS file or --preset")),
            };
            let _ = writeln!(
                err,
                "note: {} primitives after {iters} iterations",
                scene.len()
            );
            let mut buf = Vec::new();
            render_svg(&scene, &mut buf).map_err(|e| CliError::new("E_IO", 2, e.to_string()))?;
            Ok(buf)
        }
        Command::Hausdorff { a, b, json } => {
            let (pa, pb) = (parse_points(&read(&a)?)?, parse_points(&read(&b)?)?);
            let d = hausdorff_distance(&pa, &pb)?;
            if json {
                return Ok(json_line(&json!({
                    "distance": d,
                    "directed": [directed_hausdorff(&pa, &pb)?, directed_hausdorff(&pb, &pa)?],
                })));
            }
            Ok(format!("{d}\n").into_bytes())
        }
        Command::Winding { curve, point, json } => {
            let z0 = parse_point(&point).map_err(|e| CliError::usage(format!("--point: {e}")))?;
            let c = ClosedCurve::new(parse_points(&read(&curve)?)?)?;
            let w = winding_number(&c, z0)?;
            if json {
                return Ok(json_line(&json!({
                    "winding_number": w.number,
                    "residual": w.residual,
                    "pieces": w.pieces,
                })));
            }
            Ok(format!("{}\n", w.number).into_bytes())
        }
    }
}

fn validate(path: &Path, json: bool) -> Result<Vec<u8>, CliError> {
    match parse_surface(&read(path)?)? {
        Surface::Cells(f) => {
            let k = f.build()?;
            let r = k.invariant_report();
            if json {
                return Ok(json_line(&json!({
                    "valid": true,
                    "format": "cells",
                    "faces": r.n2,
                    "edges": r.n1,
                    "vertices": r.n0,
                    "orientable": r.orientable,
                    "contours": r.num_contours,
                    "euler": r.euler,
                })));
            }
            Ok(format!(
                "ok: {} face(s), {} edge(s), {} vertex(es)\norientable: {}\ncontours: {}\neuler: {}\n",
                r.n2,
                r.n1,
                r.n0,
                yes_no(r.orientable),
                r.num_contours,
                r.euler
            )
            .into_bytes())
        }
        Surface::Triangles(t) => validate_triangles(&t, json),
    }
}

fn validate_triangles(t: &SimplicialComplex2, json: bool) -> Result<Vec<u8>, CliError> {
    let report = t.validate_surface();
    if !report.passes() {
        return Err(CliError::domain("E_NOT_A_SURFACE", &report));
    }
    if json {
        return Ok(json_line(&json!({
            "valid": true,
            "format": "triangles",
            "bordered": report.bordered,
            "border_circles": report.border_circles,
            "vertices": t.num_vertices(),
            "edges": t.num_edges(),
            "triangles": t.num_triangles(),
            "euler": t.euler_characteristic(),
        })));
    }
    Ok(format!(
        "{report}\n{} vertices, {} edges, {} triangles\neuler: {}\n",
        t.num_vertices(),
        t.num_edges(),
        t.num_triangles(),
        t.euler_characteristic()
    )
    .into_bytes())
}
