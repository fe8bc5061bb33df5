//! Command-line front end. JSON on standard output, a one-line summary on standard error.
//!
//! Exit codes: 0 success, 1 malformed input, 2 a certificate or verification that
//! should never fail did fail.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::check::{run_suite, Suite};
use crate::complex::cohomology;
use crate::derived::{hom_dm_dim, orthogonal_sets, DEFAULT_SEARCH_LIMIT};
use crate::grothendieck::{class_of, gorsky_witness, k0_report, verify_witness, CertificateStatus, SamplerConfig};
use crate::io::{parse_algebra, parse_complex, parse_json, parse_representation, representation_to_json};
use crate::quiver::QuiverAlgebra;

#[derive(Parser, Debug)]
#[command(name = "periodic-k0", version, about = "Periodic complexes over bound quiver algebras and their Grothendieck groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cohomology modules of a periodic complex
    Cohomology {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        complex: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
    },
    /// Class in K_0(mod A) or K_0(mod A) mod 2
    Class {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        m: usize,
    },
    /// Sampled presentation of the Grothendieck group with its certificate
    K0 {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long = "max-dim", default_value_t = 4)]
        max_dim: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Gorsky induction witness for a complex of odd period
    Gorsky {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        complex: PathBuf,
    },
    /// dim Hom(M, N[i]) in the m-periodic derived category of a hereditary algebra
    Hom {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long = "M")]
        m_module: PathBuf,
        #[arg(long = "N")]
        n_module: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        #[arg(long)]
        m: usize,
    },
    /// Maximal orthogonal sets of indecomposables over a type A quiver
    TiltingSearch {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_SEARCH_LIMIT)]
        limit: usize,
    },
    /// Property batteries over seeded random instances
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 200)]
        instances: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    Input(String, String),
    Bug(Value, String),
}

fn input(kind: &str, e: impl std::fmt::Display) -> Failure {
    Failure::Input(kind.to_string(), e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input("io", format!("{}: {e}", path.display())))
}

fn load_algebra(path: &Path) -> Result<QuiverAlgebra, Failure> {
    parse_algebra(&read(path)?).map_err(|e| input("algebra", e))
}

fn load_value(path: &Path) -> Result<Value, Failure> {
    parse_json(&read(path)?).map_err(|e| input("json", e))
}

/// Parses `args` (program name first) and runs one subcommand. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let _ = writeln!(out, "{}", json!({"error": {"kind": "usage", "message": e.to_string()}}));
            return 1;
        }
    };
    match execute(cli.command) {
        Ok((value, summary)) => {
            let _ = writeln!(out, "{}", serde_json::to_string(&value).expect("json values serialize"));
            let _ = writeln!(err, "{summary}");
            0
        }
        Err(Failure::Input(kind, message)) => {
            let _ = writeln!(out, "{}", json!({"error": {"kind": kind, "message": message}}));
            let _ = writeln!(err, "error: {message}");
            1
        }
        Err(Failure::Bug(value, summary)) => {
            let _ = writeln!(out, "{}", serde_json::to_string(&value).expect("json values serialize"));
            let _ = writeln!(err, "{summary}");
            2
        }
    }
}

fn execute(command: Command) -> Result<(Value, String), Failure> {
    match command {
        Command::Cohomology { algebra, complex, degree } => {
            let alg = load_algebra(&algebra)?;
            let v = parse_complex(&alg, &load_value(&complex)?).map_err(|e| input("complex", e))?;
            let degrees: Vec<i64> = match degree {
                Some(d) => vec![d],
                None => (0..v.period() as i64).collect(),
            };
            let entries: Vec<Value> = degrees
                .iter()
                .map(|&d| {
                    let h = cohomology(&alg, &v, d).module;
                    json!({"degree": d, "dims": h.dims(), "module": representation_to_json(&alg, &h)})
                })
                .collect();
            let summary = format!("cohomology in {} degree(s)", entries.len());
            Ok((json!({"m": v.period(), "cohomology": entries}), summary))
        }
        Command::Class { algebra, complex, m } => {
            let alg = load_algebra(&algebra)?;
            let v = parse_complex(&alg, &load_value(&complex)?).map_err(|e| input("complex", e))?;
            if v.period() != m {
                return Err(input("complex", format!("complex has period {}, not {m}", v.period())));
            }
            let c = class_of(&alg, &v);
            let summary = format!("class {:?}", c.vector);
            Ok((serde_json::to_value(c).expect("serializes"), summary))
        }
        Command::K0 { algebra, m, count, max_dim, seed } => {
            let alg = load_algebra(&algebra)?;
            if m == 0 {
                return Err(input("argument", "period must be positive"));
            }
            let report = k0_report(&alg, m, &SamplerConfig { count, max_dim, seed }).map_err(|e| input("k0", e))?;
            let value = serde_json::to_value(&report).expect("serializes");
            let summary = format!(
                "K_0 = {} from {} objects and {} relations",
                report.group, report.n_objects, report.n_relations
            );
            match report.certificate {
                CertificateStatus::Ok(_) => Ok((value, summary)),
                CertificateStatus::Failed(_) => Err(Failure::Bug(value, format!("certificate failed: {summary}"))),
            }
        }
        Command::Gorsky { algebra, complex } => {
            let alg = load_algebra(&algebra)?;
            let v = parse_complex(&alg, &load_value(&complex)?).map_err(|e| input("complex", e))?;
            let w = gorsky_witness(&alg, &v).map_err(|e| input("complex", e))?;
            let steps: Vec<Value> = w
                .steps()
                .iter()
                .map(|s| {
                    json!({
                        "degree": s.degree,
                        "support": s.v().support_size(),
                        "remaining_support": s.w().support_size(),
                        "cycles_dims": s.cycles.left.components()[s.degree].dims(),
                        "quotient_dims": s.quotient.right.components()[s.degree].dims(),
                    })
                })
                .collect();
            let verdict = verify_witness(&alg, &w);
            let value = json!({
                "m": w.period(),
                "depth": w.depth(),
                "steps": steps,
                "leaf_support": w.leaf().support_size(),
                "verified": verdict.is_ok(),
                "failure": verdict.as_ref().err().map(ToString::to_string),
            });
            match verdict {
                Ok(()) => Ok((value, format!("witness of depth {} verified", w.depth()))),
                Err(e) => Err(Failure::Bug(value, format!("witness rejected: {e}"))),
            }
        }
        Command::Hom { algebra, m_module, n_module, degree, m } => {
            let alg = load_algebra(&algebra)?;
            let a = parse_representation(&alg, &load_value(&m_module)?).map_err(|e| input("module", e))?;
            let b = parse_representation(&alg, &load_value(&n_module)?).map_err(|e| input("module", e))?;
            let d = hom_dm_dim(&alg, &a, &b, degree, m).map_err(|e| input("hom", e))?;
            Ok((json!({"degree": degree, "m": m, "dim": d}), format!("dim Hom(M, N[{degree}]) = {d}")))
        }
        Command::TiltingSearch { algebra, m, limit } => {
            let alg = load_algebra(&algebra)?;
            let sets = orthogonal_sets(&alg, m, limit).map_err(|e| input("search", e))?;
            let sizes: std::collections::BTreeSet<usize> = sets.iter().map(|s| s.size).collect();
            let summary = format!("{} maximal orthogonal sets, sizes {sizes:?}", sets.len());
            Ok((serde_json::to_value(sets).expect("serializes"), summary))
        }
        Command::Check { suite, instances, seed } => {
            let report = run_suite(suite, instances, seed);
            let value = serde_json::to_value(&report).expect("serializes");
            let failed: usize = report.properties.iter().map(|p| p.failures).sum();
            let summary = format!("{} properties, {failed} failure(s)", report.properties.len());
            if report.passed {
                Ok((value, summary))
            } else {
                Err(Failure::Bug(value, summary))
            }
        }
    }
}
