//! Command-line front door: parse matrices and simplices, run
//! classifications, factorizations, geometry reports, and search campaigns;
//! emit stable JSON with the artifact version stamped in.
//!
//! Exit codes: 0 on success, 1 on errors, 2 when `--assert FIELD` names a
//! result field that is not `true`.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use simplicia::classes::ClassReport;
use simplicia::cp::{cp_factor_nonobtuse_facets, nonneg_cholesky, CpError, Fallback};
use simplicia::dual::{
    classify_tetrahedron, classify_triangle, dual_hull_cell, geometry_report,
    in_suborthocentric_set, is_suborthocentric_simplex, nu,
};
use simplicia::mat::{RatMat, SymMat};
use simplicia::scalar::{Fp, Rat, Scalar, DEFAULT_EPSILON};
use simplicia::simplex::{
    dihedral_report, normal_data, radii, Simplex, SimplexLiteral, VertexGramian,
};
use simplicia_lab::{
    extremal_search, test_conjecture_kfacets, test_conjecture_suborthocentric,
    verify_theorem_suite, JsonlLog,
};

#[derive(Parser)]
#[command(name = "simplicia", version, about = "Simplex geometry and inverse M-matrix classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Exit 2 unless this boolean field of the result JSON is true
    /// (dot-separated path, e.g. `report.in_mdd`).
    #[arg(long, global = true, value_name = "FIELD")]
    assert: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Args)]
struct InputArg {
    /// Path to a JSON input file, or `-` for standard input.
    #[arg(value_name = "FILE")]
    path: Option<PathBuf>,
    /// Inline JSON literal instead of a file.
    #[arg(long, value_name = "JSON", conflicts_with = "path")]
    inline: Option<String>,
}

#[derive(Args)]
struct NumericArgs {
    /// Arithmetic backend; predicates default to exact rationals.
    #[arg(long, value_enum, default_value = "exact")]
    mode: Mode,
    /// Relative tolerance of the float backend.
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Class-chain membership report for a symmetric matrix.
    ClassifyMatrix {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Geometry-level classification of a simplex (all base vertices).
    ClassifySimplex {
        #[command(flatten)]
        input: InputArg,
    },
    /// All vertex Gramians of a simplex, each with its class report.
    Gramians {
        #[command(flatten)]
        input: InputArg,
    },
    /// Dihedral-angle report (obtuse/right facet pairs) of a matrix or simplex.
    Dihedral {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Inradius and circumradius of a matrix or simplex.
    Radii {
        #[command(flatten)]
        input: InputArg,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Nonnegative upper-triangular factorization of a vertex Gramian.
    CpFactor {
        #[command(flatten)]
        input: InputArg,
        /// Ordering search fallback when the constructive route fails.
        #[arg(long, value_enum, default_value = "bruteforce")]
        fallback: FallbackArg,
    },
    /// Sub-orthocentric cells of a simplex, with an optional point query.
    Subortho {
        #[command(flatten)]
        input: InputArg,
        /// Point to test for sub-orthocentric membership (JSON array).
        #[arg(long, value_name = "JSON")]
        point: Option<String>,
    },
    /// Dual-hull cell assignment of a point.
    DualHull {
        #[command(flatten)]
        input: InputArg,
        /// Query point (JSON array of numeric strings).
        #[arg(long, value_name = "JSON")]
        point: String,
    },
    /// Extremal search or conjecture campaign.
    Search {
        #[arg(long)]
        n: usize,
        /// Move/evaluation budget for the extremal search.
        #[arg(long, default_value_t = 500)]
        budget: usize,
        #[arg(long, env = "SIMPLICIA_SEED", default_value_t = 0)]
        seed: u64,
        /// Run a conjecture campaign instead of the extremal search.
        #[arg(long, value_enum)]
        conjecture: Option<ConjArg>,
        /// Facet dimension for the k-facets campaign.
        #[arg(long)]
        k: Option<usize>,
        /// Trials for conjecture campaigns.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Append trial records to this JSONL file.
        #[arg(long, value_name = "PATH")]
        log: Option<PathBuf>,
    },
    /// Theorem-verification suite.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, env = "SIMPLICIA_SEED", default_value_t = 0)]
        seed: u64,
        /// Append failure records to this JSONL file.
        #[arg(long, value_name = "PATH")]
        log: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FallbackArg {
    Bruteforce,
    Off,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConjArg {
    Kfacets,
    Subortho,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(value) => {
            println!("{}", serde_json::to_string_pretty(&value).expect("serialize"));
            if let Some(field) = &cli.assert {
                let pointer = format!("/{}", field.replace('.', "/"));
                if value.pointer(&pointer) != Some(&Value::Bool(true)) {
                    return ExitCode::from(2);
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn read_input(input: &InputArg) -> Result<String> {
    if let Some(inline) = &input.inline {
        return Ok(inline.clone());
    }
    match &input.path {
        Some(p) if p.as_os_str() == "-" => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
        Some(p) => std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display())),
        None => bail!("no input: pass a file path, `-`, or --inline JSON"),
    }
}

fn parse_matrix_rat(text: &str) -> Result<RatMat> {
    let rows: Vec<Vec<String>> = serde_json::from_str(text).context("matrix literal")?;
    RatMat::from_literals(&rows).map_err(|e| anyhow!("{e}"))
}

fn parse_matrix_float(text: &str, eps: f64) -> Result<SymMat<Fp>> {
    let rows: Vec<Vec<String>> = serde_json::from_str(text).context("matrix literal")?;
    let parsed: Result<Vec<Vec<Fp>>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| {
                    Fp::parse_literal(s)
                        .map(|v| Fp::with_eps(v.value(), eps))
                        .map_err(|e| anyhow!("{e}"))
                })
                .collect()
        })
        .collect();
    SymMat::from_rows(parsed?).map_err(|e| anyhow!("{e}"))
}

fn parse_simplex(text: &str) -> Result<Simplex> {
    let lit: SimplexLiteral = serde_json::from_str(text).context("simplex literal")?;
    Simplex::from_literal(&lit).map_err(|e| anyhow!("{e}"))
}

/// Either a matrix literal (array of rows) or a simplex literal (object).
fn parse_matrix_or_simplex(text: &str) -> Result<RatMat> {
    let v: Value = serde_json::from_str(text).context("json input")?;
    if v.is_array() {
        parse_matrix_rat(text)
    } else {
        let s = parse_simplex(text)?;
        Ok(s.gramian(0).map_err(|e| anyhow!("{e}"))?.matrix().clone())
    }
}

fn parse_point(text: &str) -> Result<Vec<Rat>> {
    let coords: Vec<String> = serde_json::from_str(text).context("point literal")?;
    coords
        .iter()
        .map(|s| Rat::parse_literal(s).map_err(|e| anyhow!("{e}")))
        .collect()
}

fn versioned(mut value: Value) -> Value {
    value["version"] = Value::String(simplicia::ARTIFACT_VERSION.to_string());
    value
}

fn run(cli: &Cli) -> Result<Value> {
    match &cli.command {
        Command::ClassifyMatrix { input, numeric } => {
            let text = read_input(input)?;
            let report = match numeric.mode {
                Mode::Exact => ClassReport::analyze(&parse_matrix_rat(&text)?).dto(),
                Mode::Float => {
                    ClassReport::analyze(&parse_matrix_float(&text, numeric.epsilon)?).dto()
                }
            };
            Ok(versioned(json!({ "report": report })))
        }
        Command::ClassifySimplex { input } => {
            let s = parse_simplex(&read_input(input)?)?;
            let n = s.n();
            let g0 = s.gramian(0).map_err(|e| anyhow!("{e}"))?;
            let rep = dihedral_report(g0.matrix())?;
            let base_reports: Vec<_> = s
                .all_gramians()
                .iter()
                .map(|g| ClassReport::analyze(g.matrix()).dto())
                .collect();
            let mut out = json!({
                "n": n,
                "nonobtuse": rep.is_nonobtuse(),
                "chain_level": simplicia::classes::chain_level(g0.matrix())?,
                "suborthocentric": is_suborthocentric_simplex(&s).map_err(|e| anyhow!("{e}"))?,
                "base_reports": base_reports,
            });
            if n == 2 {
                out["triangle"] =
                    serde_json::to_value(classify_triangle(&s).map_err(|e| anyhow!("{e}"))?)?;
            }
            if n == 3 {
                out["tetrahedron"] =
                    serde_json::to_value(classify_tetrahedron(&s).map_err(|e| anyhow!("{e}"))?)?;
            }
            Ok(versioned(out))
        }
        Command::Gramians { input } => {
            let s = parse_simplex(&read_input(input)?)?;
            let gramians: Vec<Value> = s
                .all_gramians()
                .iter()
                .map(|g| {
                    json!({
                        "base": g.base(),
                        "order": g.order(),
                        "matrix": g.matrix().to_literals(),
                        "report": ClassReport::analyze(g.matrix()).dto(),
                    })
                })
                .collect();
            Ok(versioned(json!({ "n": s.n(), "gramians": gramians })))
        }
        Command::Dihedral { input, numeric } => {
            let text = read_input(input)?;
            match numeric.mode {
                Mode::Exact => {
                    let m = parse_matrix_or_simplex(&text)?;
                    let nd = normal_data(&m)?;
                    let rep = dihedral_report(&m)?;
                    Ok(versioned(json!({
                        "n": m.n(),
                        "nonobtuse": rep.is_nonobtuse(),
                        "obtuse_pairs": rep.obtuse,
                        "right_pairs": rep.right,
                        "per_facet_obtuse": rep.per_facet_counts(m.n() + 1),
                        "normal_matrix": nd.mat.to_literals(),
                        "heights": nd.heights.iter().map(|h| format!("{h}")).collect::<Vec<_>>(),
                    })))
                }
                Mode::Float => {
                    let m = parse_matrix_float(&text, numeric.epsilon)?;
                    let nd = normal_data(&m)?;
                    let rep = dihedral_report(&m)?;
                    Ok(versioned(json!({
                        "n": m.n(),
                        "nonobtuse": rep.is_nonobtuse(),
                        "obtuse_pairs": rep.obtuse,
                        "right_pairs": rep.right,
                        "per_facet_obtuse": rep.per_facet_counts(m.n() + 1),
                        "normal_matrix": nd.mat.to_literals(),
                        "heights": nd.heights.iter().map(|h| format!("{h}")).collect::<Vec<_>>(),
                    })))
                }
            }
        }
        Command::Radii { input, numeric } => {
            let text = read_input(input)?;
            let r = match numeric.mode {
                Mode::Exact => radii(&parse_matrix_or_simplex(&text)?)?,
                Mode::Float => radii(&parse_matrix_float(&text, numeric.epsilon)?)?,
            };
            Ok(versioned(json!({
                "inradius": format!("{}", r.inradius),
                "circumradius": format!("{}", r.circumradius),
            })))
        }
        Command::CpFactor { input, fallback } => {
            let m = parse_matrix_rat(&read_input(input)?)?;
            let g = VertexGramian::from_matrix(m).map_err(|e| anyhow!("{e}"))?;
            let fb = match fallback {
                FallbackArg::Bruteforce => Fallback::BruteForce,
                FallbackArg::Off => Fallback::Off,
            };
            let (factor, method) = match nonneg_cholesky(&g) {
                Ok(f) => (f, "natural"),
                Err(CpError::NotNonobtuse) => {
                    (cp_factor_nonobtuse_facets(&g, fb).map_err(|e| anyhow!("{e}"))?, "facet-ordering")
                }
                Err(e) => bail!("{e}"),
            };
            Ok(versioned(json!({
                "method": method,
                "cp_factor": factor.dto(),
                "nonnegative": true,
            })))
        }
        Command::Subortho { input, point } => {
            let s = parse_simplex(&read_input(input)?)?;
            let rep = geometry_report(&s).map_err(|e| anyhow!("{e}"))?;
            let mut out = json!({
                "n": s.n(),
                "geometry": rep,
                "suborthocentric_simplex":
                    is_suborthocentric_simplex(&s).map_err(|e| anyhow!("{e}"))?,
            });
            if let Some(p) = point {
                let x = parse_point(p)?;
                let member = in_suborthocentric_set(&s, &x).map_err(|e| anyhow!("{e}"))?;
                out["point_in_suborthocentric_set"] = Value::Bool(member);
            }
            Ok(versioned(out))
        }
        Command::DualHull { input, point } => {
            let s = parse_simplex(&read_input(input)?)?;
            let x = parse_point(point)?;
            let cell = dual_hull_cell(&s, &x).map_err(|e| anyhow!("{e}"))?;
            Ok(versioned(json!({
                "n": s.n(),
                "cell": cell,
                "nu": nu(&s, &x),
            })))
        }
        Command::Search {
            n,
            budget,
            seed,
            conjecture,
            k,
            trials,
            log,
        } => {
            let mut sink = match log {
                Some(p) => Some(JsonlLog::append_to(p)?),
                None => None,
            };
            match conjecture {
                None => {
                    let r = extremal_search(*n, *budget, *seed, sink.as_mut())
                        .map_err(|e| anyhow!("{e}"))?;
                    Ok(versioned(json!({
                        "search": r,
                        "within_bound": true,
                    })))
                }
                Some(ConjArg::Kfacets) => {
                    let k = k.ok_or_else(|| anyhow!("--k is required for the k-facets campaign"))?;
                    let r = test_conjecture_kfacets(*n, k, *trials, *seed, sink.as_mut())
                        .map_err(|e| anyhow!("{e}"))?;
                    let zero = r.violations == 0;
                    Ok(versioned(json!({
                        "kfacets": r,
                        "zero_violations": zero,
                    })))
                }
                Some(ConjArg::Subortho) => {
                    let r = test_conjecture_suborthocentric(*n, *trials, *seed, sink.as_mut())
                        .map_err(|e| anyhow!("{e}"))?;
                    let zero = r.violations == 0;
                    Ok(versioned(json!({
                        "suborthocentric": r,
                        "zero_violations": zero,
                    })))
                }
            }
        }
        Command::Verify {
            n,
            trials,
            seed,
            log,
        } => {
            let mut sink = match log {
                Some(p) => Some(JsonlLog::append_to(p)?),
                None => None,
            };
            let report = verify_theorem_suite(*n, *trials, *seed, sink.as_mut())
                .map_err(|e| anyhow!("{e}"))?;
            let all_pass = report.all_pass();
            Ok(versioned(json!({
                "suite": report,
                "all_pass": all_pass,
            })))
        }
    }
}
