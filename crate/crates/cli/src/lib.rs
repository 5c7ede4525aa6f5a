//! Command line front end: every pipeline as a subcommand with JSON output.
//!
//! Exit codes: 0 success, 1 selftest failure, 2 validation error, 3 a
//! computational bound was hit.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use cyclotoric::{json, parse_rational, DiagonalCubic, Error, WeierstrassCurve};
use serde_json::{json, Value};

pub mod selftest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_SELFTEST_FAILED: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_BOUND: i32 = 3;

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Parser, Debug)]
#[command(name = "cyclotoric", version, about = "Exact computations for cyclic quotient singularities")]
pub struct Cli {
    /// Write the JSON document here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Resolve 1/p(a₁,…,aₙ) over the quotient lattice and over ℤⁿ.
    Resolve {
        #[arg(long)]
        p: u64,
        /// Comma separated weights, e.g. 1,2
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
    },
    /// Class group presentation of a fan's chart.
    Classgroup {
        /// Fan JSON, or a resolve report (see --part).
        #[arg(long)]
        fan: PathBuf,
        #[arg(long, default_value = "quotient_fan")]
        part: String,
        /// Also certify independence of these ray classes.
        #[arg(long)]
        exceptional: Option<String>,
    },
    /// Dual graph of the given exceptional rays.
    Dualgraph {
        #[arg(long)]
        fan: PathBuf,
        #[arg(long, default_value = "quotient_fan")]
        part: String,
        #[arg(long)]
        exceptional: String,
    },
    /// Tate cohomology Ĥ⁰, Ĥ¹ of a module JSON.
    Tate {
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Rank of the fixed subgroup of an order-p matrix acting on (ℤ/p)ⁿ.
    FixedRank {
        /// Rows as JSON, inline or in a file.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        p: u64,
    },
    /// Classify the index-p subgroups of (ℤ/p)ᵇ × ℤ/p.
    Audit {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        b: usize,
    },
    /// Fixed points of (P, Q) ↦ (Q, −P−Q) on E × E over F_q.
    Oracle {
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        a4: i64,
        #[arg(long, allow_hyphen_values = true)]
        a6: i64,
    },
    /// Brauer quotient and Jacobian of ax³ + by³ + cz³ = 0.
    BrauerCubic {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// Run the embedded acceptance suites.
    Selftest {
        /// Comma separated suite names.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        golden_dir: Option<PathBuf>,
    },
}

/// What a run produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    /// Text for standard output; empty when the document went to `--out`.
    pub stdout: String,
    pub document: Option<Value>,
}

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Bound(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_bound_error() {
            CliError::Bound(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

pub fn default_golden_dir() -> PathBuf {
    std::env::var_os("CYCLOTORIC_GOLDEN_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("../../golden"))
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| invalid(format!("{what}: cannot parse {x:?}"))))
        .collect()
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn load_fan(path: &Path, part: &str) -> Result<cyclotoric::Fan, CliError> {
    let v = read_json(path)?;
    let fan_value = if v.get("rays").is_some() {
        &v
    } else {
        v.get(part)
            .ok_or_else(|| invalid(format!("{}: no fan and no {part:?} entry", path.display())))?
    };
    Ok(json::parse_fan(fan_value)?)
}

fn execute(command: &Command) -> Result<(i32, Value), CliError> {
    let doc = match command {
        Command::Resolve { p, weights } => {
            let w: Vec<i64> = parse_list(weights, "weights")?;
            if w.is_empty() {
                return Err(invalid("weights must be nonempty"));
            }
            json::resolution_report(&cyclotoric::resolution_pipeline(*p, &w)?)
        }
        Command::Classgroup { fan, part, exceptional } => {
            let fan = load_fan(fan, part)?;
            let mut doc = json::class_group(&cyclotoric::class_group(&fan)?);
            if let Some(list) = exceptional {
                let idx: Vec<usize> = parse_list(list, "exceptional")?;
                let (ok, cert) = cyclotoric::exceptional_independence(&fan, &idx)?;
                doc["independence"] = json::independence(ok, &cert);
            }
            doc
        }
        Command::Dualgraph { fan, part, exceptional } => {
            let fan = load_fan(fan, part)?;
            let idx: Vec<usize> = parse_list(exceptional, "exceptional")?;
            json::dual_graph(&cyclotoric::dual_graph(&fan, &idx)?)
        }
        Command::Tate { module, p } => {
            let mut v = read_json(module)?;
            match (v.get("p").and_then(Value::as_u64), p) {
                (Some(a), Some(b)) if a != *b => {
                    return Err(invalid(format!("module has p = {a} but --p {b} was given")))
                }
                (None, Some(b)) => {
                    v["p"] = json!(b);
                }
                _ => {}
            }
            json::tate(&json::parse_module(&v)?)
        }
        Command::FixedRank { matrix, p } => {
            let v = if matrix.trim_start().starts_with('[') {
                serde_json::from_str(matrix).map_err(|e| invalid(format!("matrix: {e}")))?
            } else {
                read_json(Path::new(matrix))?
            };
            let m = json::parse_matrix(&v)?;
            let (b, order) = cyclotoric::fixed_subgroup_rank(&m, *p)?;
            json!({
                "p": p,
                "dim": m.rows(),
                "b": b,
                "order": json::bigint(&order),
            })
        }
        Command::Audit { p, b } => json::audit(&cyclotoric::torsion_audit(*p, *b)?),
        Command::Oracle { q, a4, a6 } => {
            let curve = WeierstrassCurve::new(*q, *a4, *a6)?;
            json::oracle(&curve, &cyclotoric::compare_with_prediction(&curve)?)
        }
        Command::BrauerCubic { a, b, c } => {
            let x = DiagonalCubic::new(parse_rational(a)?, parse_rational(b)?, parse_rational(c)?)?;
            json::brauer(&x)?
        }
        Command::Selftest { only, seed, golden_dir } => {
            let names: Option<Vec<String>> = only.as_deref().map(|s| parse_list(s, "only")).transpose()?;
            let dir = golden_dir.clone().unwrap_or_else(default_golden_dir);
            let report = selftest::run(names.as_deref(), *seed, &dir).map_err(invalid)?;
            let code = if report.failed() == 0 {
                EXIT_OK
            } else {
                EXIT_SELFTEST_FAILED
            };
            return Ok((code, report.to_json()));
        }
    };
    Ok((EXIT_OK, doc))
}

/// Writes through a temporary file in the target directory, so a failed run
/// never leaves a partial file behind.
fn write_atomically(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn error_outcome(code: i32, message: String) -> Outcome {
    let kind = if code == EXIT_BOUND { "bound" } else { "validation" };
    let doc = json!({ "error": message, "kind": kind });
    Outcome {
        code,
        stdout: json::to_pretty(&doc),
        document: Some(doc),
    }
}

/// Parses `args` (program name first) and runs the request.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: EXIT_OK,
                    stdout: e.render().to_string(),
                    document: None,
                };
            }
            let msg = e.render().to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            return error_outcome(EXIT_VALIDATION, first.to_string());
        }
    };
    let (code, doc) = match execute(&cli.command) {
        Ok(r) => r,
        Err(CliError::Validation(m)) => return error_outcome(EXIT_VALIDATION, m),
        Err(CliError::Bound(m)) => return error_outcome(EXIT_BOUND, m),
    };
    let text = json::to_pretty(&doc);
    match &cli.out {
        Some(path) => {
            if let Err(e) = write_atomically(path, &text) {
                return error_outcome(EXIT_VALIDATION, format!("{}: {e}", path.display()));
            }
            Outcome {
                code,
                stdout: String::new(),
                document: Some(doc),
            }
        }
        None => Outcome {
            code,
            stdout: text,
            document: Some(doc),
        },
    }
}
