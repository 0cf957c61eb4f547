//! Command-line front end: JSON/CSV I/O and deterministic orchestration.
//!
//! Exit codes: 0 success, 2 validation/audit failure, 3 budget exhaustion,
//! 4 I/O or schema error. Every error path prints a machine-readable JSON
//! object on stderr.

use crate::arith::{Rational, UniPoly};
use crate::construct::{self, ConstructError, ConstructionParams};
use crate::nagao::{self, NagaoEstimate, PrimeScanRecord, ScanConfig, ViolationClass};
use crate::rank::{self, RankError};
use crate::surface::QuadraticSurface;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(
    name = "quadrank",
    about = "Exact Mordell-Weil rank bounds for quadratic elliptic surfaces, \
             with empirical cross-checks from prime scans"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide exact rank bounds from the factorization of D(x)
    Analyze {
        /// Surface JSON ({"coeff_matrix": ...} or {"A": ..., "B": ..., "C": ...})
        surface: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Scan primes up to a cutoff and estimate the rank empirically
    Estimate {
        surface: PathBuf,
        #[arg(long)]
        max_prime: u64,
        /// Persist per-prime records to this CSV (resumable)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Resume an interrupted scan of the same surface
        #[arg(long)]
        resume: bool,
        /// Use the O(p^2) reference kernel instead of the O(p) one
        #[arg(long)]
        naive: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Audit the per-prime residuals and spot-check the fast kernel
    Verify {
        surface: PathBuf,
        #[arg(long)]
        max_prime: u64,
        /// Compare fast and naive kernels for all good primes up to here
        #[arg(long, default_value_t = 311)]
        naive_cutoff: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Construct a surface with a prescribed exact rank
    Construct {
        #[arg(long)]
        rank: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the fiber cubic at T = t
    Specialize {
        surface: PathBuf,
        /// Rational parameter value, e.g. 5 or -7/3
        #[arg(long)]
        t: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub payload: serde_json::Value,
}

impl CliError {
    fn new(code: i32, kind: &str, message: String, details: Option<serde_json::Value>) -> Self {
        let mut payload = json!({ "error": kind, "message": message });
        if let Some(d) = details {
            payload["details"] = d;
        }
        CliError { code, payload }
    }

    fn io(message: String) -> Self {
        CliError::new(4, "io", message, None)
    }

    fn schema(message: String) -> Self {
        CliError::new(4, "schema", message, None)
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .map_err(|e| CliError::io(format!("writing {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report serialization cannot fail")
}

/// Read a surface from either authoring format, normalized to the matrix.
pub fn load_surface(path: &Path) -> Result<QuadraticSurface, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("reading {}: {e}", path.display())))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| CliError::schema(format!("{}: invalid JSON: {e}", path.display())))?;
    if value.get("coeff_matrix").is_some() {
        return serde_json::from_value(value)
            .map_err(|e| CliError::schema(format!("{}: {e}", path.display())));
    }
    if value.get("A").is_some() || value.get("B").is_some() || value.get("C").is_some() {
        let poly = |key: &str| -> Result<UniPoly, CliError> {
            match value.get(key) {
                None => Ok(UniPoly::zero()),
                Some(v) => serde_json::from_value(v.clone())
                    .map_err(|e| CliError::schema(format!("{}: field {key}: {e}", path.display()))),
            }
        };
        let (a, b, c) = (poly("A")?, poly("B")?, poly("C")?);
        return QuadraticSurface::from_abc(&a, &b, &c)
            .map_err(|e| CliError::schema(format!("{}: {e}", path.display())));
    }
    Err(CliError::schema(format!(
        "{}: expected \"coeff_matrix\" or \"A\"/\"B\"/\"C\" polynomial lists",
        path.display()
    )))
}

fn validate_or_fail(surface: &QuadraticSurface) -> Result<(), CliError> {
    let report = surface.validate();
    if report.is_valid() {
        Ok(())
    } else {
        Err(CliError::new(
            2,
            "validation",
            "surface is not a quadratic elliptic surface".into(),
            Some(serde_json::to_value(&report).unwrap()),
        ))
    }
}

#[derive(Serialize)]
struct EstimateOutput {
    #[serde(flatten)]
    estimate: NagaoEstimate,
    /// The square multiplier applied to reach the integral model.
    scale_applied: Rational,
}

#[derive(Serialize)]
struct ViolationOutput {
    p: u64,
    r_p: i64,
    class: &'static str,
}

#[derive(Serialize)]
struct VerifyOutput {
    max_prime: u64,
    primes_scanned: usize,
    bad_primes: usize,
    residual_violations: Vec<ViolationOutput>,
    uncertified_violations: usize,
    naive_cutoff: u64,
    naive_checked: usize,
    naive_mismatches: Vec<u64>,
    scale_applied: Rational,
}

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Analyze {
            surface,
            out,
            format,
        } => {
            let s = load_surface(&surface)?;
            let report = rank::analyze(&s).map_err(|e| match e {
                RankError::InvalidSurface(failures) => CliError::new(
                    2,
                    "validation",
                    "surface is not a quadratic elliptic surface".into(),
                    Some(serde_json::to_value(&failures).unwrap()),
                ),
                other => CliError::new(4, "analysis", other.to_string(), None),
            })?;
            let text = match format {
                OutputFormat::Json => pretty(&report),
                OutputFormat::Csv => {
                    let join = |xs: &[Rational]| {
                        xs.iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(";")
                    };
                    format!(
                        "S1,S2,delta,splits_completely,rank_lower,rank_upper,exact\n\
                         {},{},{},{},{},{},{}",
                        join(&report.s1),
                        join(&report.s2),
                        report.delta,
                        report.splits_completely,
                        report.rank_lower,
                        report.rank_upper,
                        report.exact
                    )
                }
            };
            emit(&text, out.as_deref())
        }

        Command::Estimate {
            surface,
            max_prime,
            out,
            resume,
            naive,
            format,
        } => {
            let s = load_surface(&surface)?;
            validate_or_fail(&s)?;
            let integral = s.integral_model();
            let cfg = ScanConfig {
                max_prime,
                csv_path: out.clone(),
                resume,
                naive,
            };
            let records = nagao::scan(&integral, &cfg).map_err(nagao_error)?;
            let records_path = out.as_ref().map(|p| p.display().to_string());
            let estimate =
                nagao::estimate(&records, max_prime, records_path).map_err(nagao_error)?;
            let output = EstimateOutput {
                estimate,
                scale_applied: integral.scale().clone(),
            };
            let text = match format {
                OutputFormat::Json => pretty(&output),
                OutputFormat::Csv => format!(
                    "X,S_X,L_bar,rank_guess,m_diag,n_primes,low_confidence\n\
                     {},{},{},{},{},{},{}",
                    output.estimate.x,
                    output.estimate.s_x,
                    output.estimate.l_bar,
                    output.estimate.rank_guess,
                    output.estimate.m_diag,
                    output.estimate.n_primes,
                    output.estimate.low_confidence
                ),
            };
            emit(&text, None)
        }

        Command::Verify {
            surface,
            max_prime,
            naive_cutoff,
            out,
        } => {
            let s = load_surface(&surface)?;
            validate_or_fail(&s)?;
            let integral = s.integral_model();
            let records = nagao::scan(
                &integral,
                &ScanConfig {
                    max_prime,
                    csv_path: None,
                    resume: false,
                    naive: false,
                },
            )
            .map_err(nagao_error)?;

            let violations: Vec<ViolationOutput> = records
                .iter()
                .filter(|r| r.violation.is_some())
                .map(|r| ViolationOutput {
                    p: r.p,
                    r_p: r.r_p,
                    class: r.violation.unwrap().tag(),
                })
                .collect();
            let uncertified = records
                .iter()
                .filter(|r| r.violation == Some(ViolationClass::Uncertified))
                .count();

            let mut naive_checked = 0usize;
            let mut naive_mismatches = Vec::new();
            for rec in records.iter().filter(|r| !r.bad && r.p <= naive_cutoff) {
                let field = crate::charsum::PrimeField::new(rec.p).expect("scanned prime");
                let reference = nagao::prime_record_naive(&integral, &field);
                naive_checked += 1;
                if reference_differs(rec, &reference) {
                    naive_mismatches.push(rec.p);
                }
            }

            let output = VerifyOutput {
                max_prime,
                primes_scanned: records.len(),
                bad_primes: records.iter().filter(|r| r.bad).count(),
                residual_violations: violations,
                uncertified_violations: uncertified,
                naive_cutoff,
                naive_checked,
                naive_mismatches: naive_mismatches.clone(),
                scale_applied: integral.scale().clone(),
            };
            emit(&pretty(&output), out.as_deref())?;
            if uncertified > 0 || !naive_mismatches.is_empty() {
                return Err(CliError::new(
                    2,
                    "audit",
                    "residual audit failed".into(),
                    Some(json!({
                        "uncertified_violations": uncertified,
                        "naive_mismatches": naive_mismatches,
                    })),
                ));
            }
            Ok(())
        }

        Command::Construct {
            rank,
            seed,
            budget,
            out,
        } => {
            let mut params = ConstructionParams::new(rank);
            params.seed = seed;
            params.budget = budget;
            match construct::construct_surface(&params) {
                Ok(found) => emit(&pretty(&found), out.as_deref()),
                Err(ConstructError::RankOutOfRange(r)) => Err(CliError::schema(format!(
                    "target rank {r} is outside 0..=6"
                ))),
                Err(ConstructError::BudgetExhausted {
                    target,
                    budget,
                    tried,
                    seed,
                    best_rank,
                    best,
                }) => Err(CliError::new(
                    3,
                    "budget-exhausted",
                    format!("no rank-{target} surface within {budget} candidates"),
                    Some(json!({
                        "target": target,
                        "budget": budget,
                        "candidates_tried": tried,
                        "seed": seed,
                        "best_certified_rank": best_rank,
                        "best": best.map(|c| serde_json::to_value(&*c).unwrap()),
                    })),
                )),
            }
        }

        Command::Specialize { surface, t, out } => {
            let s = load_surface(&surface)?;
            let t: Rational = t
                .parse()
                .map_err(|e| CliError::schema(format!("bad --t value: {e}")))?;
            let (cubic, singular) = s.specialize(&t);
            let output = json!({
                "t": t,
                "cubic": cubic,
                "singular": singular,
            });
            emit(&pretty(&output), out.as_deref())
        }
    }
}

fn reference_differs(fast: &PrimeScanRecord, reference: &PrimeScanRecord) -> bool {
    fast.t_p != reference.t_p || fast.l_p != reference.l_p || fast.m_p != reference.m_p
}

fn nagao_error(e: nagao::NagaoError) -> CliError {
    use nagao::NagaoError::*;
    match &e {
        EmptyRange(_) | InsufficientScan { .. } => CliError::schema(e.to_string()),
        ChecksumMismatch { .. } | BadCheckpoint(_) => {
            CliError::new(4, "checkpoint", e.to_string(), None)
        }
        Io(_) => CliError::io(e.to_string()),
    }
}
