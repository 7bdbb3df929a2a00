//! Batch front end: classify, decide, construct, verify, spectra.
//!
//! Exit codes: 0 success (decide: Exists), 2 NotExists, 3 Indeterminate,
//! 1 any error. All outputs are deterministic byte-for-byte.

use clap::{Parser, Subcommand};
use fredholm_completion::construct::{construct, CompletionCertificate};
use fredholm_completion::decide::{decide, Target, Verdict};
use fredholm_completion::problem::ProblemFile;
use fredholm_completion::scalar::{parse_rational, CRat};
use fredholm_completion::spectra::{sandwich_report, write_csv, Corollary, Grid};
use fredholm_completion::verify::verify_completion;
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "fredholm", version, about = "Completion problems for upper-triangular operator matrices with prescribed diagonals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the invariant triples and class memberships of each diagonal
    /// block at a point.
    Classify {
        #[arg(long)]
        problem: PathBuf,
        /// Point as `re,im` with exact rational parts, e.g. `1/2,-3/4`.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Three-way completion-existence verdict for a target class.
    Decide {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        target: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Build an explicit completion certificate.
    Construct {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        target: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate against finite compressions.
    Verify {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        certificate: PathBuf,
        /// Comma-separated compression sizes.
        #[arg(long, default_value = "64,128,256")]
        sizes: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a sandwich corollary over a grid and emit CSV.
    Spectra {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        corollary: String,
        /// Grid as `re0:re1:im0:im1:step`.
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
struct CliError(String);

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

fn parse_lambda(s: &str) -> Result<CRat, CliError> {
    let bad = || CliError(format!("bad lambda {s:?}: expected re,im with exact rationals"));
    let (re, im) = match s.split_once(',') {
        Some((re, im)) => (re, im),
        None => (s, "0"),
    };
    Ok(CRat::new(
        parse_rational(re).ok_or_else(bad)?,
        parse_rational(im).ok_or_else(bad)?,
    ))
}

fn parse_target(flag: Option<&str>, problem: &ProblemFile) -> Result<Target, CliError> {
    let name = match flag {
        Some(s) => s.to_string(),
        None => match problem.target {
            Some(t) => return Ok(t),
            None => return Err(CliError("no --target given and none in the problem file".into())),
        },
    };
    serde_json::from_value(serde_json::Value::String(name.clone()))
        .map_err(|_| CliError(format!("unknown target {name:?}")))
}

fn point(problem: &ProblemFile, lambda: Option<String>) -> Result<CRat, CliError> {
    let flag = match lambda {
        Some(s) => Some(parse_lambda(&s)?),
        None => None,
    };
    Ok(problem.point(flag))
}

fn emit(out: Option<&PathBuf>, payload: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, payload)?,
        None => print!("{payload}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Classify { problem, lambda } => {
            let p = ProblemFile::load(&problem)?;
            let lam = point(&p, lambda)?;
            let data = p.data_at(&lam);
            let blocks: Vec<serde_json::Value> = data
                .iter()
                .map(|d| {
                    json!({
                        "alpha": d.alpha,
                        "beta_star": d.beta_star,
                        "range_closed": d.range_closed,
                        "classes": d.classify(),
                    })
                })
                .collect();
            let payload = serde_json::to_string_pretty(&json!({
                "lambda": lam,
                "blocks": blocks,
            }))?;
            println!("{payload}");
            Ok(0)
        }
        Command::Decide {
            problem,
            target,
            lambda,
        } => {
            let p = ProblemFile::load(&problem)?;
            let t = parse_target(target.as_deref(), &p)?;
            let lam = point(&p, lambda)?;
            let decision = decide(t, &p.data_at(&lam))?;
            println!("{}", serde_json::to_string_pretty(&decision)?);
            Ok(match decision.verdict {
                Verdict::Exists(_) => 0,
                Verdict::NotExists => 2,
                Verdict::Indeterminate => 3,
            })
        }
        Command::Construct {
            problem,
            target,
            lambda,
            out,
        } => {
            let p = ProblemFile::load(&problem)?;
            let t = parse_target(target.as_deref(), &p)?;
            let lam = point(&p, lambda)?;
            let ops = p.operators()?;
            let decision = decide(t, &p.data_at(&lam))?;
            match decision.verdict {
                Verdict::Exists(_) => {}
                Verdict::NotExists => {
                    eprintln!("no completion exists (necessary condition fails)");
                    return Ok(2);
                }
                Verdict::Indeterminate => {
                    eprintln!("existence undetermined (gap between the conditions)");
                    return Ok(3);
                }
            }
            let cert = construct(t, ops, &lam)?;
            let mut payload = serde_json::to_string_pretty(&cert)?;
            payload.push('\n');
            emit(out.as_ref(), &payload)?;
            Ok(0)
        }
        Command::Verify {
            problem,
            certificate,
            sizes,
            tol,
            out,
        } => {
            let p = ProblemFile::load(&problem)?;
            let ops = p.operators()?;
            let text = std::fs::read_to_string(&certificate)?;
            let cert: CompletionCertificate = serde_json::from_str(&text)?;
            let lam = cert.original_lambda();
            let sizes: Vec<usize> = sizes
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError(format!("bad --sizes {sizes:?}")))?;
            let report = verify_completion::<f64>(&cert, ops, &lam, &sizes, tol)?;
            let mut payload = serde_json::to_string_pretty(&report)?;
            payload.push('\n');
            emit(out.as_ref(), &payload)?;
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Spectra {
            problem,
            corollary,
            grid,
            out,
        } => {
            let p = ProblemFile::load(&problem)?;
            let ops = p.operators()?;
            let c = Corollary::parse(&corollary)
                .ok_or_else(|| CliError(format!("unknown corollary {corollary:?}")))?;
            let spec = grid
                .or_else(|| p.grid.clone())
                .ok_or_else(|| CliError("no --grid given and none in the problem file".into()))?;
            let g = Grid::parse(&spec)?;
            let reports = sandwich_report(c, ops, &g)?;
            let mut buf = Vec::new();
            write_csv(c, &reports, &mut buf)?;
            let payload = String::from_utf8(buf).expect("csv is utf-8");
            emit(out.as_ref(), &payload)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
