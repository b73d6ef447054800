//! `smt-lab`: runs one analysis on a scenario file and writes a JSON report.
//!
//! Exit codes: 0 PASS, 1 FAIL (report still written), 2 input or schema
//! error, 3 computational budget exhausted.

mod commands;
mod report;
mod scenario;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::report::Verdict;

#[derive(Parser, Debug)]
#[command(name = "smt-lab", version, about = "Exact and numerical checks for moving hypersurfaces and holomorphic curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Distributive constant and optional l-subgeneral position check.
    AnalyzePosition(Flags),
    /// Constructive replacement with a verified dimension certificate.
    Replace(Flags),
    /// Thresholds, Delta, the m-sequence and the weighted product inequality.
    Lemma31(Flags),
    /// Hilbert weight S(u, c) by matroid greedy, with a brute-force cross-check.
    HilbertWeight(Flags),
    /// Combined Hilbert-weight / Chow-weight lower bound.
    EfCheck(Flags),
    /// First Main Theorem residuals on an r-grid.
    FmtCheck(Flags),
    /// Second Main Theorem inequality on an r-grid.
    SmtCheck(Flags),
    /// Integer truncation level for given q and epsilon.
    TruncationBound(Flags),
}

#[derive(Args, Debug, Clone, Default)]
pub struct Flags {
    /// Scenario file, or a previous report to re-run.
    #[arg(long)]
    pub input: PathBuf,
    /// Report destination; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// CSV destination for r-grid tables.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Rational such as 1/2.
    #[arg(long)]
    pub epsilon: Option<String>,
    #[arg(long)]
    pub u: Option<u32>,
    #[arg(long)]
    pub r_min: Option<f64>,
    #[arg(long)]
    pub r_max: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub retry_budget: Option<usize>,
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }
}

impl From<smtlab::Error> for CliError {
    fn from(e: smtlab::Error) -> Self {
        CliError { code: if e.is_budget() { 3 } else { 2 }, message: e.to_string() }
    }
}

fn run(name: &str, flags: &Flags) -> Result<Verdict, CliError> {
    let start = Instant::now();
    let raw = std::fs::read(&flags.input)
        .map_err(|e| CliError::input(format!("{}: {e}", flags.input.display())))?;
    let text = String::from_utf8(raw.clone())
        .map_err(|_| CliError::input(format!("{}: not valid UTF-8", flags.input.display())))?;
    let mut scenario = scenario::parse_input(&text, &flags.input.display().to_string())?;
    commands::apply_flags(&mut scenario, flags);
    let outcome = commands::dispatch(name, &scenario)?;
    let report = report::build(name, &raw, &scenario, &outcome, start.elapsed().as_secs_f64());
    report::write(&report, flags.out.as_deref())?;
    if let (Some(path), Some(csv)) = (&flags.csv, &outcome.csv) {
        std::fs::write(path, csv).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    }
    Ok(outcome.verdict)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, flags) = match &cli.command {
        Command::AnalyzePosition(f) => ("analyze-position", f),
        Command::Replace(f) => ("replace", f),
        Command::Lemma31(f) => ("lemma31", f),
        Command::HilbertWeight(f) => ("hilbert-weight", f),
        Command::EfCheck(f) => ("ef-check", f),
        Command::FmtCheck(f) => ("fmt-check", f),
        Command::SmtCheck(f) => ("smt-check", f),
        Command::TruncationBound(f) => ("truncation-bound", f),
    };
    match run(name, flags) {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
