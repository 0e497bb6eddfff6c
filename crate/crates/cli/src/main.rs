//! `chordwig`: grid evaluations, diameter loci, comparisons and correlations.
//!
//! Exit codes: 0 ok, 2 invalid configuration, 3 evaluation failure,
//! 4 comparison tolerance exceeded.

mod commands;
mod config;
mod table;

use clap::{Parser, Subcommand};
use config::{parse_enum, parse_window, read_json_arg, RunConfig};
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Eval(String),
    Tolerance(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Eval(_) => 3,
            CliError::Tolerance(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Eval(m) => write!(f, "evaluation error: {m}"),
            CliError::Tolerance(m) => write!(f, "tolerance exceeded: {m}"),
        }
    }
}

#[derive(Parser)]
#[command(name = "chordwig", version, about = "Semiclassical chord and Wigner functions of quantized convex curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the chord or Wigner function on a grid.
    Eval(RunArgs),
    /// Sample the diameter locus (the chord-function caustic).
    Caustic(RunArgs),
    /// Compare two evaluators and check the documented tolerance.
    Compare(RunArgs),
    /// Phase-space correlation along a ray of chords.
    Correlate(RunArgs),
}

#[derive(clap::Args, Debug)]
struct RunArgs {
    /// Run configuration file (JSON); flags below override its fields.
    #[arg(long)]
    config: Option<String>,
    /// Curve {family, params, n, hbar}: file path or inline JSON.
    #[arg(long)]
    curve: Option<String>,
    /// chord or wigner.
    #[arg(long)]
    target: Option<String>,
    /// Grid: file path or inline JSON.
    #[arg(long)]
    grid: Option<String>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<String>,
    /// csv or json.
    #[arg(long)]
    format: Option<String>,
    /// Comparison pair, e.g. uniform-vs-exact.
    #[arg(long)]
    pair: Option<String>,
    /// Comparison window "lo,hi" in the ray parameter.
    #[arg(long)]
    window: Option<String>,
    /// Evaluator for eval: evaluate, uniform, asymptotic, transitional, numeric, exact, small.
    #[arg(long)]
    evaluator: Option<String>,
    /// Correlation method: exact, semiclassical, near-caustic.
    #[arg(long)]
    method: Option<String>,
}

fn resolve(args: &RunArgs) -> Result<RunConfig, CliError> {
    let mut c: RunConfig = match &args.config {
        Some(path) => read_json_arg(path, "config")?,
        None => RunConfig::default(),
    };
    if let Some(s) = &args.curve {
        c.curve = Some(read_json_arg(s, "curve")?);
    }
    if let Some(s) = &args.grid {
        c.grid = Some(read_json_arg(s, "grid")?);
    }
    if let Some(s) = &args.target {
        c.target = Some(parse_enum(s, "target")?);
    }
    if let Some(s) = &args.format {
        c.format = Some(parse_enum(s, "format")?);
    }
    if let Some(s) = &args.window {
        c.window = Some(parse_window(s)?);
    }
    if let Some(s) = &args.out {
        c.output = Some(s.clone());
    }
    if let Some(s) = &args.pair {
        c.pair = Some(s.clone());
    }
    if let Some(s) = &args.evaluator {
        c.evaluator = Some(s.clone());
    }
    if let Some(s) = &args.method {
        c.method = Some(s.clone());
    }
    Ok(c)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Eval(a) => commands::cmd_eval(&resolve(&a)?),
        Command::Caustic(a) => commands::cmd_caustic(&resolve(&a)?),
        Command::Compare(a) => commands::cmd_compare(&resolve(&a)?),
        Command::Correlate(a) => commands::cmd_correlate(&resolve(&a)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("chordwig: {e}");
            ExitCode::from(e.code())
        }
    }
}
