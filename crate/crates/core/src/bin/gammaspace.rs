use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use gammaspace::cli::{export_csv, run, write_atomic, Command, RunConfig};
use gammaspace::error::{GammaError, Result};

/// Numerical toolkit for Lorentz Gamma spaces.
#[derive(Parser)]
#[command(version)]
struct Args {
    command: Command,
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Report destination; printed to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// CSV export of the sampled series.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(args: &Args) -> Result<()> {
    if let Ok(n) = std::env::var("GAMMASPACE_THREADS") {
        let n: usize = n
            .parse()
            .map_err(|_| GammaError::Config { path: "GAMMASPACE_THREADS".into(), message: format!("not a count: {n}") })?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| GammaError::Io(e.to_string()))?;
    }
    let mut cfg = RunConfig::load(&args.config)?;
    cfg.command = Some(args.command);
    if args.p.is_some() {
        cfg.p = args.p;
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    let report = run(&cfg)?;
    let json = report.to_json();
    match &args.out {
        Some(path) => write_atomic(path, json.as_bytes())?,
        None => println!("{json}"),
    }
    if let Some(path) = &args.csv {
        export_csv(&report, path)?;
    }
    Ok(())
}
