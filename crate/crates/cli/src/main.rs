use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hardy_cli::{execute, Overrides, RunConfig};

/// Numerical experiments on Hardy–Poincaré constants.
///
/// Reads a JSON run config and writes result.json (plus result.csv, mesh.txt
/// and plot.svg where they apply) to the output directory. Exit status is 0
/// on success, 2 for invalid input and 3 for numerical failure.
#[derive(Parser, Debug)]
#[command(name = "hardylab", version)]
struct Args {
    /// JSON run config.
    #[arg(long)]
    config: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    /// Finest mesh level.
    #[arg(long)]
    level: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut config = match RunConfig::load(&args.config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    config.apply(&Overrides { lambda: args.lambda, level: args.level, seed: args.seed, out: args.out });
    ExitCode::from(execute(&config) as u8)
}
