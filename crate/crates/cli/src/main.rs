use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use terwilliger::scheme::max_points_from_env;
use terwilliger::verify::{run_verify_with, Status};
use terwilliger::{run_report, Error};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

/// Invariants of Terwilliger algebras of factorial association schemes.
#[derive(Parser)]
#[command(name = "terwilliger", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the closed-form invariant report as JSON.
    Report {
        /// Factor sizes, e.g. `2,3`.
        #[arg(long, value_delimiter = ',', required = true)]
        u: Vec<u32>,
        /// 0 for the rationals, otherwise a prime.
        #[arg(long)]
        p: u64,
        /// Coordinates of the base point, e.g. `0,0`.
        #[arg(long, value_delimiter = ',')]
        base_point: Option<Vec<u32>>,
        /// Write the JSON here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Check every closed form against explicit matrices and counts.
    Verify {
        #[arg(long, value_delimiter = ',', required = true)]
        u: Vec<u32>,
        #[arg(long)]
        p: u64,
        /// Refuse schemes with more points than this [default: $TERWILLIGER_MAX_POINTS or 4096].
        #[arg(long)]
        max_points: Option<u64>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SizeCap { .. } => EXIT_CAP,
        Error::InvalidParams(_) | Error::NotPrime(_) | Error::InvalidPoint(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

fn report(u: &[u32], p: u64, base_point: Option<&[u32]>, json: Option<PathBuf>) -> Result<u8, Error> {
    let text = run_report(u, p, base_point)?.to_json();
    match json {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return Ok(EXIT_FAIL);
            }
            eprintln!("wrote {}", path.display());
        }
        None => println!("{text}"),
    }
    Ok(0)
}

fn verify(u: &[u32], p: u64, max_points: u64) -> Result<u8, Error> {
    let result = run_verify_with(u, p, max_points, |c| {
        let mark = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
        };
        eprintln!("[{mark}] {}: {}", c.name, c.detail);
    })?;
    println!("{}", result.to_json());
    Ok(if result.overall { 0 } else { EXIT_FAIL })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Report { u, p, base_point, json } => report(&u, p, base_point.as_deref(), json),
        Command::Verify { u, p, max_points } => verify(&u, p, max_points.unwrap_or_else(max_points_from_env)),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
