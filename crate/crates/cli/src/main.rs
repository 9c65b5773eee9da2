use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rrbailey::commands::{self, FamilyOptions, VerifyOptions, USAGE};
use rrbailey_core::bailey::FamilyParams;

#[derive(Parser)]
#[command(name = "rrbailey", version, about = "Exact verification of Rogers-Ramanujan-Bailey type q-series identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand an expression as a truncated series.
    Expand {
        expr: String,
        #[arg(short = 'N', default_value_t = 20)]
        order: i64,
        /// Degree in `a` kept for expressions mentioning `a`; defaults to N.
        #[arg(short = 'M')]
        a_order: Option<u32>,
    },
    /// Verify identity files, or the shipped corpus when none are given.
    Verify {
        files: Vec<PathBuf>,
        /// Defaults to each document's `order` tag, then 50.
        #[arg(short = 'N')]
        order: Option<i64>,
        #[arg(short = 'M')]
        a_order: Option<u32>,
        #[arg(long)]
        json: bool,
        #[arg(short = 'j', long = "jobs")]
        jobs: Option<usize>,
    },
    /// Check the Q family for (d, e, k).
    Family {
        #[arg(short = 'd')]
        d: u32,
        #[arg(short = 'e')]
        e: u32,
        #[arg(short = 'k')]
        k: u32,
        #[arg(short = 'N', default_value_t = 30)]
        order: i64,
        #[arg(short = 'M')]
        a_order: Option<u32>,
        #[arg(long)]
        derive: bool,
        #[arg(long)]
        products: bool,
        #[arg(long)]
        residuals: bool,
        #[arg(long)]
        json: bool,
    },
    /// Compare beta built from alpha with the closed form, when there is one.
    Bailey {
        #[arg(short = 'd')]
        d: u32,
        #[arg(short = 'e')]
        e: u32,
        #[arg(short = 'k')]
        k: u32,
        #[arg(long = "n-max", default_value_t = 8)]
        n_max: u32,
        #[arg(short = 'N', default_value_t = 30)]
        order: i64,
        #[arg(short = 'M')]
        a_order: Option<u32>,
    },
}

fn params(d: u32, e: u32, k: u32) -> Result<FamilyParams, i32> {
    FamilyParams::new(d, e, k).map_err(|e| {
        eprintln!("error {}: {e}", e.kind());
        USAGE
    })
}

fn run(cli: Cli) -> i32 {
    let (mut out, mut err) = (io::stdout().lock(), io::stderr().lock());
    match cli.command {
        Command::Expand { expr, order, a_order } => {
            if order < 0 {
                eprintln!("error: N must be nonnegative");
                return USAGE;
            }
            commands::expand(&expr, order, a_order, &mut out, &mut err)
        }
        Command::Verify { files, order, a_order, json, jobs } => {
            if order.is_some_and(|n| n < 1) {
                eprintln!("error: N must be at least 1");
                return USAGE;
            }
            let opts = VerifyOptions { order, a_order, json, jobs };
            commands::verify_cmd(&files, &opts, &mut out, &mut err)
        }
        Command::Family { d, e, k, order, a_order, derive, products, residuals, json } => {
            let p = match params(d, e, k) {
                Ok(p) => p,
                Err(code) => return code,
            };
            let opts = FamilyOptions { order, a_order, derive, products, residuals, json };
            commands::family_cmd(&p, &opts, &mut out)
        }
        Command::Bailey { d, e, k, n_max, order, a_order } => match params(d, e, k) {
            Ok(p) => commands::bailey_cmd(&p, n_max, order, a_order, &mut out),
            Err(code) => code,
        },
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(Cli::parse()) as u8)
}
