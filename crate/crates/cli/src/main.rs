use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod report;

#[derive(Parser)]
#[command(name = "qlambert", version, about = "Exact q-series identities, Lambert series and overpartition ranks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    Enum,
    Gf,
}

#[derive(Subcommand)]
enum Command {
    /// Verify identity scripts (.qid); exit 0 if all pass, 1 on a failure, 2 on bad input.
    Verify {
        paths: Vec<PathBuf>,
        /// Verify the bundled corpus (or the directory in QLAMBERT_CORPUS).
        #[arg(long)]
        corpus: bool,
        /// Check every assertion through q^N instead of the order written in the script.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        order: Option<u64>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Include per-assertion wall time (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
    },
    /// Print the coefficients of an expression through q^N.
    Series {
        expr: String,
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
    /// Table of overpartition counts by rank residue modulo 6.
    Ranks {
        #[arg(long, default_value_t = 20)]
        max: u64,
        #[arg(long, value_enum, default_value_t = Oracle::Gf)]
        oracle: Oracle,
        /// Compute with both oracles and fail on any disagreement.
        #[arg(long)]
        cross_check: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Extract sum_n a(m n + d) q^n from an expression.
    Dissect {
        expr: String,
        #[arg(long = "mod", value_parser = clap::value_parser!(u64).range(1..))]
        modulus: u64,
        #[arg(long)]
        residue: u64,
        #[arg(long, default_value_t = 20)]
        order: usize,
    },
    /// Scan the rank ordering chains for 3n, 3n+1, 3n+2 over a range of n.
    Conjecture {
        #[arg(long, default_value_t = 11)]
        from: u64,
        #[arg(long, default_value_t = 40)]
        to: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let code = match cli.command {
        Command::Verify { paths, corpus, order, jobs, format, timings } => {
            commands::verify(&paths, corpus, order, jobs as usize, format, timings, &mut out)
        }
        Command::Series { expr, order } => commands::series(&expr, order, &mut out),
        Command::Ranks { max, oracle, cross_check, format } => commands::ranks(max, oracle, cross_check, format, &mut out),
        Command::Dissect { expr, modulus, residue, order } => commands::dissect(&expr, modulus as usize, residue as usize, order, &mut out),
        Command::Conjecture { from, to, format } => commands::conjecture(from, to, format, &mut out),
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    ExitCode::from(code)
}
