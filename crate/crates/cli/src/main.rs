//! `trellis`: inspect psoset documents and build or enumerate t-norms on them.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "trellis", version, about = "Pseudo-ordered sets, trellises and t-norms")]
pub struct Cli {
    /// Print a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write a Graphviz diagram to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub dot: Option<PathBuf>,

    /// Seed for the random property suites.
    #[arg(long, global = true, value_name = "U64")]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the pseudo-order, the trellis axioms and any attached tables.
    Validate { file: PathBuf },
    /// Classify every element and list the subsets X^α.
    Classify { file: PathBuf },
    /// Report structural flags, cycles, co-atoms, modularity and the zero t-norm condition.
    Structure { file: PathBuf },
    /// Build a t-norm and check it.
    Construct {
        file: PathBuf,
        /// drastic, z, coatom:<elt>, lambda:<subset>[:V=<op>] or interior:<map>[:V=<op>].
        #[arg(long)]
        method: String,
        /// Apply the formula even when its preconditions fail (lambda and interior only).
        #[arg(long)]
        unchecked: bool,
    },
    /// List every t-norm on the carrier with the order among them.
    Enumerate {
        file: PathBuf,
        /// Stop after this many t-norms.
        #[arg(long)]
        limit: Option<usize>,
        /// Largest carrier to attempt.
        #[arg(long, default_value_t = trellis_core::enumerate::DEFAULT_CAP)]
        cap: usize,
    },
    /// Re-run the reproduction checks on the built-in fixtures.
    VerifyPaper,
}

pub const EXIT_VIOLATIONS: u8 = 2;
pub const EXIT_INPUT: u8 = 3;
pub const EXIT_PRECONDITION: u8 = 4;
pub const EXIT_LIMIT: u8 = 5;
pub const EXIT_USAGE: u8 = 64;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let json = cli.json;
    let report = commands::run(&cli).unwrap_or_else(|f| Report::from_failure(&cli, &f));
    let code = match &report.failure {
        Some(f) => f.exit_code(),
        None if report.violations => EXIT_VIOLATIONS,
        None => 0,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("report serializes"));
    } else {
        print!("{}", report.text());
        if let Some(f) = &report.failure {
            eprintln!("error: {}", f.message);
        }
    }
    ExitCode::from(code)
}
