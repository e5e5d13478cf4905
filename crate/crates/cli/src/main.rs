mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gbt_core::DegreeSequence;

use crate::output::Failure;

#[derive(Debug, Parser)]
#[command(
    name = "gbt",
    version,
    about = "Generalized Bethe trees and their main eigenvalues"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Selects one tree, either by its degree sequence or as the `k`-level
/// member of the counterexample family `(5, k-3, 5, 3, 2, ..., 2)`.
#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct TreeArgs {
    /// Comma-separated degrees d1,...,d_{k-1}, e.g. 5,3,5,3,2.
    #[arg(long, value_name = "D1,D2,...")]
    pub degrees: Option<DegreeSequence>,

    /// Even k >= 6: use the k-level counterexample tree.
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Divisor,
    Tree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Counterexample,
    Bethe,
    Hou,
    Partition,
    Charpoly,
    Equality,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the tree and print its edges.
    Build(TreeArgs),

    /// Print the divisor matrix of the level partition.
    Divisor(TreeArgs),

    /// Exact characteristic polynomial of the divisor or the whole tree.
    Charpoly {
        #[command(flatten)]
        tree: TreeArgs,
        #[arg(long, value_enum, default_value_t = Target::Divisor)]
        of: Target,
    },

    /// Count main eigenvalues.
    MainCount {
        #[command(flatten)]
        tree: TreeArgs,
        /// Exact Krylov rank of the divisor (default).
        #[arg(long, conflicts_with_all = ["numeric", "both"])]
        exact: bool,
        /// Floating-point main spectrum of the full adjacency matrix.
        #[arg(long, conflicts_with = "both")]
        numeric: bool,
        /// Compare exact, numeric and walk-matrix counts.
        #[arg(long)]
        both: bool,
    },

    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, value_name = "D1,D2,...", conflicts_with = "k")]
        degrees: Option<DegreeSequence>,
        /// Number of levels.
        #[arg(long)]
        k: Option<usize>,
        /// Degree parameter of the Bethe suite.
        #[arg(long)]
        d: Option<u32>,
        /// Parameter of the Hou suite.
        #[arg(long)]
        alpha: Option<u32>,
    },

    /// Exhaustive exact scan of all degree sequences with k levels.
    Search {
        #[arg(long)]
        k: usize,
        #[arg(long, value_name = "D")]
        max_degree: u32,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let rendered = e.to_string();
            let line = rendered.lines().next().unwrap_or("invalid arguments");
            eprintln!("gbt: {}", line.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("gbt: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("gbt: {msg}");
            ExitCode::from(1)
        }
    }
}
