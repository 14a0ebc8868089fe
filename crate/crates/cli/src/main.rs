//! `semigen`: value regions, semiflows, verification suites and Cowen–Pommerenke
//! experiments from the command line.

mod commands;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CliError;
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "semigen", version, about = "Generators of holomorphic semigroups with boundary fixed points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// JSON configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory (created if missing; default: current directory).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Sample count (meaning depends on the subcommand).
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Tolerance override.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Output formats; repeat the flag for several.
    #[arg(long, global = true, value_enum)]
    pub format: Vec<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegionKind {
    /// `Z` and `Ω_ζ` for `0 < |τ| < 1`.
    Interior,
    /// `Ω` and `Z_ω` for `τ = 0`.
    Origin,
    /// `Z` and `I_ζ` for `|τ| = 1`.
    Boundary,
    /// `Z` and the range of `β` for `|τ| = 1`.
    Parabolic,
    /// Range of `λ(G)` over the whole class.
    Lambda,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Value region boundaries, descriptor and extremal generator.
    Region {
        #[arg(value_enum)]
        kind: RegionKind,
        #[command(flatten)]
        common: Common,
    },
    /// Trajectory of a semiflow with its z-derivative.
    Flow {
        #[command(flatten)]
        common: Common,
    },
    /// Inequality suite on seeded random generators.
    Verify {
        #[command(flatten)]
        common: Common,
    },
    /// Extremal field and random evolutions against the Cowen–Pommerenke region.
    CowenPommerenke {
        #[command(flatten)]
        common: Common,
    },
    /// Table of the non-integrable measure example.
    Counterexample {
        #[command(flatten)]
        common: Common,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Region { kind, common } => commands::region::run(kind, &common),
        Command::Flow { common } => commands::flow::run(&common),
        Command::Verify { common } => commands::verify::run(&common),
        Command::CowenPommerenke { common } => commands::cp::run(&common),
        Command::Counterexample { common } => commands::counterexample::run(&common),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
