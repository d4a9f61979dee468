mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hamfix_core::solver::DEFAULT_BUDGET;
use hamfix_core::Rat;

/// Fixed point data of Hamiltonian circle actions with n+1 fixed points.
#[derive(Debug, Parser)]
#[command(name = "hamfix", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Emit a machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Worker threads for the solver; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0, value_name = "N")]
    pub jobs: usize,
    /// Translate moment values so that phi(P_0) = 0 before reporting.
    #[arg(long, global = true)]
    pub normalize: bool,
    /// Do not require integral moment value differences.
    #[arg(long, global = true)]
    pub no_integrality: bool,
    /// Search node budget for the solver.
    #[arg(long, global = true, env = "HAMFIX_BUDGET", default_value_t = DEFAULT_BUDGET, value_name = "N")]
    pub budget: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a file and run the localization checks.
    Check { file: PathBuf },
    /// Print the ring coefficients r_0..r_n and the ring type.
    Ring { file: PathBuf },
    /// Print the total Chern class and the symmetric functions of the weights.
    Chern { file: PathBuf },
    /// Print the gradient sphere graph.
    Graph { file: PathBuf },
    /// Write the fixed point data of a standard action.
    Model {
        #[command(subcommand)]
        kind: ModelKind,
    },
    /// List every weight system a ring forces on the given moment values.
    Solve(RingArgs),
    /// Check the equivalences for CP^n or the quadric on the given moment values.
    Verify(RingArgs),
    /// Recover moment values from weights alone.
    Infer {
        /// Weight lists separated by ';', e.g. "1,2;-1,1;-2,-1".
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum ModelKind {
    /// Linear action on CP^n with distinct integer parameters.
    Cpn {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        b: Vec<i64>,
    },
    /// SO(n+2) action on the quadric, n odd >= 3, non-zero parameters.
    Quadric {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        b: Vec<i64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RingChoice {
    Cpn,
    Quadric,
    Other,
}

#[derive(Debug, Args)]
pub struct RingArgs {
    #[arg(long, value_enum)]
    pub ring: RingChoice,
    /// Ratios r_0..r_n for `--ring other`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub r: Vec<Rat>,
    /// Strictly increasing integer moment values.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub phi: Vec<i64>,
    /// Largest weight magnitude to try; defaults to the total moment span.
    #[arg(long)]
    pub max_weight: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(commands::run(&cli))
}
