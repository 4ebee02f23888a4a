use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "parrondo-lab",
    version,
    about = "Local stability of non-hyperbolic fixed points and Parrondo reversals of periodic map systems"
)]
pub struct Cli {
    /// Zero tolerance for floating (planar) tests.
    #[arg(long, global = true, env = "PARRONDO_LAB_TOL", default_value_t = 1e-9)]
    pub tol: f64,

    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stability constants and verdict of one map or of a system's composition.
    Analyze {
        /// Map file, or the name of a gallery entry.
        target: String,
        /// Analyze the N-th map of a system (1-based) instead of the composition.
        #[arg(long, value_name = "N")]
        map: Option<usize>,
    },
    /// Per-map verdicts, composition and the paradox flag of a periodic system.
    Parrondo {
        /// System or map file, or the name of a gallery entry.
        target: String,
    },
    /// Iterate orbits of a system in floating point.
    Simulate(SimulateArgs),
    /// Reproduce gallery entries against their expected values.
    Gallery {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        name: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Emit map files built by the parameterized constructions.
    #[command(subcommand)]
    Construct(ConstructCommand),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Map file, or the name of a gallery entry.
    pub target: String,
    /// Initial point, comma separated (default: the sample radius on the first axis).
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,
    /// Maximum number of periods; for `unbounded`, the last n of the table.
    #[arg(long)]
    pub iters: Option<u64>,
    #[arg(long)]
    pub escape: Option<f64>,
    /// Distance of the sampled initial points; implies an empirical verdict.
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long)]
    pub converge: Option<f64>,
    /// Number of sampled initial points; implies an empirical verdict.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Write the orbit from the initial point to a CSV file.
    #[arg(long, value_name = "FILE")]
    pub trace: Option<PathBuf>,
    /// Record every N-th map application in the trace.
    #[arg(long, value_name = "N", default_value_t = 1, requires = "trace")]
    pub trace_every: u64,
}

#[derive(Debug, Subcommand)]
pub enum ConstructCommand {
    /// Three orientation-reversing LAS or repelling jets whose composition
    /// has a free fifth-order constant. Values are exact rationals.
    OneD {
        #[arg(long, allow_hyphen_values = true)]
        a22: String,
        #[arg(long = "A1sq", allow_hyphen_values = true)]
        a1_sq: String,
        #[arg(long = "A2sq", allow_hyphen_values = true)]
        a2_sq: String,
        #[arg(long = "A3sq", allow_hyphen_values = true)]
        a3_sq: String,
        #[arg(long, allow_hyphen_values = true)]
        a23: String,
        #[arg(long, allow_hyphen_values = true)]
        a4: String,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// The planar pair with parameters t, s and u.
    TwoD {
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        #[arg(long, allow_hyphen_values = true)]
        s: f64,
        #[arg(long, allow_hyphen_values = true)]
        u: f64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}
