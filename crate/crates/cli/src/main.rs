use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;
mod problem;

/// Exit codes: 0 pass, 1 refuted or failed property, 2 schema, 3 dimension,
/// 4 non-convergence.
#[derive(Debug)]
pub enum CliError {
    Schema(String),
    Dimension(String),
    NonConvergence(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Schema(_) => 2,
            CliError::Dimension(_) => 3,
            CliError::NonConvergence(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Schema(m) => write!(f, "schema error: {m}"),
            CliError::Dimension(m) => write!(f, "dimension error: {m}"),
            CliError::NonConvergence(m) => write!(f, "no convergence: {m}"),
        }
    }
}

impl From<conelattice::Error> for CliError {
    fn from(e: conelattice::Error) -> Self {
        use conelattice::Error as E;
        match e {
            E::DimensionMismatch { .. } => CliError::Dimension(e.to_string()),
            E::NotConverged { .. } | E::SuspectedInfeasible { .. } => CliError::NonConvergence(e.to_string()),
            other => CliError::Schema(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "conelattice",
    version,
    about = "Cone-induced lattice operations, projections and certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Common {
    /// Problem file (JSON)
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    /// Write the JSON result here
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Random seed; overrides the file
    #[arg(long)]
    pub seed: Option<u64>,
    /// Tolerance; overrides the file
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ProjectTarget {
    Cone,
    Polyhedron,
    Hyperplane,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SetTarget {
    Hyperplane,
    Polyhedron,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Auto,
    Closed,
    Bilinear,
    Sampled,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum FalsifyProperty {
    Invariance,
    Isotonicity,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Fault {
    MeetNoSubtract,
}

#[derive(Subcommand)]
enum Command {
    /// Project a named point onto the cone, polyhedron or hyperplane of the file
    Project {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        point: String,
        #[arg(long, value_enum, default_value = "cone")]
        target: ProjectTarget,
    },
    /// Meet, join, comparability and the spanned rectangle of two named points
    Meetjoin {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Certify invariance and isotone projection for the hyperplane or polyhedron
    Certify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        target: SetTarget,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        #[arg(long, default_value_t = 1000)]
        n: usize,
    },
    /// Search for counterexamples to invariance or isotonicity by sampling
    Falsify {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        target: SetTarget,
        #[arg(long, value_enum)]
        property: FalsifyProperty,
        #[arg(long, default_value_t = 5000)]
        n: usize,
        /// Spread of the sampled points around the set
        #[arg(long, default_value_t = 2.0)]
        scale: f64,
    },
    /// Run the randomized property suite
    Props {
        /// Comma-separated: orthant, lorentz, rotated, product
        #[arg(long, default_value = "orthant,lorentz")]
        cones: String,
        /// Single dimension or inclusive range like 2-6
        #[arg(long, default_value = "2-6")]
        dims: String,
        #[arg(long, default_value_t = 500)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
    /// Run the projection iteration described by the file's vi block
    Vi {
        #[command(flatten)]
        common: Common,
        /// Keep every n-th iterate in the JSON trajectory
        #[arg(long, default_value_t = 1)]
        thin: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Project { common, point, target } => commands::project(&common, &point, target),
        Command::Meetjoin { common, x, y } => commands::meetjoin(&common, &x, &y),
        Command::Certify {
            common,
            target,
            method,
            n,
        } => commands::certify(&common, target, method, n),
        Command::Falsify {
            common,
            target,
            property,
            n,
            scale,
        } => commands::falsify(&common, target, property, n, scale),
        Command::Props {
            cones,
            dims,
            n,
            seed,
            json,
            inject_fault,
        } => commands::props(&cones, &dims, n, seed, json.as_deref(), inject_fault),
        Command::Vi { common, thin } => commands::vi(&common, thin),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
