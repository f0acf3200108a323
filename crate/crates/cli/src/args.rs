use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "vortexre",
    version,
    about = "Relative equilibria of the (1+N)-point-vortex problem"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Gradient ∞-norm below which a point counts as critical.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol_grad: f64,
    /// Residual ∞-norm at which Newton stops.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tol_newton: f64,
    /// Relative threshold for declaring an eigenvalue zero.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol_zero_eig: f64,
    /// Number of quasi-random starting points for the critical-point search.
    #[arg(long, global = true, default_value_t = 4096)]
    pub seeds: usize,
    /// Directory for output files (created if missing).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Disable data-parallel evaluation.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find, classify and group all critical points of V.
    Find(FindArgs),
    /// Count real critical points exactly (Gröbner basis + Hermite form).
    Certify(CertifyArgs),
    /// Continue a critical point of V to relative equilibria at ε > 0.
    Continue(ContinueArgs),
    /// Render a configuration JSON record as SVG.
    Plot(PlotArgs),
    /// Print the half-angle polynomial system.
    BuildSystem(BuildSystemArgs),
    /// Integrate the full vortex equations from a configuration.
    Simulate(SimulateArgs),
}

#[derive(Debug, Args)]
pub struct FindArgs {
    /// Comma-separated weights, e.g. 2,-1,3 or 1/2,1,1.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: String,
    /// Distance below which two critical points are merged.
    #[arg(long, default_value_t = 1e-6)]
    pub tol_dedup: f64,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Comma-separated integer weights.
    #[arg(
        long,
        allow_hyphen_values = true,
        required_unless_present = "symmetry_case"
    )]
    pub mu: Option<String>,
    /// Print the Gröbner basis and its leading monomials.
    #[arg(long)]
    pub show_basis: bool,
    /// Print the Hermite matrix.
    #[arg(long)]
    pub show_hermite: bool,
    /// Eliminate r from a reflection-symmetric slice (1: θ₃=-θ₂, 2: θ₃=2θ₂, 3: θ₂=2θ₃).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub symmetry_case: Option<u8>,
}

#[derive(Debug, Args)]
pub struct ContinueArgs {
    /// Comma-separated weights (a single value in polygon mode).
    #[arg(long, allow_hyphen_values = true)]
    pub mu: String,
    /// Scale the weights to unit Euclidean norm first.
    #[arg(long)]
    pub normalize: bool,
    /// Start from critical point K (1-based, in `find` order).
    #[arg(long, conflicts_with_all = ["theta", "select", "polygon"])]
    pub point: Option<usize>,
    /// Start from these angles (radians), polished to a critical point.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["select", "polygon"])]
    pub theta: Option<String>,
    /// Start from the first critical point of a kind, e.g. `saddle:stable` or `minimum`.
    #[arg(long, conflicts_with = "polygon")]
    pub select: Option<String>,
    /// Follow the regular N-gon family instead.
    #[arg(long)]
    pub polygon: Option<usize>,
    #[arg(long, visible_alias = "eps", default_value_t = 0.1)]
    pub eps_max: f64,
    #[arg(long, default_value_t = 0.005)]
    pub step: f64,
    /// ε values to render as SVG (nearest trace row); defaults to 0 and eps-max.
    #[arg(long, value_delimiter = ',')]
    pub snapshots: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Configuration JSON file (`-` for stdin).
    pub input: PathBuf,
    /// Output SVG path; stdout if omitted.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BuildSystemArgs {
    #[arg(
        long,
        allow_hyphen_values = true,
        required_unless_present = "symmetry_case"
    )]
    pub mu: Option<String>,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3), conflicts_with = "mu")]
    pub symmetry_case: Option<u8>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Configuration JSON (as written by `continue` or `find`).
    #[arg(long, required_unless_present = "polygon")]
    pub config: Option<PathBuf>,
    #[arg(long, conflicts_with = "config", requires_all = ["mu", "eps"])]
    pub polygon: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long, default_value_t = std::f64::consts::TAU)]
    pub t_end: f64,
    #[arg(long, default_value_t = 64)]
    pub samples: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}
