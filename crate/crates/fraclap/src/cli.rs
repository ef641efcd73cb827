use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::grid::parse_scalar;
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "fraclap",
    version,
    about = "Fractional Laplacian of periodic chains and its Riesz kernels"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// First row (or the full matrix) of the N-periodic chain operator.
    Matrix(MatrixArgs),
    /// Normalized dispersion surface over alpha and kappa grids.
    Dispersion(DispersionArgs),
    /// Riesz kernel on the periodic string or the infinite line.
    Kernel(KernelArgs),
    /// Discrete-to-continuum convergence at a fixed point.
    Converge(ConvergeArgs),
    /// Run the identity and oracle suite; exits 1 if any check fails.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Spectral,
    Imagesum,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct MatrixArgs {
    #[arg(long, value_parser = parse_scalar)]
    pub alpha: f64,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "spectral")]
    pub method: MethodArg,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Elastic frequency scale Ω².
    #[arg(long, default_value_t = 1.0)]
    pub omega2: f64,
    /// Emit the full N×N matrix `-Ω² f_N(p - q)` instead of the first row.
    #[arg(long)]
    pub full: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DispersionArgs {
    #[arg(long, default_value = "0.5,1,1.5,2,2.5,3,3.5,4")]
    pub alpha: String,
    #[arg(long, default_value = "0:2pi:129")]
    pub kappa_grid: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct KernelArgs {
    #[arg(long, default_value = "0.5,1,1.5,2,2.5,3,3.5")]
    pub alpha: String,
    /// String length L.
    #[arg(long, default_value_t = 1.0, value_parser = parse_scalar)]
    pub length: f64,
    /// Use the infinite line instead of the periodic string.
    #[arg(long, conflicts_with = "length")]
    pub infinite: bool,
    #[arg(long, default_value = "0.025:1.975:40")]
    pub x_grid: String,
    /// Regularization width; selects the regularized kernel and admits
    /// lattice points in the grid.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Images summed directly by the regularized periodic kernel.
    #[arg(long, default_value_t = fraclap_core::continuum::DEFAULT_IMAGES)]
    pub images: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ConvergeArgs {
    #[arg(long, value_parser = parse_scalar)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0, value_parser = parse_scalar)]
    pub length: f64,
    #[arg(long, default_value_t = 0.5, value_parser = parse_scalar)]
    pub x: f64,
    #[arg(long, default_value_t = 1.0)]
    pub rho0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub a_alpha: f64,
    /// Strictly decreasing lattice constants.
    #[arg(long, default_value = "0.125,0.0625,0.03125,0.015625,0.0078125,0.00390625")]
    pub h_grid: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Run only the named checks (repeatable or comma separated).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    /// List check names and exit.
    #[arg(long)]
    pub list: bool,
    /// Relative perturbation injected into every computed quantity.
    #[arg(long, hide = true, default_value_t = 0.0)]
    pub perturb: f64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
