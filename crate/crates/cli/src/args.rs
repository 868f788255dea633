use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

/// Numerics for the 3-D generalized isotonic oscillator and its squeezed
/// coherent states.
///
/// Parameters may also come from a `key = value` file given by --config or
/// ISOQ_CONFIG; flags on the command line win.
#[derive(Debug, Parser)]
#[command(name = "isoq", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Parameter file with one `key = value` per line.
    #[arg(long, global = true, env = "ISOQ_CONFIG")]
    pub config: Option<PathBuf>,

    /// Output file (stdout when omitted).
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the invariant suites; exits 1 if any check fails.
    Validate(ValidateArgs),
    /// Mandel Q against |ξ|.
    Mandel(MandelArgs),
    /// Quadrature squeezing indicators I₁, I₂ over |α₀| and θ.
    Quadrature(QuadratureArgs),
    /// Spin-squeezing indicators S_Lx, S_Ly over (x₊, y₊).
    Angular(AngularArgs),
    /// Wigner function on the diagonal slice ζ_r = ζ₊ = ζ₋ = x + ip.
    Wigner(WignerArgs),
    /// Radial eigenfunctions Φ_{n,l}, the potential and the energies.
    Eigen(EigenArgs),
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Run only these suites (repeatable).
    #[arg(long = "suite")]
    pub suites: Vec<String>,

    /// List the suite names and exit.
    #[arg(long)]
    pub list: bool,
}

/// Complex numbers are written `a`, `a+bi` or `bi`.
fn complex(s: &str) -> Result<Complex64, String> {
    s.trim()
        .parse::<Complex64>()
        .map_err(|e| format!("`{s}` is not a complex number: {e}"))
}

#[derive(Debug, Args)]
pub struct MandelArgs {
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    pub alpha0: Option<Complex64>,
    /// Squeeze phase; ξ = −e^{iφ}|ξ|.
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub xi_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub xi_max: Option<f64>,
    /// Number of intervals; the sweep has steps + 1 points.
    #[arg(long, allow_hyphen_values = true)]
    pub steps: Option<usize>,
}

#[derive(Debug, Args)]
pub struct QuadratureArgs {
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    pub xi: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_steps: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta_points: Option<usize>,
}

#[derive(Debug, Args)]
pub struct AngularArgs {
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    pub xi_plus: Option<Complex64>,
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    pub xi_minus: Option<Complex64>,
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    pub alpha0_minus: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true)]
    pub half_width: Option<f64>,
    /// Points per axis.
    #[arg(long, allow_hyphen_values = true)]
    pub res: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Evaluation {
    Closed,
    Series,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    /// ξ = −e^{iφ} tanh R
    Standard,
    /// ξ = −½ e^{iφ} tanh R
    Half,
}

#[derive(Debug, Args)]
pub struct WignerArgs {
    #[arg(long = "R", allow_hyphen_values = true)]
    pub r: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    #[arg(long, value_parser = complex, allow_hyphen_values = true)]
    pub alpha0: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true)]
    pub half_width: Option<f64>,
    /// Points per axis (at most 2048).
    #[arg(long, allow_hyphen_values = true)]
    pub res: Option<usize>,
    #[arg(long, value_enum)]
    pub mode: Option<Evaluation>,
    #[arg(long, value_enum)]
    pub xi_convention: Option<Convention>,
    /// Fock tail mass allowed per mode in series mode.
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<f64>,
}

#[derive(Debug, Args)]
pub struct EigenArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub l: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub n_max: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub r_max: Option<f64>,
    /// Sample points on (0, r_max].
    #[arg(long, allow_hyphen_values = true)]
    pub points: Option<usize>,
}
