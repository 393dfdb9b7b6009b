use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact and high-precision analysis of the Ising model on random
/// tetravalent planar maps.
#[derive(Debug, Parser)]
#[command(name = "tetra-ising", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Working precision of numeric pipelines, in bits.
    #[arg(long, global = true, env = "TETRA_ISING_PRECISION", default_value_t = 192)]
    pub precision_bits: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for parameter sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coefficients Z_1..Z_n of the partition function.
    Coeffs(CoeffsArgs),
    /// Brute-force Z_n by enumerating maps (n <= 4).
    Enumerate(EnumerateArgs),
    /// Radius of convergence, S(rho) and singular exponent.
    Radius(RadiusArgs),
    /// Newton polygon (Puiseux) branches of S at its dominant singularity.
    Puiseux(PuiseuxArgs),
    /// Free energy, magnetization and susceptibility.
    Observables(ObservablesArgs),
    /// Fits Z_n ~ A mu^-n n^-alpha.
    ExponentFit(ExponentFitArgs),
    /// Runs the invariant battery; exits 1 if any check fails.
    Check,
}

/// `nu` and `c`, read as exact rationals (`"2"`, `"21/20"`, `"1.05"`, `"1e-4"`).
#[derive(Debug, Args)]
pub struct Point {
    #[arg(long)]
    pub nu: String,
    #[arg(long)]
    pub c: String,
}

#[derive(Debug, Args)]
pub struct CoeffsArgs {
    /// Coefficients as polynomials in nu and c.
    #[arg(long, conflicts_with_all = ["nu", "c", "numeric"])]
    pub symbolic: bool,
    #[arg(long, required_unless_present = "symbolic")]
    pub nu: Option<String>,
    #[arg(long, required_unless_present = "symbolic")]
    pub c: Option<String>,
    /// High-precision values instead of exact rationals.
    #[arg(long)]
    pub numeric: bool,
    #[arg(long, default_value_t = 10)]
    pub n_max: usize,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct RadiusArgs {
    /// One value or a comma-separated list; lists sweep the product grid.
    #[arg(long)]
    pub nu: String,
    #[arg(long)]
    pub c: String,
    /// Width to which rho is enclosed.
    #[arg(long, default_value = "1e-15")]
    pub tol: String,
    /// Compute outside |c - 1| <= 1/4, with a warning.
    #[arg(long)]
    pub allow_outside: bool,
}

#[derive(Debug, Args)]
pub struct PuiseuxArgs {
    #[command(flatten)]
    pub point: Point,
    #[arg(long, default_value_t = 3)]
    pub terms: usize,
}

#[derive(Debug, Args)]
pub struct ObservablesArgs {
    #[command(flatten)]
    pub point: Point,
    /// Finite size; the thermodynamic limit when absent.
    #[arg(long)]
    pub n: Option<usize>,
    /// Finite-difference step in c; chosen from (nu, c) when absent.
    #[arg(long)]
    pub h: Option<String>,
    /// Agreement required between steps h and h/2.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct ExponentFitArgs {
    #[command(flatten)]
    pub point: Point,
    #[arg(long, default_value_t = 400)]
    pub n_max: usize,
    /// First index of the fit window; `n_max / 4` when absent.
    #[arg(long)]
    pub n_min: Option<usize>,
}
