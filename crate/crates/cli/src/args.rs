//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "kgws",
    version,
    about = "Klein-Gordon bound states of the generalized Woods-Saxon potential"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form energy levels of one problem.
    Spectrum(SpectrumArgs),
    /// Compare closed-form levels with shooting and residual oracles.
    Verify(VerifyArgs),
    /// Sweep V0 or alpha and tabulate levels, optionally from a named preset.
    Scan(ScanArgs),
    /// Sample one eigenfunction along x.
    Wavefunction(WavefunctionArgs),
}

/// Problem definition; flags override values from `--config`.
#[derive(Debug, Clone, Default, Args)]
pub struct ProblemArgs {
    /// real | pt | nonpt | pseudo
    #[arg(long)]
    pub variant: Option<String>,
    /// Coupling constant.
    #[arg(long = "V0", allow_hyphen_values = true)]
    pub v0: Option<f64>,
    /// Shape parameter.
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<f64>,
    /// Diffuseness (alpha = 1/a).
    #[arg(long, conflicts_with = "alpha")]
    pub a: Option<f64>,
    /// Inverse diffuseness.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Particle mass.
    #[arg(long)]
    pub m: Option<f64>,
    /// Center of the potential in r.
    #[arg(long = "R0", allow_hyphen_values = true)]
    pub r0: Option<f64>,
    /// JSON file with any of V0, q, a, alpha, m, R0, variant.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Highest level index evaluated.
    #[arg(long, default_value_t = 10)]
    pub nmax: usize,
    /// Also list candidate levels rejected by the filters.
    #[arg(long)]
    pub all_candidates: bool,
    /// Nonrelativistic levels of the complex-alpha Schrodinger problem.
    #[arg(long)]
    pub nonrelativistic: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Write the JSON report to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Highest level index checked by residuals.
    #[arg(long, default_value_t = 10)]
    pub nmax: usize,
    /// Shooting grid points (odd, at least 2001).
    #[arg(long = "grid-points")]
    pub grid_points: Option<usize>,
    /// Half-width of the shooting window.
    #[arg(long = "L")]
    pub l: Option<f64>,
    /// Relative tolerance for pairing shooting and closed-form levels.
    #[arg(long, default_value_t = kgws::oracle::MATCH_REL_TOL)]
    pub tol: f64,
    /// Largest accepted eigenfunction residual.
    #[arg(long = "residual-tol", default_value_t = 1e-7)]
    pub residual_tol: f64,
    /// Worker threads (0 picks one per core).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Shift every closed-form energy by this amount before checking.
    #[arg(long = "perturb-closed-form", hide = true, allow_hyphen_values = true)]
    pub perturb: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum SweepAxis {
    #[value(name = "V0")]
    #[serde(rename = "V0")]
    V0,
    #[value(name = "alpha")]
    #[serde(rename = "alpha")]
    Alpha,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// fig1a, fig1b, fig2a, fig2b, fig3a, fig3b, fig4a or fig4b.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, value_enum)]
    pub sweep: Option<SweepAxis>,
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<f64>,
    /// Number of intervals; the sweep has steps + 1 points.
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Worker threads (0 picks one per core).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct WavefunctionArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub output: OutputArgs,
    /// Level index.
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Branch of the real-variant energy (+ or -); first emitted by default.
    #[arg(long, allow_hyphen_values = true)]
    pub branch: Option<String>,
    #[arg(long = "x-from", allow_hyphen_values = true)]
    pub x_from: Option<f64>,
    #[arg(long = "x-to", allow_hyphen_values = true)]
    pub x_to: Option<f64>,
    #[arg(long, default_value_t = 201)]
    pub points: usize,
}
