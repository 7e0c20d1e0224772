//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "picorr",
    version,
    about = "Driven four-level atom: steady states, eigenvalues, and photon-photon correlations \
             of the linearly polarized fluorescence",
    propagate_version = true
)]
pub struct Cli {
    /// Base decay scale; every rate and delay is expressed in units of it.
    #[arg(long, global = true)]
    pub gamma0: Option<f64>,

    /// JSON parameter file (keys: gamma0, rabi_re, rabi_im, detuning, vic).
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Directory for emitted datasets and manifests.
    #[arg(long, global = true, default_value = ".", value_name = "DIR")]
    pub out_dir: PathBuf,

    /// Stdout rendering for report commands.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Reduced units: intensity and correlation prefactors are exactly 1.
    /// Pass false for the physical prefactors 1/6 and 1/36.
    #[arg(long, global = true, default_value_t = true, action = clap::ArgAction::Set)]
    pub reduced_units: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stationary state, closed form cross-checked against the generator
    /// null space.
    Steady(DriveArgs),
    /// Canonically sorted eigenvalues of the closed 8x8 block.
    Eigs(DriveArgs),
    /// Computed-vs-reference eigenvalue comparison for the two standard
    /// drives, including the zero-detuning reading that does not match.
    Table1,
    /// Two-time correlation series over a delay grid.
    Corr(CorrArgs),
    /// Dataset behind one of the bound figures (2-6).
    Fig(FigArgs),
    /// Steady state, eigenvalues, and long-delay diagnostics over a
    /// drive/detuning grid.
    Sweep(SweepArgs),
    /// Generator matrix entries as (row, col, re, im) rows, 1-based.
    DumpGenerator(DumpArgs),
}

#[derive(Debug, Args)]
pub struct DriveArgs {
    /// Drive amplitude in units of gamma0 (real part).
    #[arg(long)]
    pub omega: Option<f64>,

    /// Detuning in units of gamma0.
    #[arg(long)]
    pub delta: Option<f64>,

    /// Interference switch.
    #[arg(long, action = clap::ArgAction::Set)]
    pub vic: Option<bool>,
}

#[derive(Debug, Args)]
pub struct CorrArgs {
    /// Drive amplitude in units of gamma0 (real part).
    #[arg(long)]
    pub omega: Option<f64>,

    /// Detuning in units of gamma0.
    #[arg(long)]
    pub delta: Option<f64>,

    /// Which interference variants to emit. The generator itself is
    /// identical either way; this selects the emitted columns.
    #[arg(long, value_enum, default_value_t = Variant::Both)]
    pub vic: Variant,

    /// Largest delay, units of 1/gamma0.
    #[arg(long, default_value_t = picorr::tolerances::DEFAULT_TAU_MAX)]
    pub tmax: f64,

    /// Delay step, units of 1/gamma0.
    #[arg(long, default_value_t = picorr::tolerances::DEFAULT_TAU_STEP)]
    pub dt: f64,

    /// Emit only the normalized columns.
    #[arg(long)]
    pub normalized: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Both,
    On,
    Off,
}

#[derive(Debug, Args)]
pub struct FigArgs {
    /// Figure id.
    #[arg(value_parser = clap::value_parser!(u8).range(2..=6))]
    pub id: u8,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Comma-separated drive amplitudes (all >= 0).
    #[arg(long, value_delimiter = ',', required = true)]
    pub omega: Vec<f64>,

    /// Comma-separated detunings.
    #[arg(long, value_delimiter = ',', required = true)]
    pub delta: Vec<f64>,

    /// Minimum delay checkpoint for the long-delay diagnostics; extended
    /// per grid point when the slowest relaxation mode needs longer.
    #[arg(long, default_value_t = picorr::tolerances::LONG_TIME_TAU)]
    pub tau_checkpoint: f64,
}

#[derive(Debug, Args)]
pub struct DumpArgs {
    #[command(flatten)]
    pub drive: DriveArgs,

    /// Matrix dimension: the closed block (8) or the full generator (16).
    #[arg(long, default_value_t = 8, value_parser = parse_dim)]
    pub dim: u8,
}

fn parse_dim(s: &str) -> Result<u8, String> {
    match s {
        "8" => Ok(8),
        "16" => Ok(16),
        other => Err(format!("dim must be 8 or 16, got {other}")),
    }
}
