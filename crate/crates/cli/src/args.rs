use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(
    name = "wigner-ks",
    version,
    about = "Spectra and identity checks for the Wigner–Heisenberg oscillator and its hydrogen image"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Default, Args)]
pub struct GlobalArgs {
    /// Output format
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for every randomized step [default: 42]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Interior grid points [default: 4000]
    #[arg(long, global = true)]
    pub grid_n: Option<usize>,
    /// Outer grid radius [default: 12 for oscillators, max(60, 40+20N) for hydrogen]
    #[arg(long, global = true)]
    pub x_max: Option<f64>,
    /// Worker threads [default: available parallelism]
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Flat JSON file with flag values; flags given on the command line win
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Pass/fail tolerance override
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lowest eigenvalues next to their closed forms
    Spectrum(SpectrumArgs),
    /// Run a verification suite
    Verify(VerifyArgs),
    /// Tabulate a radial eigenfunction, closed form against grid eigenvector
    Eigenfunction(EigenfunctionArgs),
    /// Map an oscillator energy to a hydrogen level
    Map(MapArgs),
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(value_enum)]
    pub kind: SpectrumKind,
    #[arg(long, allow_negative_numbers = true)]
    pub ell: Option<f64>,
    #[arg(long)]
    pub levels: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub z: Option<f64>,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    #[arg(long, value_enum)]
    pub channel: Option<Channel>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long, allow_negative_numbers = true)]
    pub ell: Option<f64>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    pub z: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EigenfunctionArgs {
    #[arg(value_enum)]
    pub kind: RadialArg,
    #[arg(long, allow_negative_numbers = true)]
    pub ell: Option<f64>,
    #[arg(long)]
    pub m: Option<u32>,
    /// Sample interval `START,END`; points are taken on (START, END]
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub range: Option<(f64, f64)>,
    #[arg(long)]
    pub points: Option<usize>,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub e_osc: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub ell: Option<f64>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    pub z: Option<f64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SpectrumKind {
    Wigner,
    Oscillator4d,
    Hydrogen,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Fd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Channel {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Algebra,
    Osp12,
    Ks,
    Mapping,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RadialArg {
    Oscillator4d,
    Hydrogen,
}

pub fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected START,END, got {s:?}"))?;
    let a: f64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: f64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if !(a.is_finite() && b.is_finite() && a >= 0.0 && b > a) {
        return Err(format!("need 0 <= START < END, got {a},{b}"));
    }
    Ok((a, b))
}
