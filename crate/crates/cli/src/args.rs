use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use crational::C64;

#[derive(Debug, Parser)]
#[command(
    name = "wsurf",
    version,
    about = "Weierstrass minimal surfaces and their Möbius geometry"
)]
pub struct Cli {
    /// Record wall times in reports (makes them run-dependent).
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a surface document.
    Generate(GenerateArgs),
    /// Exact conformality, isotropy order and planar ends.
    Verify(VerifyArgs),
    /// Willmore, integrability and S-Willmore residuals at sample points.
    Invariants(InvariantsArgs),
    /// Adjoint transforms: the dual surface or a Riccati extension.
    Adjoint(AdjointArgs),
    /// Bundle suite and conformal Gauss map harmonicity.
    Harmonic(HarmonicArgs),
    /// Twistor lift checks for surfaces in ℝ^{2m}.
    Twistor(TwistorArgs),
    /// Point cloud CSV on a chart grid.
    Export(ExportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Example {
    Bryant,
    R4,
    TotallyIsotropic,
    Plane,
    RoundSphere,
    Cylinder,
    Veronese,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, required_unless_present = "example")]
    pub k: Option<usize>,
    #[arg(long, required_unless_present = "example")]
    pub m: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// A named example instead of the k-isotropic family (`--m` sets its size).
    #[arg(long, value_enum, conflicts_with = "k")]
    pub example: Option<Example>,
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReportArg {
    /// Write the JSON report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    #[command(flatten)]
    pub report: ReportArg,
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    pub file: PathBuf,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Also integrate the Willmore energy.
    #[arg(long)]
    pub energy: bool,
    #[command(flatten)]
    pub report: ReportArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AdjointMode {
    Dual,
    Riccati,
}

#[derive(Debug, Args)]
pub struct AdjointArgs {
    pub file: PathBuf,
    #[arg(long, value_enum)]
    pub mode: AdjointMode,
    /// Initial data at the grid center: `g-const RE,IM` or `infinite`.
    #[arg(long, num_args = 1..=2, value_names = ["KIND", "RE,IM"], allow_hyphen_values = true)]
    pub init: Vec<String>,
    /// Sample count for the dual mode.
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Grid points per side for the Riccati mode.
    #[arg(long, default_value_t = 41)]
    pub grid: usize,
    #[arg(long, default_value = "0.45,0.2", value_parser = parse_complex, allow_hyphen_values = true)]
    pub center: C64,
    #[arg(long, default_value_t = 0.5)]
    pub size: f64,
    #[command(flatten)]
    pub report: ReportArg,
}

#[derive(Debug, Args)]
pub struct HarmonicArgs {
    pub file: PathBuf,
    /// Steps of the φ recursion and the Q chain.
    #[arg(long)]
    pub max_steps: Option<usize>,
    #[arg(long, default_value_t = 12)]
    pub samples: usize,
    #[arg(long, default_value_t = 3)]
    pub seed: u64,
    /// Grid points per side for the harmonicity residual.
    #[arg(long, default_value_t = 21)]
    pub grid: usize,
    #[arg(long, default_value = "0.45,0.2", value_parser = parse_complex, allow_hyphen_values = true)]
    pub center: C64,
    #[arg(long, default_value_t = 1.0)]
    pub size: f64,
    #[command(flatten)]
    pub report: ReportArg,
}

#[derive(Debug, Args)]
pub struct TwistorArgs {
    pub file: PathBuf,
    #[arg(long, default_value_t = 12)]
    pub samples: usize,
    #[arg(long, default_value_t = 4)]
    pub seed: u64,
    #[command(flatten)]
    pub report: ReportArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ChartArg {
    /// `z`.
    North,
    /// `w = 1/z`.
    South,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub csv: PathBuf,
    #[arg(long, value_enum)]
    pub chart: ChartArg,
    #[arg(long)]
    pub grid: usize,
    /// Half-width of the square chart window.
    #[arg(long, default_value_t = 1.5)]
    pub extent: f64,
    /// Points closer than this to a pole are masked (at least one grid step).
    #[arg(long, default_value_t = 0.05)]
    pub mask_radius: f64,
    #[command(flatten)]
    pub report: ReportArg,
}

/// `RE,IM`.
pub fn parse_complex(s: &str) -> Result<C64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected RE,IM, got {s:?}"))?;
    let p = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|e| format!("{t:?}: {e}"))
            .and_then(|v| {
                if v.is_finite() {
                    Ok(v)
                } else {
                    Err(format!("{t:?} is not finite"))
                }
            })
    };
    Ok(C64::new(p(re)?, p(im)?))
}
