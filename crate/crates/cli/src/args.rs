use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, TAU};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use oam_mzi::Spin;

use crate::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "oam-mzi", version, about = "Single-photon OAM Mach-Zehnder simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form P₊, S, D and likelihood over an α grid.
    Sweep(SweepArgs),
    /// Photon budget for a phase shift, next to the standard-bound comparator.
    Budget(BudgetArgs),
    /// Shot-level which-way or phase-sign experiments.
    Shots(ShotsArgs),
    /// Transverse field of an LG or BG mode on a square grid.
    Modes(ModesArgs),
    /// Runs the invariant suite and prints a pass/fail table.
    Verify(VerifyArgs),
}

/// Input charge and polarization `c1|R⟩ + c2|L⟩`. Without any amplitude flag
/// the input is balanced (|x⟩); once one is given, missing parts are zero.
#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    /// Topological charge.
    #[arg(long, default_value_t = 2)]
    pub l: i32,
    #[arg(long)]
    pub c1_re: Option<f64>,
    #[arg(long)]
    pub c1_im: Option<f64>,
    #[arg(long)]
    pub c2_re: Option<f64>,
    #[arg(long)]
    pub c2_im: Option<f64>,
}

impl Default for InputArgs {
    fn default() -> Self {
        Self {
            l: 2,
            c1_re: None,
            c1_im: None,
            c2_re: None,
            c2_im: None,
        }
    }
}

impl InputArgs {
    pub fn with_l(l: i32) -> Self {
        Self { l, ..Self::default() }
    }

    pub fn amplitudes(&self) -> (Complex64, Complex64) {
        let parts = [self.c1_re, self.c1_im, self.c2_re, self.c2_im];
        if parts.iter().all(Option::is_none) {
            let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
            return (h, h);
        }
        let [a, b, c, d] = parts.map(|p| p.unwrap_or(0.0));
        (Complex64::new(a, b), Complex64::new(c, d))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 0.0)]
    pub alpha_min: f64,
    #[arg(long, default_value_t = TAU)]
    pub alpha_max: f64,
    /// Number of intervals; the grid has steps + 1 points.
    #[arg(long, default_value_t = 400)]
    pub steps: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct BudgetArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Operating rotation.
    #[arg(long, default_value_t = FRAC_PI_2)]
    pub alpha0: f64,
    /// Phase shift to detect, (|l| + 1)·δα.
    #[arg(long, default_value_t = 1e-2)]
    pub phase_shift: f64,
    /// Distinguishability of the standard-bound comparator.
    #[arg(long, default_value_t = 0.9007)]
    pub compare_d: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl BudgetArgs {
    pub fn with_l(l: i32) -> Self {
        Self {
            input: InputArgs::with_l(l),
            alpha0: FRAC_PI_2,
            phase_shift: 1e-2,
            compare_d: 0.9007,
            out: None,
        }
    }
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct ShotsArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = FRAC_PI_2)]
    pub alpha: f64,
    /// Photons per trial.
    #[arg(long, default_value_t = 90_000)]
    pub n: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
    /// Runs phase-sign discrimination with a hidden ±δα displacement.
    #[arg(long)]
    pub delta_alpha: Option<f64>,
    /// Leaves per-trial summaries out of the report.
    #[arg(long)]
    pub summary_only: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Lg,
    Bg,
}

#[derive(Debug, Clone, Args)]
#[command(allow_negative_numbers = true)]
pub struct ModesArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::Lg)]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 2)]
    pub l: i32,
    /// Radial index (LG).
    #[arg(long, default_value_t = 0)]
    pub p: u32,
    /// Spin, +1 or −1.
    #[arg(long, default_value = "+1", value_parser = parse_spin, allow_hyphen_values = true)]
    pub s: Spin,
    /// Samples per side.
    #[arg(long, default_value_t = 33)]
    pub grid: usize,
    /// Half-width of the grid in waists.
    #[arg(long, default_value_t = 2.5)]
    pub extent: f64,
    #[arg(long, default_value_t = 1.0)]
    pub waist: f64,
    /// Radial wavenumber (BG), per waist.
    #[arg(long, default_value_t = 2.0)]
    pub k_r: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn parse_spin(s: &str) -> Result<Spin, String> {
    match s {
        "+1" | "1" => Ok(Spin::Plus),
        "-1" => Ok(Spin::Minus),
        _ => Err(format!("spin must be +1 or -1, got {s:?}")),
    }
}

/// Deliberate corruption used to check that the suite catches it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    /// Both output ports of the second beam splitter use the (+) sign.
    BsConvention,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Seed for the Monte Carlo streams; analytic checks use a fixed seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Option<Fault>,
}

pub(crate) fn finite(name: &str, v: f64) -> CliResult<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::Validation(format!("{name} must be finite")))
    }
}
