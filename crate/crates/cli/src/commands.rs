use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

use oam_mzi::{
    comparator_distinguishability_for, phase_discrimination, photon_budget, photon_formulas, rotation_symmetry_error,
    standard_bound_comparator, symmetry_order, transverse_field, which_way_experiment, BeamMode, Bounded, BudgetReport,
    DualityPoint, Error as CoreError, MziConfig, ShotConfig, Symmetry, BUDGET_CRITERION, MAX_OAM,
};

use crate::args::{finite, BudgetArgs, FamilyArg, Format, InputArgs, ModesArgs, ShotsArgs, SweepArgs, VerifyArgs};
use crate::output::{csv_document, json_document, FIELD_HEADER, SWEEP_HEADER};
use crate::verify::{run_suite, CheckResult};
use crate::{CliError, CliResult, SCHEMA_VERSION};

/// Comparator count the default distinguishability is pinned to.
const COMPARATOR_TARGET_PHOTONS: f64 = 5.3e4;
const COMPARATOR_NOTE: &str = "The comparator distinguishability is an input, not a prediction. \
The default 0.9007 is obtained by inverting D = sqrt(1 - 1/(n*phi^2)) at n = 5.3e4, phi = 1e-2; \
no selection rule for D is implied. See the frontier for other choices.";

fn checked_input(input: &InputArgs) -> CliResult<(i32, Complex64, Complex64)> {
    if input.l.abs() > MAX_OAM {
        return Err(CoreError::OamOutOfRange(input.l).into());
    }
    let (c1, c2) = input.amplitudes();
    for v in [c1.re, c1.im, c2.re, c2.im] {
        finite("input amplitude", v)?;
    }
    Ok((input.l, c1, c2))
}

fn pair(c: Complex64) -> [f64; 2] {
    [c.re, c.im]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub p_plus: f64,
    pub sensitivity: f64,
    pub distinguishability: f64,
    pub likelihood: f64,
}

pub fn sweep_rows(args: &SweepArgs) -> CliResult<Vec<SweepRow>> {
    if args.steps == 0 {
        return Err(CliError::Validation("steps must be positive".into()));
    }
    let lo = finite("alpha-min", args.alpha_min)?;
    let hi = finite("alpha-max", args.alpha_max)?;
    if hi <= lo {
        return Err(CliError::Validation("alpha-max must exceed alpha-min".into()));
    }
    let (l, c1, c2) = checked_input(&args.input)?;
    let n = args.steps;
    (0..=n)
        .map(|i| {
            let alpha = if i == n {
                hi
            } else {
                lo + (hi - lo) * f64::from(i) / f64::from(n)
            };
            let f = photon_formulas(l, c1, c2, alpha)?;
            Ok(SweepRow {
                alpha,
                p_plus: f.p_plus,
                sensitivity: f.sensitivity,
                distinguishability: f.distinguishability,
                likelihood: f.likelihood,
            })
        })
        .collect()
}

/// Closed-form figures over an α grid, as CSV or JSON.
pub fn cmd_sweep(args: &SweepArgs) -> CliResult<String> {
    let rows = sweep_rows(args)?;
    match args.format {
        Format::Csv => {
            let data: Vec<[f64; 5]> = rows
                .iter()
                .map(|r| [r.alpha, r.p_plus, r.sensitivity, r.distinguishability, r.likelihood])
                .collect();
            Ok(csv_document(SWEEP_HEADER, data.iter().map(|r| r.as_slice())))
        }
        Format::Json => {
            let (c1, c2) = args.input.amplitudes();
            json_document(&serde_json::json!({
                "schema": SCHEMA_VERSION,
                "l": args.input.l,
                "c1": pair(c1),
                "c2": pair(c2),
                "rows": rows,
            }))
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PhotonBudgetReport {
    pub l: i32,
    pub c1: [f64; 2],
    pub c2: [f64; 2],
    /// Rotation step, phase_shift / (|l| + 1).
    pub delta_alpha: f64,
    #[serde(flatten)]
    pub report: BudgetReport<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparatorReport {
    pub distinguishability: f64,
    pub visibility: f64,
    #[serde(flatten)]
    pub report: BudgetReport<f64>,
    pub note: &'static str,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct FrontierPoint {
    pub distinguishability: f64,
    pub n_photons: Bounded<f64>,
    pub expected_wrong: Bounded<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BudgetOutput {
    pub schema: u32,
    pub criterion: &'static str,
    pub photon: PhotonBudgetReport,
    pub comparator: ComparatorReport,
    /// Distinguishability at which the comparator needs exactly 5.3e4 photons
    /// for the requested shift.
    pub comparator_d_for_target: Option<f64>,
    pub frontier: Vec<FrontierPoint>,
}

/// Photon budget and standard-bound comparator, side by side.
pub fn cmd_budget(args: &BudgetArgs) -> CliResult<BudgetOutput> {
    let (l, c1, c2) = checked_input(&args.input)?;
    let alpha0 = finite("alpha0", args.alpha0)?;
    let shift = finite("phase-shift", args.phase_shift)?;
    let photon = photon_budget(l, c1, c2, alpha0, shift)?;
    if photon.n_photons.is_unbounded() {
        return Err(CoreError::ZeroSlope.into());
    }
    let point = DualityPoint::saturated(args.compare_d)?;
    let comparator = standard_bound_comparator(args.compare_d, shift)?;
    let frontier = (0..20)
        .map(|k| {
            let d = f64::from(k) / 20.0;
            let r = standard_bound_comparator(d, shift)?;
            Ok(FrontierPoint {
                distinguishability: d,
                n_photons: r.n_photons,
                expected_wrong: r.expected_wrong,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;

    Ok(BudgetOutput {
        schema: SCHEMA_VERSION,
        criterion: BUDGET_CRITERION,
        photon: PhotonBudgetReport {
            l,
            c1: pair(c1),
            c2: pair(c2),
            delta_alpha: shift / f64::from(l.abs() + 1),
            report: photon,
        },
        comparator: ComparatorReport {
            distinguishability: point.distinguishability,
            visibility: point.visibility,
            report: comparator,
            note: COMPARATOR_NOTE,
        },
        comparator_d_for_target: comparator_distinguishability_for(COMPARATOR_TARGET_PHOTONS, shift).ok(),
        frontier,
    })
}

/// Which-way guessing, or phase-sign discrimination when `--delta-alpha` is set.
pub fn cmd_shots(args: &ShotsArgs) -> CliResult<String> {
    let (l, c1, c2) = checked_input(&args.input)?;
    let alpha = finite("alpha", args.alpha)?;
    let config = MziConfig::new(l, c1, c2, alpha);
    let shots = ShotConfig::new(args.n, args.seed, args.trials);

    let (mode, mut summary) = match args.delta_alpha {
        None => ("which-way", to_value(&which_way_experiment(&config, &shots)?)?),
        Some(d) => {
            let d = finite("delta-alpha", d)?;
            ("discrimination", to_value(&phase_discrimination(&config, d, &shots)?)?)
        }
    };
    if args.summary_only {
        if let Value::Object(map) = &mut summary {
            map.remove("trials");
            map.remove("true_signs");
        }
    }
    json_document(&serde_json::json!({
        "schema": SCHEMA_VERSION,
        "mode": mode,
        "l": l,
        "c1": pair(c1),
        "c2": pair(c2),
        "alpha": alpha,
        "delta_alpha": args.delta_alpha,
        "n_photons": args.n,
        "seed": args.seed,
        "trials": args.trials,
        "rng": "ChaCha8, seeded from seed, stream = trial index",
        "criterion": BUDGET_CRITERION,
        "summary": summary,
    }))
}

fn to_value<S: Serialize>(v: &S) -> CliResult<Value> {
    serde_json::to_value(v).map_err(|e| CliError::Validation(e.to_string()))
}

#[derive(Debug, Clone)]
pub struct ModesOutput {
    pub csv: String,
    pub symmetry: Symmetry,
    /// Relative field change under rotation by 2π/n over the grid points
    /// (by 1 rad for continuous symmetry).
    pub rotation_error: f64,
}

impl ModesOutput {
    pub fn summary(&self) -> String {
        match self.symmetry {
            Symmetry::Fold(n) => format!("symmetry: {n}-fold, rotation error {:.3e}", self.rotation_error),
            Symmetry::Continuous => format!("symmetry: continuous, rotation error {:.3e}", self.rotation_error),
        }
    }
}

pub fn beam_mode(args: &ModesArgs) -> BeamMode<f64> {
    match args.family {
        FamilyArg::Lg => BeamMode::laguerre_gauss(args.l, args.p, args.waist),
        FamilyArg::Bg => BeamMode::bessel_gauss(args.l, args.waist, args.k_r / args.waist),
    }
}

/// Transverse field grid of a circularly polarized LG/BG mode.
pub fn cmd_modes(args: &ModesArgs) -> CliResult<ModesOutput> {
    if args.l.abs() > MAX_OAM {
        return Err(CoreError::OamOutOfRange(args.l).into());
    }
    let mode = beam_mode(args);
    let spec = oam_mzi::GridSpec {
        extent: finite("extent", args.extent)?,
        resolution: args.grid,
    };
    let grid = transverse_field(&mode, args.s, &spec)?;
    let rows: Vec<[f64; 4]> = grid.samples.iter().map(|s| [s.x, s.y, s.ex, s.ey]).collect();

    let symmetry = symmetry_order(args.l, args.s);
    let angle = match symmetry {
        Symmetry::Fold(n) => TAU / f64::from(n),
        Symmetry::Continuous => 1.0,
    };
    let points: Vec<(f64, f64)> = grid
        .samples
        .iter()
        .map(|s| (s.x * args.waist, s.y * args.waist))
        .collect();
    Ok(ModesOutput {
        csv: csv_document(FIELD_HEADER, rows.iter().map(|r| r.as_slice())),
        symmetry,
        rotation_error: rotation_symmetry_error(&mode, args.s, angle, &points),
    })
}

#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub checks: Vec<CheckResult>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }

    pub fn table(&self) -> String {
        let width = self.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let pad = width - c.name.chars().count();
            out.push_str(&format!(
                "{}  {}{}  {:.3e} {} {:.1e}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                " ".repeat(pad),
                c.value,
                c.bound.symbol(),
                c.tolerance
            ));
        }
        let failed = self.failures().len();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        out
    }

    /// `Ok` when every check passed, otherwise the failing names.
    pub fn into_result(self) -> CliResult<Self> {
        if self.passed() {
            Ok(self)
        } else {
            Err(CliError::VerificationFailed(self.failures().join(", ")))
        }
    }
}

/// Runs the invariant suite.
pub fn cmd_verify(args: &VerifyArgs) -> VerifyOutcome {
    VerifyOutcome {
        checks: run_suite(args.seed, args.inject_fault),
    }
}
