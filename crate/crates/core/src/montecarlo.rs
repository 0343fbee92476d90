//! Shot-level sampling of detection events.
//!
//! Random numbers come from ChaCha8 seeded with the user seed; trial `t` runs
//! on ChaCha stream `t`, so every trial is reproducible on its own and trials
//! can be evaluated in any order. Multinomial draws are sequences of
//! conditional binomials, which keeps the cost independent of the photon
//! number.
//!
//! For which-way scoring each photon also gets an arm label. A real experiment
//! never observes it; the simulator draws it from the joint law
//! `P(port, analyzer, arm) = P(port, analyzer)·P(arm | analyzer)` with
//! `P(arm | analyzer) ∝ ½|⟨analyzer|ψ_arm⟩|²`. Marginalizing the arm gives
//! the four-outcome distribution; marginalizing the port gives the which-way
//! statistics behind the guessing likelihood.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::Serialize;

use crate::analytics::p_plus_slope;
use crate::elements::Mode;
use crate::error::{Error, Result};
use crate::interferometer::{
    run, which_way_guess, Analyzer, ArmStates, DetectionOutcome, MziConfig, OutcomeDistribution,
};
use crate::scalar::Scalar;
use crate::state::Path;

/// Tolerance on `Σp + loss = 1` for sampled distributions.
const NORMALIZATION_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ShotConfig {
    pub n_photons: u64,
    pub seed: u64,
    pub trials: u64,
}

impl ShotConfig {
    pub fn new(n_photons: u64, seed: u64, trials: u64) -> Self {
        Self {
            n_photons,
            seed,
            trials,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_photons == 0 {
            return Err(Error::ZeroCount("n_photons"));
        }
        if self.trials == 0 {
            return Err(Error::ZeroCount("trials"));
        }
        Ok(())
    }
}

/// Independent generator for trial `trial`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Multinomial draw of `n` items over `probs` (which must sum to 1).
pub fn multinomial<R: Rng + ?Sized>(rng: &mut R, n: u64, probs: &[f64]) -> Vec<u64> {
    let mut counts = vec![0; probs.len()];
    let mut left = n;
    let mut mass = 1.0;
    for (i, &p) in probs.iter().enumerate() {
        if left == 0 {
            break;
        }
        if i + 1 == probs.len() {
            counts[i] = left;
            break;
        }
        let q = if mass > 0.0 { (p / mass).clamp(0.0, 1.0) } else { 0.0 };
        let k = if q >= 1.0 {
            left
        } else if q <= 0.0 {
            0
        } else {
            Binomial::new(left, q).expect("probability in (0, 1)").sample(rng)
        };
        counts[i] = k;
        left -= k;
        mass -= p;
    }
    counts
}

fn checked_probs<T: Scalar>(dist: &OutcomeDistribution<T>) -> Result<[f64; 5]> {
    let mut p = [0.0; 5];
    for (slot, v) in p.iter_mut().zip(dist.as_array().into_iter().chain([dist.loss])) {
        let v = v.as_f64();
        if !v.is_finite() || !(-NORMALIZATION_TOL..=1.0 + NORMALIZATION_TOL).contains(&v) {
            return Err(Error::UnnormalizedDistribution(v));
        }
        *slot = v.max(0.0);
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::UnnormalizedDistribution(total));
    }
    Ok(p)
}

/// Outcome counts in [`DetectionOutcome::ALL`] order plus photons lost in the
/// elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OutcomeCounts {
    pub counts: [u64; 4],
    pub lost: u64,
}

/// Draws `n_photons` detection events from `dist` on stream 0 of the seed.
pub fn sample_outcomes<T: Scalar>(dist: &OutcomeDistribution<T>, shots: &ShotConfig) -> Result<OutcomeCounts> {
    shots.validate()?;
    let p = checked_probs(dist)?;
    let mut rng = trial_rng(shots.seed, 0);
    let c = multinomial(&mut rng, shots.n_photons, &p);
    Ok(OutcomeCounts {
        counts: [c[0], c[1], c[2], c[3]],
        lost: c[4],
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DetectedSign {
    Plus,
    Minus,
    Inconclusive,
}

/// One trial of `n_photons` photons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TrialSummary {
    /// Counts in [`DetectionOutcome::ALL`] order.
    pub counts: [u64; 4],
    pub correct_guesses: u64,
    pub wrong_guesses: u64,
    /// Estimated sign of the phase displacement (discrimination runs only).
    pub detected_sign: Option<DetectedSign>,
}

/// Probabilities over (outcome, arm) in [`DetectionOutcome::ALL`] order with
/// arm A before arm B.
fn joint_law<T: Scalar>(dist: &OutcomeDistribution<T>, arms: &ArmStates<T>) -> Result<[f64; 8]> {
    let p = checked_probs(dist)?;
    let ww = arms.which_way_joint();
    let mut out = [0.0; 8];
    for (i, ev) in DetectionOutcome::ALL.iter().enumerate() {
        let row = ww[match ev.analyzer {
            Analyzer::Plus45 => 0,
            Analyzer::Minus45 => 1,
        }];
        let (a, b) = (row[0].as_f64(), row[1].as_f64());
        let frac_a = if a + b > 0.0 { a / (a + b) } else { 0.5 };
        out[2 * i] = p[i] * frac_a;
        out[2 * i + 1] = p[i] * (1.0 - frac_a);
    }
    Ok(out)
}

fn draw_trial<R: Rng + ?Sized>(rng: &mut R, n: u64, law: &[f64; 8]) -> TrialSummary {
    let c = multinomial(rng, n, law);
    let mut counts = [0; 4];
    let mut correct = 0;
    for (i, ev) in DetectionOutcome::ALL.iter().enumerate() {
        let (on_a, on_b) = (c[2 * i], c[2 * i + 1]);
        counts[i] = on_a + on_b;
        correct += match which_way_guess(*ev) {
            Path::A => on_a,
            _ => on_b,
        };
    }
    TrialSummary {
        counts,
        correct_guesses: correct,
        wrong_guesses: n - correct,
        detected_sign: None,
    }
}

fn require_ideal<T: Scalar>(config: &MziConfig<T>) -> Result<()> {
    if config.mode != Mode::Ideal {
        return Err(Error::RequiresIdealMode);
    }
    Ok(())
}

/// Which-way guessing over `trials` independent trials.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WhichWaySummary {
    pub trials: Vec<TrialSummary>,
    pub correct_guesses: u64,
    pub wrong_guesses: u64,
    pub correct_fraction: f64,
    /// Likelihood predicted by the arm states.
    pub likelihood: f64,
}

pub fn which_way_experiment<T: Scalar>(config: &MziConfig<T>, shots: &ShotConfig) -> Result<WhichWaySummary> {
    require_ideal(config)?;
    shots.validate()?;
    let (dist, arms) = run(config)?;
    let law = joint_law(&dist, &arms)?;
    let (la, lb) = arms.guess_likelihoods();

    let trials: Vec<TrialSummary> = (0..shots.trials)
        .map(|t| draw_trial(&mut trial_rng(shots.seed, t), shots.n_photons, &law))
        .collect();
    let correct: u64 = trials.iter().map(|t| t.correct_guesses).sum();
    let wrong: u64 = trials.iter().map(|t| t.wrong_guesses).sum();
    Ok(WhichWaySummary {
        trials,
        correct_guesses: correct,
        wrong_guesses: wrong,
        correct_fraction: correct as f64 / (correct + wrong) as f64,
        likelihood: (0.5 * (la.as_f64() + lb.as_f64())).min(1.0),
    })
}

/// Aggregate of a phase-sign discrimination run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscriminationSummary {
    pub trials: Vec<TrialSummary>,
    /// True displacement sign per trial (+1 or −1).
    pub true_signs: Vec<i8>,
    pub successes: u64,
    pub inconclusive: u64,
    pub success_rate: f64,
    pub mean_wrong_paths: f64,
    pub operating_alpha: f64,
    pub delta_alpha: f64,
    /// P₊ at the operating point, the reference the counts are compared to.
    pub reference_p_plus: f64,
}

/// Hides a displacement `±δα` (sign drawn per trial) around `config.alpha`,
/// samples `n_photons` at the displaced point and estimates the sign from
/// `count₊ − n·P₊(α₀)` and the sign of the fringe slope.
pub fn phase_discrimination<T: Scalar>(
    config: &MziConfig<T>,
    delta_alpha: T,
    shots: &ShotConfig,
) -> Result<DiscriminationSummary> {
    require_ideal(config)?;
    shots.validate()?;
    if !delta_alpha.is_finite() {
        return Err(Error::NonFinite("delta_alpha"));
    }
    let slope = p_plus_slope(config.l, config.c1, config.c2, config.alpha).as_f64();
    if slope.abs() <= 1e-12 {
        return Err(Error::ZeroSlope);
    }
    let (reference, _) = run(config)?;
    let reference_p_plus = reference.p_plus().as_f64();
    let expected = shots.n_photons as f64 * reference_p_plus;

    let laws = [
        displaced_law(config, config.alpha + delta_alpha)?,
        displaced_law(config, config.alpha - delta_alpha)?,
    ];

    let mut trials = Vec::with_capacity(shots.trials as usize);
    let mut true_signs = Vec::with_capacity(shots.trials as usize);
    let mut successes = 0;
    let mut inconclusive = 0;
    for t in 0..shots.trials {
        let mut rng = trial_rng(shots.seed, t);
        let positive = rng.random_bool(0.5);
        let law = if positive { &laws[0] } else { &laws[1] };
        let mut trial = draw_trial(&mut rng, shots.n_photons, law);

        let diff = (trial.counts[0] + trial.counts[1]) as f64 - expected;
        let sign = if diff == 0.0 {
            DetectedSign::Inconclusive
        } else if (diff > 0.0) == (slope > 0.0) {
            DetectedSign::Plus
        } else {
            DetectedSign::Minus
        };
        trial.detected_sign = Some(sign);
        match (sign, positive) {
            (DetectedSign::Plus, true) | (DetectedSign::Minus, false) => successes += 1,
            (DetectedSign::Inconclusive, _) => inconclusive += 1,
            _ => {}
        }
        true_signs.push(if positive { 1 } else { -1 });
        trials.push(trial);
    }

    let wrong: u64 = trials.iter().map(|t| t.wrong_guesses).sum();
    Ok(DiscriminationSummary {
        success_rate: successes as f64 / shots.trials as f64,
        mean_wrong_paths: wrong as f64 / shots.trials as f64,
        trials,
        true_signs,
        successes,
        inconclusive,
        operating_alpha: config.alpha.as_f64(),
        delta_alpha: delta_alpha.as_f64(),
        reference_p_plus,
    })
}

fn displaced_law<T: Scalar>(config: &MziConfig<T>, alpha: T) -> Result<[f64; 8]> {
    let (dist, arms) = run(&config.with_alpha(alpha))?;
    joint_law(&dist, &arms)
}
