//! Closed-form interferometry figures.
//!
//! Two families live here. The translational-internal entangled (TIE) state
//! `c1·e^{ik1x}|1⟩ + c2·e^{ik2x}|2⟩` gives the general fringe, slope and
//! distinguishability as functions of the arm-length difference `L`. The
//! photon analog follows from the substitution `k1·L → (l−1)α`,
//! `k2·L → (l+1)α`, with |1⟩ ↔ |l⟩⊗|R⟩ and |2⟩ ↔ |l⟩⊗|L⟩.
//!
//! Photon budgets use a unit signal-to-noise criterion: the mean count shift
//! `n·|ΔP₊|` produced by the phase displacement equals one binomial standard
//! deviation `√(n·P₊(1 − P₊))`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interferometer::check_normalized;
use crate::scalar::{Bounded, ComplexAmp, Scalar};

/// Label attached to every budget report.
pub const BUDGET_CRITERION: &str = "unit-SNR";

/// Slopes at or below this magnitude are treated as a fringe extremum.
const ZERO_SLOPE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TieState<T> {
    pub k1: T,
    pub k2: T,
    pub c1: ComplexAmp<T>,
    pub c2: ComplexAmp<T>,
}

impl<T: Scalar> TieState<T> {
    pub fn new(k1: T, k2: T, c1: ComplexAmp<T>, c2: ComplexAmp<T>) -> Result<Self> {
        check_normalized(c1, c2)?;
        Ok(Self { k1, k2, c1, c2 })
    }

    /// Photon analog for topological charge `l`, with α playing the role of `L`.
    pub fn photon_analog(l: i32, c1: ComplexAmp<T>, c2: ComplexAmp<T>) -> Result<Self> {
        let l = T::lit(f64::from(l));
        Self::new(l - T::one(), l + T::one(), c1, c2)
    }

    fn weights(&self) -> (T, T) {
        (self.c1.norm_sqr(), self.c2.norm_sqr())
    }
}

fn unit_clamp<T: Scalar>(v: T) -> T {
    v.max(T::zero()).min(T::one())
}

/// `½ + [|c1|²cos(k1 L) + |c2|²cos(k2 L)]/2`.
pub fn tie_p_plus<T: Scalar>(s: &TieState<T>, length: T) -> T {
    let (w1, w2) = s.weights();
    let half = T::lit(0.5);
    unit_clamp(half + (w1 * (s.k1 * length).cos() + w2 * (s.k2 * length).cos()) * half)
}

/// `(2/k_max)·|dP₊/dL|` with `k_max = max(|k1|, |k2|)`.
pub fn tie_sensitivity<T: Scalar>(s: &TieState<T>, length: T) -> Result<T> {
    let k_max = s.k1.abs().max(s.k2.abs());
    if k_max == T::zero() {
        return Err(Error::NoFringeScale);
    }
    let (w1, w2) = s.weights();
    // dP₊/dL = −[|c1|²k1 sin(k1 L) + |c2|²k2 sin(k2 L)]/2
    let slope = w1 * s.k1 * (s.k1 * length).sin() + w2 * s.k2 * (s.k2 * length).sin();
    Ok(unit_clamp(slope.abs() / k_max))
}

/// `2|c1 c2 sin((k2 − k1)L/2)|`.
pub fn tie_distinguishability<T: Scalar>(s: &TieState<T>, length: T) -> T {
    let two = T::lit(2.0);
    unit_clamp(two * (s.c1.norm() * s.c2.norm() * ((s.k2 - s.k1) * length / two).sin()).abs())
}

/// Detection probability, sensitivity, distinguishability and which-way
/// likelihood of a photon at rotation α.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhotonFigures<T> {
    pub p_plus: T,
    pub sensitivity: T,
    pub distinguishability: T,
    pub likelihood: T,
}

/// Closed forms for a photon of charge `l` with input `c1|R⟩ + c2|L⟩`.
///
/// S is normalized by `k_max = |l| + 1`, the larger of |l − 1| and |l + 1|.
pub fn photon_formulas<T: Scalar>(l: i32, c1: ComplexAmp<T>, c2: ComplexAmp<T>, alpha: T) -> Result<PhotonFigures<T>> {
    check_normalized(c1, c2)?;
    let (w1, w2) = (c1.norm_sqr(), c2.norm_sqr());
    let lf = T::lit(f64::from(l));
    let (lm, lp) = (lf - T::one(), lf + T::one());
    let half = T::lit(0.5);
    let k_max = lf.abs() + T::one();

    // clamps only absorb last-bit rounding at the ends of the ranges
    let p_plus = unit_clamp(half + (w1 * (lm * alpha).cos() + w2 * (lp * alpha).cos()) * half);
    let sensitivity =
        unit_clamp((w1 * (lm / k_max) * (lm * alpha).sin() + w2 * (lp / k_max) * (lp * alpha).sin()).abs());
    let distinguishability = unit_clamp(T::lit(2.0) * (c1.norm() * c2.norm() * alpha.sin()).abs());
    let likelihood = (distinguishability + T::one()) * half;
    Ok(PhotonFigures {
        p_plus,
        sensitivity,
        distinguishability,
        likelihood,
    })
}

/// `dP₊/dα` for a photon of charge `l`.
pub fn p_plus_slope<T: Scalar>(l: i32, c1: ComplexAmp<T>, c2: ComplexAmp<T>, alpha: T) -> T {
    let lf = T::lit(f64::from(l));
    let (lm, lp) = (lf - T::one(), lf + T::one());
    -(c1.norm_sqr() * lm * (lm * alpha).sin() + c2.norm_sqr() * lp * (lp * alpha).sin()) * T::lit(0.5)
}

/// Wavenumber ratio κ = k2/k1 = (l + 1)/(l − 1); unbounded at l = 1.
pub fn correspondence<T: Scalar>(l: i32) -> Bounded<T> {
    if l == 1 {
        return Bounded::Unbounded;
    }
    Bounded::Finite(T::lit(f64::from(l + 1)) / T::lit(f64::from(l - 1)))
}

/// A point on the standard duality frontier.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DualityPoint<T> {
    pub distinguishability: T,
    pub visibility: T,
}

impl<T: Scalar> DualityPoint<T> {
    /// `V = √(1 − D²)`, saturating `D² + V² ≤ 1`.
    pub fn saturated(distinguishability: T) -> Result<Self> {
        if !(distinguishability >= T::zero() && distinguishability <= T::one()) {
            return Err(Error::InvalidDistinguishability(distinguishability.as_f64()));
        }
        let d = distinguishability;
        Ok(Self {
            distinguishability: d,
            visibility: (T::one() - d * d).max(T::zero()).sqrt(),
        })
    }
}

/// Photon count needed to detect a phase shift, and how many of those photons
/// get their path guessed wrong.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BudgetReport<T> {
    pub n_photons: Bounded<T>,
    pub expected_wrong: Bounded<T>,
    pub operating_alpha: T,
    /// The detected shift, `(l + 1)·δα` for photons.
    pub phase_shift: T,
    pub criterion: &'static str,
}

fn unit_snr_count<T: Scalar>(p: T, slope: T, shift: T) -> Bounded<T> {
    let signal = slope * shift;
    if slope.abs() <= T::lit(ZERO_SLOPE) || signal == T::zero() {
        Bounded::Unbounded
    } else {
        Bounded::Finite(p * (T::one() - p) / (signal * signal))
    }
}

fn check_shift<T: Scalar>(phase_shift: T) -> Result<()> {
    if phase_shift <= T::zero() || !phase_shift.is_finite() {
        return Err(Error::NonPositivePhaseShift(phase_shift.as_f64()));
    }
    Ok(())
}

/// Budget of a conventional interferometer saturating `D² + V² = 1`.
///
/// The fringe `½(1 + V cos φ)` is read at its steepest point φ = π/2, where
/// P = ½ and the slope is V/2; each photon is mis-guessed with probability
/// (1 − D)/2.
pub fn standard_bound_comparator<T: Scalar>(distinguishability: T, phase_shift: T) -> Result<BudgetReport<T>> {
    check_shift(phase_shift)?;
    let point = DualityPoint::saturated(distinguishability)?;
    let half = T::lit(0.5);
    let n = unit_snr_count(half, point.visibility * half, phase_shift);
    let wrong_rate = (T::one() - distinguishability) * half;
    Ok(BudgetReport {
        n_photons: n,
        expected_wrong: n.map(|n| n * wrong_rate),
        operating_alpha: T::FRAC_PI_2(),
        phase_shift,
        criterion: BUDGET_CRITERION,
    })
}

/// Distinguishability at which the standard bound needs exactly `n_photons`
/// to detect `phase_shift`: `D = √(1 − 1/(n·φ²))`.
pub fn comparator_distinguishability_for<T: Scalar>(n_photons: T, phase_shift: T) -> Result<T> {
    check_shift(phase_shift)?;
    let v2 = T::one() / (n_photons * phase_shift * phase_shift);
    if !(v2 > T::zero() && v2 <= T::one()) {
        return Err(Error::InvalidDistinguishability(v2.as_f64()));
    }
    Ok((T::one() - v2).sqrt())
}

/// Photon budget of the OAM interferometer at `operating_alpha`.
///
/// `phase_shift = (|l| + 1)·δα` fixes the rotation step δα. The count uses the
/// slope and P₊ at the operating point; wrong paths use the likelihood at the
/// displaced point α₀ + δα.
pub fn photon_budget<T: Scalar>(
    l: i32,
    c1: ComplexAmp<T>,
    c2: ComplexAmp<T>,
    operating_alpha: T,
    phase_shift: T,
) -> Result<BudgetReport<T>> {
    check_shift(phase_shift)?;
    let k_max = T::lit(f64::from(l.abs() + 1));
    let delta = phase_shift / k_max;
    let at = photon_formulas(l, c1, c2, operating_alpha)?;
    let shifted = photon_formulas(l, c1, c2, operating_alpha + delta)?;
    let slope = p_plus_slope(l, c1, c2, operating_alpha);
    let n = unit_snr_count(at.p_plus, slope, delta);
    let wrong_rate = T::one() - shifted.likelihood;
    Ok(BudgetReport {
        n_photons: n,
        expected_wrong: n.map(|n| n * wrong_rate),
        operating_alpha,
        phase_shift,
        criterion: BUDGET_CRITERION,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    const TOL: f64 = 1e-12;

    fn bal() -> (ComplexAmp<f64>, ComplexAmp<f64>) {
        (c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0))
    }

    fn tie_3to1() -> TieState<f64> {
        let (c1, c2) = bal();
        TieState::new(1.0, 3.0, c1, c2).unwrap()
    }

    #[test]
    fn tie_detection_probability() {
        let s = tie_3to1();
        assert_abs_diff_eq!(tie_p_plus(&s, 0.0), 1.0, epsilon = TOL);
        assert_abs_diff_eq!(tie_p_plus(&s, FRAC_PI_2), 0.5, epsilon = TOL);
        assert_abs_diff_eq!(tie_p_plus(&s, PI), 0.0, epsilon = TOL);
    }

    #[test]
    fn tie_sensitivity_examples() {
        let s = tie_3to1();
        assert_abs_diff_eq!(tie_sensitivity(&s, 0.0).unwrap(), 0.0, epsilon = TOL);
        assert_abs_diff_eq!(tie_sensitivity(&s, FRAC_PI_2).unwrap(), 1.0 / 3.0, epsilon = TOL);

        let single = TieState::new(2.0, 0.5, c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        for len in [0.1_f64, 0.9, 2.2] {
            assert_abs_diff_eq!(
                tie_sensitivity(&single, len).unwrap(),
                (2.0 * len).sin().abs(),
                epsilon = TOL
            );
        }

        let flat = TieState::new(0.0, 0.0, c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(tie_sensitivity(&flat, 1.0).unwrap_err(), Error::NoFringeScale);
    }

    #[test]
    fn tie_distinguishability_examples() {
        let s = tie_3to1();
        assert_abs_diff_eq!(tie_distinguishability(&s, 0.0), 0.0, epsilon = TOL);
        assert_abs_diff_eq!(tie_distinguishability(&s, FRAC_PI_2), 1.0, epsilon = TOL);
        let single = TieState::new(1.0, 3.0, c(0.0, 1.0), c(0.0, 0.0)).unwrap();
        assert_eq!(tie_distinguishability(&single, 0.77), 0.0);
    }

    #[test]
    fn photon_l0_sensitivity_equals_distinguishability() {
        let (c1, c2) = bal();
        for alpha in [0.0, 0.3, 1.0, 2.5, 4.0, 6.0] {
            let f = photon_formulas(0, c1, c2, alpha).unwrap();
            assert_abs_diff_eq!(f.sensitivity, alpha.sin().abs(), epsilon = TOL);
            assert_abs_diff_eq!(f.distinguishability, alpha.sin().abs(), epsilon = TOL);
        }
    }

    #[test]
    fn photon_operating_point() {
        let (c1, c2) = bal();
        let f = photon_formulas(2, c1, c2, FRAC_PI_2).unwrap();
        assert_abs_diff_eq!(f.p_plus, 0.5, epsilon = TOL);
        assert_abs_diff_eq!(f.sensitivity, 1.0 / 3.0, epsilon = TOL);
        assert_abs_diff_eq!(f.distinguishability, 1.0, epsilon = TOL);
        assert_abs_diff_eq!(f.likelihood, 1.0, epsilon = TOL);
    }

    #[test]
    fn photon_at_zero_rotation() {
        for l in 0..6 {
            let f = photon_formulas(l, c(0.6, 0.0), c(0.0, 0.8), 0.0).unwrap();
            assert_eq!(
                (f.p_plus, f.sensitivity, f.distinguishability, f.likelihood),
                (1.0, 0.0, 0.0, 0.5)
            );
        }
    }

    #[test]
    fn correspondence_list() {
        let got: Vec<Bounded<f64>> = [0, 3, 2, 1].iter().map(|&l| correspondence(l)).collect();
        assert_eq!(
            got,
            vec![
                Bounded::Finite(-1.0),
                Bounded::Finite(2.0),
                Bounded::Finite(3.0),
                Bounded::Unbounded
            ]
        );
    }

    #[test]
    fn comparator_examples() {
        let r = standard_bound_comparator(0.0, 1e-2).unwrap();
        assert_abs_diff_eq!(r.n_photons.finite().unwrap(), 1.0e4, epsilon = 1e-6);
        assert_abs_diff_eq!(r.expected_wrong.finite().unwrap(), 5.0e3, epsilon = 1e-6);

        let r = standard_bound_comparator(0.9007_f64, 1e-2).unwrap();
        let n = r.n_photons.finite().unwrap();
        let w = r.expected_wrong.finite().unwrap();
        assert!((n - 5.3e4).abs() < 0.01e4, "n = {n}");
        assert!((w - 2.6e3).abs() < 0.05e3, "wrong = {w}");

        let r = standard_bound_comparator(1.0, 1e-2).unwrap();
        assert!(r.n_photons.is_unbounded() && r.expected_wrong.is_unbounded());

        assert!(standard_bound_comparator(0.5, 0.0).is_err());
        assert!(standard_bound_comparator(1.5, 1e-2).is_err());
    }

    #[test]
    fn inverted_comparator_distinguishability() {
        let d = comparator_distinguishability_for(5.3e4, 1e-2).unwrap();
        assert_abs_diff_eq!(d, 0.9007, epsilon = 1e-4);
    }

    #[test]
    fn budget_l2_operating_point() {
        let (c1, c2) = bal();
        let r = photon_budget(2, c1, c2, FRAC_PI_2, 1e-2).unwrap();
        let n = r.n_photons.finite().unwrap();
        // P₊ = ½, slope ½, δα = 1e-2/3 ⇒ n = 0.25/(δα/2)² = 9·10⁴
        assert_abs_diff_eq!(n, 9.0e4, epsilon = 1e-6);
        let w = r.expected_wrong.finite().unwrap();
        assert_abs_diff_eq!(w, n * (1.0 - (1e-2f64 / 3.0).cos()) / 2.0, epsilon = 1e-9);
        assert!(w < 1.0);
        assert_eq!(r.criterion, "unit-SNR");
    }

    #[test]
    fn budget_l0_and_extremum() {
        let (c1, c2) = bal();
        let r = photon_budget(0, c1, c2, FRAC_PI_2, 1e-2).unwrap();
        assert_abs_diff_eq!(r.n_photons.finite().unwrap(), 1.0e4, epsilon = 1e-6);
        assert_abs_diff_eq!(r.expected_wrong.finite().unwrap(), 0.25, epsilon = 1e-4);

        let r = photon_budget(2, c1, c2, 0.0, 1e-2).unwrap();
        assert!(r.n_photons.is_unbounded());
        assert!(r.expected_wrong.is_unbounded());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn photon_matches_tie_substitution(
            l in 0i32..12,
            theta in 0.0f64..FRAC_PI_2,
            phase in -PI..PI,
            alpha in -7.0f64..7.0,
        ) {
            let c1 = c(theta.cos(), 0.0);
            let c2 = c(theta.sin() * phase.cos(), theta.sin() * phase.sin());
            let f = photon_formulas(l, c1, c2, alpha).unwrap();
            let tie = TieState::photon_analog(l, c1, c2).unwrap();
            prop_assert!((f.p_plus - tie_p_plus(&tie, alpha)).abs() <= 1e-15);
            prop_assert!((f.sensitivity - tie_sensitivity(&tie, alpha).unwrap()).abs() <= 1e-15);
            prop_assert!((f.distinguishability - tie_distinguishability(&tie, alpha)).abs() <= 1e-15);
        }

        #[test]
        fn figures_stay_in_range(
            l in 0i32..12,
            theta in 0.0f64..FRAC_PI_2,
            alpha in -7.0f64..7.0,
        ) {
            let f = photon_formulas(l, c(theta.cos(), 0.0), c(0.0, theta.sin()), alpha).unwrap();
            prop_assert!((0.0..=1.0 + TOL).contains(&f.distinguishability));
            prop_assert!((0.0..=1.0 + TOL).contains(&f.sensitivity));
            prop_assert!((0.5..=1.0 + TOL).contains(&f.likelihood));
            prop_assert!((2.0 * f.likelihood - 1.0 - f.distinguishability).abs() <= 1e-15);
        }

        #[test]
        fn comparator_saturates_duality(d in 0.0f64..1.0) {
            let p = DualityPoint::saturated(d).unwrap();
            prop_assert!((p.distinguishability.powi(2) + p.visibility.powi(2) - 1.0).abs() <= TOL);
        }
    }
}
