//! The full Mach-Zehnder pipeline: BS1, rotated joint elements at ±α/4 in the
//! two arms, BS2, and ±45° polarization-resolved detection at both ports.
//!
//! The arm-length difference is zero; the interferometric phase comes only from
//! the element rotations. Each arm keeps the OAM phase `exp(±ilα/2)` picked up
//! by the Dove flip. Without it the port probabilities would not oscillate
//! with the (l ∓ 1)α pattern.

use num_complex::Complex;
use serde::Serialize;

use crate::elements::{
    beamsplitter_combine, beamsplitter_split, hwp_rotated, joint_apply, mirror_apply, mirror_operator, ElementParams,
    Mode, Port,
};
use crate::error::{Error, Result};
use crate::scalar::{cis, ComplexAmp, Scalar};
use crate::state::{ModeLabel, Path, PhotonState, PolVector, MAX_OAM};

/// Interferometer configuration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MziConfig<T> {
    /// Topological charge of the input beam.
    pub l: i32,
    /// Amplitude of |R⟩ in the input polarization.
    pub c1: ComplexAmp<T>,
    /// Amplitude of |L⟩ in the input polarization.
    pub c2: ComplexAmp<T>,
    /// Total interferometric rotation; arm A turns by +α/4, arm B by −α/4.
    pub alpha: T,
    pub element: ElementParams<T>,
    pub mode: Mode,
    /// Inserts an idealized plane mirror after the element in each arm.
    pub mirrors: bool,
}

impl<T: Scalar> MziConfig<T> {
    /// Ideal-mode configuration without mirrors.
    pub fn new(l: i32, c1: ComplexAmp<T>, c2: ComplexAmp<T>, alpha: T) -> Self {
        Self {
            l,
            c1,
            c2,
            alpha,
            element: ElementParams::ideal(),
            mode: Mode::Ideal,
            mirrors: false,
        }
    }

    /// c1 = c2 = 1/√2, i.e. |x⟩ input.
    pub fn balanced(l: i32, alpha: T) -> Self {
        let h = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
        Self::new(l, h, h, alpha)
    }

    pub fn with_alpha(&self, alpha: T) -> Self {
        Self { alpha, ..*self }
    }

    pub fn input_polarization(&self) -> PolVector<T> {
        PolVector::from_circular(self.c1, self.c2)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.alpha.is_finite() {
            return Err(Error::NonFinite("alpha"));
        }
        if self.l.abs() > MAX_OAM {
            return Err(Error::OamOutOfRange(self.l));
        }
        check_normalized(self.c1, self.c2)?;
        if self.mode == Mode::Exact {
            self.element.validate()?;
        }
        Ok(())
    }
}

pub(crate) fn check_normalized<T: Scalar>(c1: ComplexAmp<T>, c2: ComplexAmp<T>) -> Result<()> {
    let total = c1.norm_sqr() + c2.norm_sqr();
    if !total.is_finite() {
        return Err(Error::NonFinite("input amplitudes"));
    }
    if (total - T::one()).abs() > T::exact_tol() {
        return Err(Error::NotNormalized(total.as_f64()));
    }
    Ok(())
}

/// Polarization analyzer in front of each detector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Analyzer {
    Plus45,
    Minus45,
}

/// One of the four detection events.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DetectionOutcome {
    pub port: Port,
    pub analyzer: Analyzer,
}

impl DetectionOutcome {
    /// Fixed order used for arrays of outcomes: (+,+45), (+,−45), (−,+45), (−,−45).
    pub const ALL: [DetectionOutcome; 4] = [
        DetectionOutcome {
            port: Port::Plus,
            analyzer: Analyzer::Plus45,
        },
        DetectionOutcome {
            port: Port::Plus,
            analyzer: Analyzer::Minus45,
        },
        DetectionOutcome {
            port: Port::Minus,
            analyzer: Analyzer::Plus45,
        },
        DetectionOutcome {
            port: Port::Minus,
            analyzer: Analyzer::Minus45,
        },
    ];
}

/// Guessing rule: +45 means arm A, −45 means arm B, whichever port fired.
pub fn which_way_guess(event: DetectionOutcome) -> Path {
    match event.analyzer {
        Analyzer::Plus45 => Path::A,
        Analyzer::Minus45 => Path::B,
    }
}

/// Probabilities of the four detection events. In exact mode the photons
/// removed by the element show up in `loss`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct OutcomeDistribution<T> {
    pub p_plus_p45: T,
    pub p_plus_m45: T,
    pub p_minus_p45: T,
    pub p_minus_m45: T,
    pub loss: T,
}

impl<T: Scalar> OutcomeDistribution<T> {
    /// Probabilities in [`DetectionOutcome::ALL`] order.
    pub fn as_array(&self) -> [T; 4] {
        [self.p_plus_p45, self.p_plus_m45, self.p_minus_p45, self.p_minus_m45]
    }

    pub fn probability(&self, event: DetectionOutcome) -> T {
        match (event.port, event.analyzer) {
            (Port::Plus, Analyzer::Plus45) => self.p_plus_p45,
            (Port::Plus, Analyzer::Minus45) => self.p_plus_m45,
            (Port::Minus, Analyzer::Plus45) => self.p_minus_p45,
            (Port::Minus, Analyzer::Minus45) => self.p_minus_m45,
        }
    }

    pub fn detected(&self) -> T {
        self.as_array().iter().fold(T::zero(), |a, &p| a + p)
    }

    pub fn p_plus(&self) -> T {
        self.p_plus_p45 + self.p_plus_m45
    }

    pub fn p_minus(&self) -> T {
        self.p_minus_p45 + self.p_minus_m45
    }
}

/// Polarization in each arm just before BS2, together with the arm-common OAM
/// phase from the Dove flip. The arm amplitude is `phase·ψ/√2` on label −l.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArmStates<T> {
    pub psi_a: PolVector<T>,
    pub psi_b: PolVector<T>,
    pub phase_a: ComplexAmp<T>,
    pub phase_b: ComplexAmp<T>,
}

impl<T: Scalar> ArmStates<T> {
    /// ½|⟨pol|ψ_arm⟩|², indexed `[analyzer][arm]` with analyzers (+45, −45)
    /// and arms (A, B). This is the which-way marginal: summing over arms
    /// gives the analyzer marginal of the four-outcome distribution.
    pub fn which_way_joint(&self) -> [[T; 2]; 2] {
        let half = T::lit(0.5);
        let p = PolVector::plus45();
        let m = PolVector::minus45();
        [
            [
                half * p.inner(&self.psi_a).norm_sqr(),
                half * p.inner(&self.psi_b).norm_sqr(),
            ],
            [
                half * m.inner(&self.psi_a).norm_sqr(),
                half * m.inner(&self.psi_b).norm_sqr(),
            ],
        ]
    }

    /// (|⟨+45|ψ_A⟩|², |⟨−45|ψ_B⟩|²).
    pub fn guess_likelihoods(&self) -> (T, T) {
        (
            PolVector::plus45().inner(&self.psi_a).norm_sqr(),
            PolVector::minus45().inner(&self.psi_b).norm_sqr(),
        )
    }
}

/// Simulates one photon through the interferometer.
pub fn run<T: Scalar>(config: &MziConfig<T>) -> Result<(OutcomeDistribution<T>, ArmStates<T>)> {
    config.validate()?;
    let input = PhotonState::single(Path::Single, config.l, config.input_polarization())?;
    let (arm_a, arm_b) = beamsplitter_split(&input);

    let quarter = config.alpha * T::lit(0.25);
    let mut arm_a = joint_apply(quarter, &config.element, &arm_a, config.mode)?;
    let mut arm_b = joint_apply(-quarter, &config.element, &arm_b, config.mode)?;

    let l = T::lit(f64::from(config.l));
    let half_alpha = config.alpha * T::lit(0.5);
    let phase_a = cis(l * half_alpha);
    let phase_b = cis(-l * half_alpha);
    let arms = ArmStates {
        psi_a: arm_polarization(&arm_a, Path::A, config.l, phase_a),
        psi_b: arm_polarization(&arm_b, Path::B, config.l, phase_b),
        phase_a,
        phase_b,
    };

    let mut plus45 = PolVector::plus45();
    let mut minus45 = PolVector::minus45();
    if config.mirrors {
        arm_a = mirror_apply(&arm_a)?;
        arm_b = mirror_apply(&arm_b)?;
        // analyzers are aligned with the reflected beam's transverse axes
        let m = mirror_operator::<T>();
        plus45 = m.apply(&plus45);
        minus45 = m.apply(&minus45);
    }

    let out_plus = beamsplitter_combine(&arm_a, &arm_b, Port::Plus);
    let out_minus = beamsplitter_combine(&arm_a, &arm_b, Port::Minus);
    let p_plus_p45 = out_plus.projection_probability(&plus45);
    let p_plus_m45 = out_plus.projection_probability(&minus45);
    let p_minus_p45 = out_minus.projection_probability(&plus45);
    let p_minus_m45 = out_minus.projection_probability(&minus45);
    let loss = match config.mode {
        Mode::Ideal => T::zero(),
        Mode::Exact => T::one() - (p_plus_p45 + p_plus_m45 + p_minus_p45 + p_minus_m45),
    };

    Ok((
        OutcomeDistribution {
            p_plus_p45,
            p_plus_m45,
            p_minus_p45,
            p_minus_m45,
            loss,
        },
        arms,
    ))
}

fn arm_polarization<T: Scalar>(arm: &PhotonState<T>, path: Path, l: i32, phase: ComplexAmp<T>) -> PolVector<T> {
    let v = arm
        .get(&ModeLabel::new(path, -l))
        .copied()
        .unwrap_or_else(PolVector::zero);
    // undo the BS1 amplitude 1/√2 and the OAM phase
    v.scale(phase.conj() * Complex::new(T::SQRT_2(), T::zero()))
}

/// Per-arm polarization written directly as `P_HW(±α/4)ψ` (ideal element).
pub fn ideal_arm_polarizations<T: Scalar>(config: &MziConfig<T>) -> (PolVector<T>, PolVector<T>) {
    let psi = config.input_polarization();
    let quarter = config.alpha * T::lit(0.25);
    (hwp_rotated(quarter).apply(&psi), hwp_rotated(-quarter).apply(&psi))
}

/// Total probability at port (+), irrespective of polarization.
pub fn p_plus<T: Scalar>(config: &MziConfig<T>) -> Result<T> {
    Ok(run(config)?.0.p_plus())
}

/// Probability that the ±45 guessing rule names the right arm, averaged over
/// the two equally likely arms: ½(|⟨+45|ψ_A⟩|² + |⟨−45|ψ_B⟩|²). The two terms
/// coincide whenever c1·c2* is real.
pub fn likelihood<T: Scalar>(config: &MziConfig<T>) -> Result<T> {
    if config.mode != Mode::Ideal {
        return Err(Error::RequiresIdealMode);
    }
    let (_, arms) = run(config)?;
    let (la, lb) = arms.guess_likelihoods();
    Ok(((la + lb) * T::lit(0.5)).min(T::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elements::PrismGeometry;
    use crate::scalar::c;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_6, PI};

    const TOL: f64 = 1e-12;

    #[test]
    fn zero_rotation_sends_everything_to_plus() {
        for l in [0, 1, 2, 5] {
            let cfg = MziConfig::new(l, c(0.6, 0.0), c(0.0, 0.8), 0.0);
            let (d, arms) = run(&cfg).unwrap();
            assert_abs_diff_eq!(d.p_plus(), 1.0, epsilon = TOL);
            assert_abs_diff_eq!(d.p_minus(), 0.0, epsilon = TOL);
            // identical arms, both carrying P_HW(0)ψ (a y-flip of the input)
            let psi = hwp_rotated(0.0).apply(&cfg.input_polarization());
            assert_abs_diff_eq!(d.p_plus_p45, PolVector::plus45().inner(&psi).norm_sqr(), epsilon = TOL);
            assert!(arms.psi_a.distance(&arms.psi_b) <= TOL);
            assert!(arms.psi_a.distance(&psi) <= TOL);
        }
    }

    #[test]
    fn operating_point_l2() {
        let (d, arms) = run(&MziConfig::balanced(2, FRAC_PI_2)).unwrap();
        for p in d.as_array() {
            assert_abs_diff_eq!(p, 0.25, epsilon = TOL);
        }
        assert!(arms.psi_a.distance(&PolVector::plus45()) <= TOL);
        assert!(arms.psi_b.distance(&PolVector::minus45()) <= TOL);
    }

    #[test]
    fn l0_at_pi_is_dark_at_plus() {
        let (d, _) = run(&MziConfig::balanced(0, PI)).unwrap();
        assert_abs_diff_eq!(d.p_plus(), 0.0, epsilon = TOL);
        assert_abs_diff_eq!(d.p_minus(), 1.0, epsilon = TOL);
    }

    #[test]
    fn p_plus_examples() {
        for alpha in [0.0, 0.4, 1.3, 2.9, -1.0] {
            let p = p_plus(&MziConfig::balanced(0, alpha)).unwrap();
            assert_abs_diff_eq!(p, (1.0 + f64::cos(alpha)) / 2.0, epsilon = TOL);
        }
        assert_abs_diff_eq!(p_plus(&MziConfig::balanced(2, FRAC_PI_2)).unwrap(), 0.5, epsilon = TOL);
    }

    #[test]
    fn guessing_rule() {
        let ev = |port, analyzer| DetectionOutcome { port, analyzer };
        assert_eq!(which_way_guess(ev(Port::Plus, Analyzer::Plus45)), Path::A);
        assert_eq!(which_way_guess(ev(Port::Minus, Analyzer::Plus45)), Path::A);
        assert_eq!(which_way_guess(ev(Port::Minus, Analyzer::Minus45)), Path::B);
        assert_eq!(which_way_guess(ev(Port::Plus, Analyzer::Minus45)), Path::B);
    }

    #[test]
    fn likelihood_examples() {
        assert_abs_diff_eq!(likelihood(&MziConfig::balanced(2, 0.0)).unwrap(), 0.5, epsilon = TOL);
        assert_abs_diff_eq!(
            likelihood(&MziConfig::balanced(2, FRAC_PI_2)).unwrap(),
            1.0,
            epsilon = TOL
        );
        assert_abs_diff_eq!(
            likelihood(&MziConfig::balanced(3, FRAC_PI_6)).unwrap(),
            0.75,
            epsilon = TOL
        );
        let (_, arms) = run(&MziConfig::balanced(1, 0.8)).unwrap();
        let (la, lb) = arms.guess_likelihoods();
        assert_abs_diff_eq!(la, lb, epsilon = TOL);
    }

    #[test]
    fn likelihood_requires_ideal_mode() {
        let mut cfg = MziConfig::balanced(2, 0.3);
        cfg.mode = Mode::Exact;
        assert_eq!(likelihood(&cfg).unwrap_err(), Error::RequiresIdealMode);
    }

    #[test]
    fn arm_states_match_direct_formula() {
        let cfg = MziConfig::new(3, c(0.0, 0.6), c(0.8, 0.0), 1.1);
        let (_, arms) = run(&cfg).unwrap();
        let (a, b) = ideal_arm_polarizations(&cfg);
        assert!(arms.psi_a.distance(&a) <= TOL);
        assert!(arms.psi_b.distance(&b) <= TOL);
        assert_abs_diff_eq!(arms.phase_a.arg(), 1.65, epsilon = TOL);
    }

    #[test]
    fn unnormalized_input_rejected() {
        let cfg = MziConfig::new(1, c(1.0, 0.0), c(1.0, 0.0), 0.3);
        assert!(matches!(run(&cfg).unwrap_err(), Error::NotNormalized(_)));
        let cfg = MziConfig::balanced(1, f64::NAN);
        assert_eq!(run(&cfg).unwrap_err(), Error::NonFinite("alpha"));
    }

    #[test]
    fn mirrors_leave_outcomes_unchanged() {
        let mut cfg = MziConfig::new(2, c(0.6, 0.0), c(0.0, 0.8), 0.77);
        let (d0, _) = run(&cfg).unwrap();
        cfg.mirrors = true;
        let (d1, _) = run(&cfg).unwrap();
        for (p, q) in d0.as_array().iter().zip(d1.as_array()) {
            assert_abs_diff_eq!(*p, q, epsilon = TOL);
        }
    }

    #[test]
    fn exact_mode_reports_loss() {
        let mut cfg = MziConfig::balanced(2, FRAC_PI_2);
        cfg.mode = Mode::Exact;
        cfg.element = ElementParams::from_prism(&PrismGeometry::default()).unwrap();
        let (d, _) = run(&cfg).unwrap();
        assert!(d.loss > 0.0);
        assert_abs_diff_eq!(d.detected() + d.loss, 1.0, epsilon = TOL);
        // the a·I leak pulls the ±45 split away from the ideal 1/4
        assert!((d.p_plus_m45 - 0.25).abs() > 1e-6);
    }

    #[test]
    fn exact_with_zero_a_is_bitwise_ideal() {
        let one = c(1.0, 0.0);
        let mut cfg = MziConfig::new(3, c(0.6, 0.0), c(0.0, 0.8), 0.91);
        let (ideal, ideal_arms) = run(&cfg).unwrap();
        cfg.mode = Mode::Exact;
        cfg.element = ElementParams::from_response(one, one, one, -one).unwrap();
        let (exact, exact_arms) = run(&cfg).unwrap();
        assert_eq!(ideal.as_array(), exact.as_array());
        assert_abs_diff_eq!(exact.loss, 0.0, epsilon = TOL);
        assert_eq!(ideal_arms, exact_arms);
    }

    #[test]
    fn single_precision_pipeline() {
        let cfg = MziConfig::<f32>::balanced(2, std::f32::consts::FRAC_PI_2);
        let (d, _) = run(&cfg).unwrap();
        for p in d.as_array() {
            assert!((p - 0.25).abs() < 1e-5);
        }
    }
}
