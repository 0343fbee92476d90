//! Optical elements acting on [`PhotonState`]s.
//!
//! Polarization operators are 2×2 Jones matrices in the (x, y) basis. The
//! rotated joint element (Dove prism followed by a wave plate, both turned by
//! α about the beam axis) factors as `D(α) ⊗ s·[a·I + b·P_HW(α)]`, where `s`
//! is the common loss scale removed by normalizing |a|² + |b|² = 1.

mod fresnel;

pub use fresnel::{fresnel_dove, fresnel_factors, FresnelFactors, PrismGeometry};

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{cis, frac_1_sqrt_2, real, Bounded, ComplexAmp, Scalar};
use crate::state::{ModeLabel, Path, PhotonState, PolBasis, PolVector};

/// 2×2 polarization operator in the (x, y) basis, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolOperator<T> {
    pub m: [[ComplexAmp<T>; 2]; 2],
}

impl<T: Scalar> PolOperator<T> {
    pub fn new(m: [[ComplexAmp<T>; 2]; 2]) -> Self {
        Self { m }
    }

    pub fn identity() -> Self {
        Self::diag(real(T::one()), real(T::one()))
    }

    pub fn diag(d0: ComplexAmp<T>, d1: ComplexAmp<T>) -> Self {
        let z = Complex::default();
        Self::new([[d0, z], [z, d1]])
    }

    /// Applies the operator; the result is expressed in the XY basis.
    pub fn apply(&self, v: &PolVector<T>) -> PolVector<T> {
        let [x, y] = v.to_xy();
        let m = &self.m;
        PolVector::new(PolBasis::XY, m[0][0] * x + m[0][1] * y, m[1][0] * x + m[1][1] * y)
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        let (a, b) = (&self.m, &rhs.m);
        let mut out = [[Complex::default(); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self::new(out)
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Self::new([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn scale(&self, k: ComplexAmp<T>) -> Self {
        let m = &self.m;
        Self::new([[m[0][0] * k, m[0][1] * k], [m[1][0] * k, m[1][1] * k]])
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let (a, b) = (&self.m, &rhs.m);
        Self::new([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }

    pub fn determinant(&self) -> ComplexAmp<T> {
        let m = &self.m;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_deviation(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.m[i][j] - other.m[i][j]).norm());
            }
        }
        worst
    }
}

/// Rotation `U = exp(−iσ_y θ)`, which turns the (x, y) frame by θ.
pub fn rotation<T: Scalar>(theta: T) -> PolOperator<T> {
    let (s, c) = theta.sin_cos();
    PolOperator::new([[real(c), real(-s)], [real(s), real(c)]])
}

/// Half-wave plate with its fast axis at θ: `U diag(1, −1) U†`.
pub fn hwp_rotated<T: Scalar>(theta: T) -> PolOperator<T> {
    let (s2, c2) = (theta + theta).sin_cos();
    PolOperator::new([[real(c2), real(s2)], [real(s2), real(-c2)]])
}

/// Image flip of a Dove prism rotated by α: `|l⟩ → exp(i2lα)|−l⟩`.
/// Polarization is untouched.
pub fn dove_apply<T: Scalar>(alpha: T, state: &PhotonState<T>) -> Result<PhotonState<T>> {
    state.map_terms(|lbl, v| {
        let phase = cis(T::lit(f64::from(2 * lbl.l)) * alpha);
        (ModeLabel::new(lbl.path, -lbl.l), v.scale(phase))
    })
}

/// Whether the joint element is treated as a perfect half-wave plate or with
/// its actual decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// a = 0, b = 1.
    Ideal,
    /// Keeps the a·I term and the loss scale.
    Exact,
}

/// Prism and wave-plate response with the derived a/b decomposition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ElementParams<T> {
    pub d_x: ComplexAmp<T>,
    pub d_y: ComplexAmp<T>,
    pub w_x: ComplexAmp<T>,
    pub w_y: ComplexAmp<T>,
    pub a: ComplexAmp<T>,
    pub b: ComplexAmp<T>,
    /// Common amplitude scale removed by the normalization of (a, b); the
    /// joint element is `scale·(a·I + b·P_HW)`.
    pub scale: T,
}

impl<T: Scalar> ElementParams<T> {
    /// Lossless prism with a perfect half-wave plate: a = 0, b = 1.
    pub fn ideal() -> Self {
        let one = real(T::one());
        Self::from_response(one, one, one, -one).expect("ideal element is valid")
    }

    /// Builds the element from prism response `d` and wave-plate factors `w`.
    pub fn from_response(
        d_x: ComplexAmp<T>,
        d_y: ComplexAmp<T>,
        w_x: ComplexAmp<T>,
        w_y: ComplexAmp<T>,
    ) -> Result<Self> {
        let (a, b, scale) = decompose_joint(d_x, d_y, w_x, w_y)?;
        Ok(Self {
            d_x,
            d_y,
            w_x,
            w_y,
            a,
            b,
            scale,
        })
    }

    /// Fresnel prism response with the wave plate that minimizes |a|.
    pub fn from_prism(geom: &PrismGeometry<T>) -> Result<Self> {
        let (d_x, d_y) = fresnel_dove(geom)?;
        let wp = optimize_waveplate(d_x, d_y)?;
        Self::from_response(d_x, d_y, wp.w_x, wp.w_y)
    }

    /// |b/a|, unbounded when a vanishes.
    pub fn b_over_a(&self) -> Bounded<T> {
        ratio(self.b.norm(), self.a.norm())
    }

    /// Polarization part of the joint element at rotation α.
    pub fn operator(&self, alpha: T, mode: Mode) -> PolOperator<T> {
        let (a, b, scale) = match mode {
            Mode::Ideal => (Complex::default(), real(T::one()), T::one()),
            Mode::Exact => (self.a, self.b, self.scale),
        };
        PolOperator::identity()
            .scale(a)
            .add(&hwp_rotated(alpha).scale(b))
            .scale(real(scale))
    }

    pub fn validate(&self) -> Result<()> {
        check_unimodular(self.w_x, self.w_y)?;
        let total = self.a.norm_sqr() + self.b.norm_sqr();
        if (total - T::one()).abs() > T::exact_tol() {
            return Err(Error::DecompositionNotNormalized(total.as_f64()));
        }
        Ok(())
    }
}

fn ratio<T: Scalar>(num: T, den: T) -> Bounded<T> {
    if den <= T::epsilon() * num {
        Bounded::Unbounded
    } else {
        Bounded::Finite(num / den)
    }
}

fn check_unimodular<T: Scalar>(w_x: ComplexAmp<T>, w_y: ComplexAmp<T>) -> Result<()> {
    let tol = T::exact_tol();
    if (w_x.norm() - T::one()).abs() > tol || (w_y.norm() - T::one()).abs() > tol {
        return Err(Error::NotUnimodular {
            wx: w_x.norm().as_f64(),
            wy: w_y.norm().as_f64(),
        });
    }
    Ok(())
}

/// Splits `diag(w_x d_x, w_y d_y)` into `scale·(a·I + b·diag(1, −1))` with
/// |a|² + |b|² = 1. Returns `(a, b, scale)`.
pub fn decompose_joint<T: Scalar>(
    d_x: ComplexAmp<T>,
    d_y: ComplexAmp<T>,
    w_x: ComplexAmp<T>,
    w_y: ComplexAmp<T>,
) -> Result<(ComplexAmp<T>, ComplexAmp<T>, T)> {
    check_unimodular(w_x, w_y)?;
    if d_x.norm() == T::zero() && d_y.norm() == T::zero() {
        return Err(Error::DegenerateResponse);
    }
    let half = T::lit(0.5);
    let ex = w_x * d_x;
    let ey = w_y * d_y;
    let a = (ex + ey) * half;
    let b = (ex - ey) * half;
    let scale = (a.norm_sqr() + b.norm_sqr()).sqrt();
    Ok((a / scale, b / scale, scale))
}

/// Wave-plate choice that maximizes |b/a| for a given prism response.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WaveplateChoice<T> {
    pub w_x: ComplexAmp<T>,
    pub w_y: ComplexAmp<T>,
    /// Achieved |b/a| = (|d_x| + |d_y|) / ||d_x| − |d_y||.
    pub b_over_a: Bounded<T>,
}

/// Picks unimodular `w` with arg(w_x d_x) − arg(w_y d_y) = π, which leaves
/// |a| = ||d_x| − |d_y||/2 before normalization.
pub fn optimize_waveplate<T: Scalar>(d_x: ComplexAmp<T>, d_y: ComplexAmp<T>) -> Result<WaveplateChoice<T>> {
    let (mx, my) = (d_x.norm(), d_y.norm());
    if mx == T::zero() || my == T::zero() {
        return Err(Error::DegenerateResponse);
    }
    let w_x = d_x.conj() / mx;
    let w_y = -d_y.conj() / my;
    Ok(WaveplateChoice {
        w_x,
        w_y,
        b_over_a: ratio(mx + my, (mx - my).abs()),
    })
}

/// `D(α) ⊗ [a·I + b·P_HW(α)]`, scaled by the element loss in exact mode.
pub fn joint_apply<T: Scalar>(
    alpha: T,
    params: &ElementParams<T>,
    state: &PhotonState<T>,
    mode: Mode,
) -> Result<PhotonState<T>> {
    let op = params.operator(alpha, mode);
    let flipped = dove_apply(alpha, state)?;
    flipped.map_terms(|lbl, v| (lbl, op.apply(&v)))
}

/// Output port of the second beam splitter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Port {
    /// Receives the sum of the two arms.
    Plus,
    /// Receives the difference.
    Minus,
}

/// First 50/50 splitter: `ψ → (ψ_A + ψ_B)/√2`.
pub fn beamsplitter_split<T: Scalar>(state: &PhotonState<T>) -> (PhotonState<T>, PhotonState<T>) {
    let h = real(frac_1_sqrt_2::<T>());
    let s = state.scaled(h);
    (s.on_path(Path::A), s.on_path(Path::B))
}

/// Second 50/50 splitter: port ± receives `(arm_a ± arm_b)/√2`. The
/// reflection phases of both splitters are absorbed into this convention.
pub fn beamsplitter_combine<T: Scalar>(arm_a: &PhotonState<T>, arm_b: &PhotonState<T>, port: Port) -> PhotonState<T> {
    let h = frac_1_sqrt_2::<T>();
    let sign = match port {
        Port::Plus => T::one(),
        Port::Minus => -T::one(),
    };
    let a = arm_a.on_path(Path::Single).scaled(real(h));
    let b = arm_b.on_path(Path::Single).scaled(real(sign * h));
    a.superpose(&b)
}

/// Plane mirror in the reflected beam's frame: `|l⟩ → |−l⟩`, R ↔ L, global −1.
pub fn mirror_apply<T: Scalar>(state: &PhotonState<T>) -> Result<PhotonState<T>> {
    let op = mirror_operator::<T>();
    state.map_terms(|lbl, v| (ModeLabel::new(lbl.path, -lbl.l), op.apply(&v)))
}

/// Polarization part of [`mirror_apply`]: `−diag(1, −1)` swaps R and L.
pub fn mirror_operator<T: Scalar>() -> PolOperator<T> {
    PolOperator::diag(real(-T::one()), real(T::one()))
}
