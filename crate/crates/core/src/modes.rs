//! Transverse fields of Laguerre-Gaussian and Bessel-Gaussian beams carrying
//! circular polarization, evaluated in a fixed plane.
//!
//! The scalar profile winds as `exp(ilφ)`. With the polarization unit vector
//! `(x̂ + i·s·ŷ)/√2` (s = +1 for L, −1 for R) the instantaneous field pattern
//! is invariant under rotations by `2π/|l + s|`. Time dependence is
//! `e^{−iωt}` and fields are rendered at t = 0.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{cis, ComplexAmp, Scalar};
use crate::special::{bessel_i_scaled, bessel_j, factorial_ratio, laguerre};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    /// Laguerre-Gaussian `LG_p^l`.
    LaguerreGauss,
    /// Bessel-Gaussian `BG^l`.
    BesselGauss,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BeamMode<T> {
    pub family: Family,
    /// Topological charge.
    pub l: i32,
    /// Radial index (LG only).
    pub p: u32,
    pub waist: T,
    /// Radial wavenumber (BG only).
    pub k_r: T,
}

impl<T: Scalar> BeamMode<T> {
    pub fn laguerre_gauss(l: i32, p: u32, waist: T) -> Self {
        Self {
            family: Family::LaguerreGauss,
            l,
            p,
            waist,
            k_r: T::zero(),
        }
    }

    pub fn bessel_gauss(l: i32, waist: T, k_r: T) -> Self {
        Self {
            family: Family::BesselGauss,
            l,
            p: 0,
            waist,
            k_r,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.waist <= T::zero() || !self.waist.is_finite() {
            return Err(Error::InvalidMode("waist must be positive"));
        }
        if self.family == Family::BesselGauss && (self.k_r <= T::zero() || !self.k_r.is_finite()) {
            return Err(Error::InvalidMode("Bessel-Gauss radial wavenumber must be positive"));
        }
        Ok(())
    }

    /// Constant giving unit power `∫|u|² dA = 1` over the plane.
    fn normalization(&self) -> T {
        let w = self.waist;
        let pi = T::PI();
        let m = self.l.unsigned_abs();
        match self.family {
            Family::LaguerreGauss => (T::lit(2.0) * factorial_ratio::<T>(self.p, m) / pi).sqrt() / w,
            Family::BesselGauss => {
                // ∫ J_l(k r)² e^{−2r²/w²} r dr = (w²/4) e^{−x} I_l(x), x = k²w²/4
                let x = self.k_r * self.k_r * w * w / T::lit(4.0);
                let power = T::lit(2.0) * pi * w * w / T::lit(4.0) * bessel_i_scaled(self.l, x);
                T::one() / power.sqrt()
            }
        }
    }
}

/// Complex scalar amplitude at polar coordinates `(r, φ)`.
pub fn scalar_amplitude<T: Scalar>(mode: &BeamMode<T>, r: T, phi: T) -> ComplexAmp<T> {
    let w = mode.waist;
    let rho2 = r * r / (w * w);
    let gauss = (-rho2).exp();
    let m = mode.l.unsigned_abs();
    let radial = match mode.family {
        Family::LaguerreGauss => {
            let s = T::SQRT_2() * r / w;
            s.powi(m as i32) * laguerre(mode.p, T::lit(f64::from(m)), T::lit(2.0) * rho2) * gauss
        }
        Family::BesselGauss => bessel_j(mode.l, mode.k_r * r) * gauss,
    };
    cis(T::lit(f64::from(mode.l)) * phi) * (radial * mode.normalization())
}

/// Photon spin along the propagation axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Spin {
    /// s = +1, left circular.
    Plus,
    /// s = −1, right circular.
    Minus,
}

impl Spin {
    pub fn value(self) -> i32 {
        match self {
            Spin::Plus => 1,
            Spin::Minus => -1,
        }
    }
}

/// Complex field phasor `(Ẽ_x, Ẽ_y)` at Cartesian `(x, y)`.
pub fn field_phasor<T: Scalar>(mode: &BeamMode<T>, s: Spin, x: T, y: T) -> [ComplexAmp<T>; 2] {
    let u = scalar_amplitude(mode, x.hypot(y), y.atan2(x));
    let h = T::FRAC_1_SQRT_2();
    let sy = T::lit(f64::from(s.value()));
    [u * h, u * Complex::new(T::zero(), sy * h)]
}

/// Real field at t = 0.
pub fn field_at<T: Scalar>(mode: &BeamMode<T>, s: Spin, x: T, y: T) -> [T; 2] {
    let [ex, ey] = field_phasor(mode, s, x, y);
    [ex.re, ey.re]
}

/// `|Ẽ_x|² + |Ẽ_y|²`, twice the cycle-averaged intensity of the real field.
pub fn intensity<T: Scalar>(mode: &BeamMode<T>, s: Spin, x: T, y: T) -> T {
    let [ex, ey] = field_phasor(mode, s, x, y);
    ex.norm_sqr() + ey.norm_sqr()
}

/// Order of the rotational symmetry of the field pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Symmetry {
    /// Invariant under rotation by 2π/n.
    Fold(u32),
    /// l + s = 0: invariant under every rotation.
    Continuous,
}

pub fn symmetry_order(l: i32, s: Spin) -> Symmetry {
    match (l + s.value()).unsigned_abs() {
        0 => Symmetry::Continuous,
        n => Symmetry::Fold(n),
    }
}

/// Square grid centered on the beam axis, in waist units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec<T> {
    /// Half-width in waists.
    pub extent: T,
    /// Samples per side.
    pub resolution: usize,
}

impl<T: Scalar> GridSpec<T> {
    pub fn validate(&self) -> Result<()> {
        if self.resolution == 0 {
            return Err(Error::InvalidMode("grid resolution must be at least 1"));
        }
        if self.extent <= T::zero() || !self.extent.is_finite() {
            return Err(Error::InvalidMode("grid extent must be positive"));
        }
        Ok(())
    }

    /// Sample coordinates along one axis, endpoints included.
    pub fn axis(&self) -> Vec<T> {
        if self.resolution == 1 {
            return vec![T::zero()];
        }
        let step = self.spacing();
        (0..self.resolution)
            .map(|i| -self.extent + step * T::lit(i as f64))
            .collect()
    }

    pub fn spacing(&self) -> T {
        if self.resolution <= 1 {
            return T::lit(2.0) * self.extent;
        }
        T::lit(2.0) * self.extent / T::lit((self.resolution - 1) as f64)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FieldSample<T> {
    /// Position in waist units.
    pub x: T,
    pub y: T,
    pub ex: T,
    pub ey: T,
}

/// Sampled real field, row-major with y ascending over rows and x ascending
/// within a row.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldGrid<T> {
    pub extent: T,
    pub resolution: usize,
    pub samples: Vec<FieldSample<T>>,
}

impl<T: Scalar> FieldGrid<T> {
    pub fn get(&self, row: usize, col: usize) -> &FieldSample<T> {
        &self.samples[row * self.resolution + col]
    }
}

/// Samples the t = 0 field of `mode` with spin `s` on `spec`.
pub fn transverse_field<T: Scalar>(mode: &BeamMode<T>, s: Spin, spec: &GridSpec<T>) -> Result<FieldGrid<T>> {
    mode.validate()?;
    spec.validate()?;
    let axis = spec.axis();
    let w = mode.waist;
    let mut samples = Vec::with_capacity(spec.resolution * spec.resolution);
    for &y in &axis {
        for &x in &axis {
            let [ex, ey] = field_at(mode, s, x * w, y * w);
            samples.push(FieldSample { x, y, ex, ey });
        }
    }
    Ok(FieldGrid {
        extent: spec.extent,
        resolution: spec.resolution,
        samples,
    })
}

/// Largest deviation between the field at each point and the field rotated
/// by `angle`, evaluated analytically at the back-rotated point, relative to
/// the largest field magnitude over the points.
pub fn rotation_symmetry_error<T: Scalar>(mode: &BeamMode<T>, s: Spin, angle: T, points: &[(T, T)]) -> T {
    let (sn, cs) = angle.sin_cos();
    let mut worst = T::zero();
    let mut scale = T::zero();
    for &(x, y) in points {
        let [ex, ey] = field_at(mode, s, x, y);
        // R_β E(R_{−β} p)
        let (xb, yb) = (cs * x + sn * y, -sn * x + cs * y);
        let [fx, fy] = field_at(mode, s, xb, yb);
        let (rx, ry) = (cs * fx - sn * fy, sn * fx + cs * fy);
        worst = worst.max((ex - rx).hypot(ey - ry));
        scale = scale.max(ex.hypot(ey));
    }
    if scale == T::zero() {
        worst
    } else {
        worst / scale
    }
}

/// Discrete plane integral of `|Ẽ|²` over the grid.
pub fn grid_power<T: Scalar>(mode: &BeamMode<T>, s: Spin, spec: &GridSpec<T>) -> Result<T> {
    mode.validate()?;
    spec.validate()?;
    let axis = spec.axis();
    let w = mode.waist;
    let cell = spec.spacing() * w;
    let mut total = T::zero();
    for &y in &axis {
        for &x in &axis {
            total = total + intensity(mode, s, x * w, y * w);
        }
    }
    Ok(total * cell * cell)
}
