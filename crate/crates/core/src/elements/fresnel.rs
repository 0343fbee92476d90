//! Fresnel model of a Dove prism: refraction in, total internal reflection at
//! the base, refraction out.
//!
//! All surface normals lie in the y–z plane, so x (parallel to the base) is
//! s-polarized at every surface and y is p-polarized.

use crate::error::{Error, Result};
use crate::scalar::{c, ComplexAmp, Scalar};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrismGeometry<T> {
    /// Refractive index of the prism glass (surroundings have index 1).
    pub refractive_index: T,
    /// External angle of incidence on the entrance face, radians.
    pub face_incidence_angle: T,
    /// Internal angle of incidence on the base, radians.
    pub base_incidence_angle: T,
}

impl<T: Scalar> Default for PrismGeometry<T> {
    /// BK7-like crown glass (n = 1.5168), 45° entrance face, 67.5° base incidence.
    fn default() -> Self {
        Self {
            refractive_index: T::lit(1.5168),
            face_incidence_angle: T::FRAC_PI_4(),
            base_incidence_angle: T::lit(67.5).to_radians(),
        }
    }
}

impl<T: Scalar> PrismGeometry<T> {
    /// Critical angle `arcsin(1/n)` for glass-to-air incidence.
    pub fn critical_angle(&self) -> Result<T> {
        let n = self.refractive_index;
        if n <= T::one() || !n.is_finite() {
            return Err(Error::InvalidIndex(n.as_f64()));
        }
        Ok((T::one() / n).asin())
    }

    pub fn validate(&self) -> Result<()> {
        let crit = self.critical_angle()?;
        let half_pi = T::FRAC_PI_2();
        let face = self.face_incidence_angle;
        let base = self.base_incidence_angle;
        if !face.is_finite() || face < T::zero() || face >= half_pi {
            return Err(Error::InvalidGeometry("face incidence must lie in [0, 90°)"));
        }
        if !base.is_finite() || base >= half_pi {
            return Err(Error::InvalidGeometry("base incidence must lie below 90°"));
        }
        if base <= crit {
            return Err(Error::NoTotalReflection {
                base_deg: base.as_f64().to_degrees(),
                critical_deg: crit.as_f64().to_degrees(),
            });
        }
        Ok(())
    }
}

/// Per-surface amplitude coefficients of one prism passage.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FresnelFactors<T> {
    pub t_s_in: T,
    pub t_p_in: T,
    pub r_s_base: ComplexAmp<T>,
    pub r_p_base: ComplexAmp<T>,
    pub t_s_out: T,
    pub t_p_out: T,
}

impl<T: Scalar> FresnelFactors<T> {
    pub fn d_x(&self) -> ComplexAmp<T> {
        self.r_s_base * (self.t_s_in * self.t_s_out)
    }

    pub fn d_y(&self) -> ComplexAmp<T> {
        self.r_p_base * (self.t_p_in * self.t_p_out)
    }

    /// arg(r_s) − arg(r_p) of the total internal reflection.
    pub fn tir_phase_difference(&self) -> T {
        self.r_s_base.arg() - self.r_p_base.arg()
    }
}

/// Surface coefficients for the given geometry.
pub fn fresnel_factors<T: Scalar>(geom: &PrismGeometry<T>) -> Result<FresnelFactors<T>> {
    geom.validate()?;
    let n = geom.refractive_index;
    let two = T::lit(2.0);

    // air -> glass at the entrance face
    let ci = geom.face_incidence_angle.cos();
    let sin_t = geom.face_incidence_angle.sin() / n;
    let ct = (T::one() - sin_t * sin_t).sqrt();
    let t_s_in = two * ci / (ci + n * ct);
    let t_p_in = two * ci / (n * ci + ct);

    // glass -> air at the exit face, mirror-symmetric passage
    let t_s_out = two * n * ct / (n * ct + ci);
    let t_p_out = two * n * ct / (ct + n * ci);

    // glass -> air beyond the critical angle at the base
    let cb = geom.base_incidence_angle.cos();
    let sb = geom.base_incidence_angle.sin();
    let q = (n * n * sb * sb - T::one()).sqrt();
    let r_s_base = c(n * cb, -q) / c(n * cb, q);
    let r_p_base = c(cb, -n * q) / c(cb, n * q);

    Ok(FresnelFactors {
        t_s_in,
        t_p_in,
        r_s_base,
        r_p_base,
        t_s_out,
        t_p_out,
    })
}

/// Polarization response `(d_x, d_y)` of one passage through the prism.
pub fn fresnel_dove<T: Scalar>(geom: &PrismGeometry<T>) -> Result<(ComplexAmp<T>, ComplexAmp<T>)> {
    let f = fresnel_factors(geom)?;
    Ok((f.d_x(), f.d_y()))
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    // Frozen from an independent 30-digit mpmath evaluation of the textbook
    // Fresnel amplitudes for n = 1.5168, 45° face, 67.5° base.
    const DX: (f64, f64) = (-0.435_668_380_495_787_44, -0.792_116_338_105_584_85);
    const DY: (f64, f64) = (-0.868_018_731_175_274_74, -0.477_707_725_914_107_28);
    const TIR_PHASE_DIFF: f64 = 0.564_842_615_135_437_37;

    #[test]
    fn default_prism_matches_oracle() {
        let (dx, dy) = fresnel_dove(&PrismGeometry::<f64>::default()).unwrap();
        assert_abs_diff_eq!(dx.re, DX.0, epsilon = 1e-13);
        assert_abs_diff_eq!(dx.im, DX.1, epsilon = 1e-13);
        assert_abs_diff_eq!(dy.re, DY.0, epsilon = 1e-13);
        assert_abs_diff_eq!(dy.im, DY.1, epsilon = 1e-13);
        assert!((dx.norm() - dy.norm()).abs() > 1e-3);
        for d in [dx, dy] {
            assert!(d.norm() > 0.8 && d.norm() < 1.0);
        }
    }

    #[test]
    fn total_reflection_is_unimodular() {
        let f = fresnel_factors(&PrismGeometry::<f64>::default()).unwrap();
        assert_abs_diff_eq!(f.r_s_base.norm(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(f.r_p_base.norm(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(f.tir_phase_difference(), TIR_PHASE_DIFF, epsilon = 1e-12);
    }

    #[test]
    fn transmission_product_is_power_transmittance() {
        // Stokes: t·t' = 1 − r², so at normal incidence t_in·t_out = 4n/(1+n)².
        let g = PrismGeometry {
            refractive_index: 1.5,
            face_incidence_angle: 0.0,
            base_incidence_angle: 1.2,
        };
        let f = fresnel_factors(&g).unwrap();
        let t = 2.0 / (1.0 + 1.5);
        assert_abs_diff_eq!(f.t_s_in, t, epsilon = 1e-15);
        assert_abs_diff_eq!(f.t_s_in * f.t_s_out, 6.0 / 6.25, epsilon = 1e-14);
        assert_abs_diff_eq!(f.t_p_in * f.t_p_out, 6.0 / 6.25, epsilon = 1e-14);
    }

    #[test]
    fn rejects_unit_index() {
        let g = PrismGeometry {
            refractive_index: 1.0,
            ..PrismGeometry::default()
        };
        assert_eq!(fresnel_dove(&g).unwrap_err(), Error::InvalidIndex(1.0));
    }

    #[test]
    fn rejects_index_near_one() {
        let g = PrismGeometry {
            refractive_index: 1.0001,
            ..PrismGeometry::default()
        };
        assert!(matches!(fresnel_dove(&g).unwrap_err(), Error::NoTotalReflection { .. }));
    }

    #[test]
    fn rejects_subcritical_base() {
        let g = PrismGeometry {
            base_incidence_angle: 0.5,
            ..PrismGeometry::<f64>::default()
        };
        assert!(matches!(fresnel_dove(&g).unwrap_err(), Error::NoTotalReflection { .. }));
    }
}
