use thiserror::Error;

/// Errors raised by the simulator and its analytics.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("input amplitudes not normalized: |c1|^2 + |c2|^2 = {0}")]
    NotNormalized(f64),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("OAM index {0} exceeds the supported range |l| <= {max}", max = crate::state::MAX_OAM)]
    OamOutOfRange(i32),

    #[error("base incidence {base_deg:.4} deg is below the critical angle {critical_deg:.4} deg; no total internal reflection")]
    NoTotalReflection { base_deg: f64, critical_deg: f64 },

    #[error("refractive index {0} must exceed 1")]
    InvalidIndex(f64),

    #[error("invalid prism geometry: {0}")]
    InvalidGeometry(&'static str),

    #[error("prism response vanishes (d_x = d_y = 0); decomposition undefined")]
    DegenerateResponse,

    #[error("wave-plate factors must be unimodular: |w_x| = {wx}, |w_y| = {wy}")]
    NotUnimodular { wx: f64, wy: f64 },

    #[error("decomposition coefficients not normalized: |a|^2 + |b|^2 = {0}")]
    DecompositionNotNormalized(f64),

    #[error("sensitivity undefined: both wavenumbers vanish")]
    NoFringeScale,

    #[error("zero fringe slope at the operating point")]
    ZeroSlope,

    #[error("phase shift must be positive, got {0}")]
    NonPositivePhaseShift(f64),

    #[error("distinguishability {0} outside [0, 1]")]
    InvalidDistinguishability(f64),

    #[error("outcome distribution not normalized: total = {0}")]
    UnnormalizedDistribution(f64),

    #[error("{0} must be at least 1")]
    ZeroCount(&'static str),

    #[error("operation requires ideal mode")]
    RequiresIdealMode,

    #[error("invalid beam mode: {0}")]
    InvalidMode(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
