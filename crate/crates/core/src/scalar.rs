//! Scalar abstraction shared by every numeric module.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar the simulator is generic over: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Tolerance for exact-algebra checks on short operator chains.
    const EXACT_TOL: f64;

    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    /// `EXACT_TOL` expressed in this scalar type.
    #[inline]
    fn exact_tol() -> Self {
        Self::lit(Self::EXACT_TOL)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    const EXACT_TOL: f64 = 1e-5;
}

impl Scalar for f64 {
    const EXACT_TOL: f64 = 1e-12;
}

/// Complex probability amplitude.
pub type ComplexAmp<T> = Complex<T>;

#[inline]
pub(crate) fn c<T: Scalar>(re: T, im: T) -> ComplexAmp<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn real<T: Scalar>(re: T) -> ComplexAmp<T> {
    Complex::new(re, T::zero())
}

/// `exp(i·theta)`.
#[inline]
pub(crate) fn cis<T: Scalar>(theta: T) -> ComplexAmp<T> {
    Complex::new(theta.cos(), theta.sin())
}

#[inline]
pub(crate) fn frac_1_sqrt_2<T: Scalar>() -> T {
    T::FRAC_1_SQRT_2()
}

/// Value that may be unbounded. Reports never carry raw floating-point
/// infinities; unbounded quantities are flagged with [`Bounded::Unbounded`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Bounded<T> {
    Finite(T),
    Unbounded,
}

impl<T: Copy> Bounded<T> {
    pub fn finite(self) -> Option<T> {
        match self {
            Bounded::Finite(x) => Some(x),
            Bounded::Unbounded => None,
        }
    }

    pub fn is_unbounded(&self) -> bool {
        matches!(self, Bounded::Unbounded)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Bounded<U> {
        match self {
            Bounded::Finite(x) => Bounded::Finite(f(x)),
            Bounded::Unbounded => Bounded::Unbounded,
        }
    }
}

impl<T: serde::Serialize> serde::Serialize for Bounded<T> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Bounded::Finite(x) => x.serialize(serializer),
            Bounded::Unbounded => serializer.serialize_str("unbounded"),
        }
    }
}
