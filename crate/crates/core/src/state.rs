//! Polarization vectors and sparse photon states over path ⊗ OAM ⊗ polarization.
//!
//! Circular polarization follows |R⟩ = (|x⟩ − i|y⟩)/√2 and |L⟩ = (|x⟩ + i|y⟩)/√2,
//! with spin s = +1 for L and s = −1 for R. The diagonal basis is
//! |±45⟩ = (|x⟩ ± |y⟩)/√2.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{c, frac_1_sqrt_2, ComplexAmp, Scalar};

/// Largest supported |l|.
pub const MAX_OAM: i32 = 64;

/// Basis a [`PolVector`] is expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum PolBasis {
    /// Linear |x⟩, |y⟩.
    XY,
    /// Circular |R⟩, |L⟩.
    RL,
    /// Diagonal |+45⟩, |−45⟩.
    Diag,
}

/// Two complex amplitudes in a named polarization basis.
///
/// Component order is (x, y), (R, L) or (+45, −45) depending on `basis`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolVector<T> {
    pub basis: PolBasis,
    pub comp0: ComplexAmp<T>,
    pub comp1: ComplexAmp<T>,
}

impl<T: Scalar> PolVector<T> {
    pub fn new(basis: PolBasis, comp0: ComplexAmp<T>, comp1: ComplexAmp<T>) -> Self {
        Self { basis, comp0, comp1 }
    }

    pub fn zero() -> Self {
        Self::new(PolBasis::XY, Complex::default(), Complex::default())
    }

    pub fn x() -> Self {
        Self::new(PolBasis::XY, c(T::one(), T::zero()), Complex::default())
    }

    pub fn y() -> Self {
        Self::new(PolBasis::XY, Complex::default(), c(T::one(), T::zero()))
    }

    pub fn right() -> Self {
        Self::new(PolBasis::RL, c(T::one(), T::zero()), Complex::default())
    }

    pub fn left() -> Self {
        Self::new(PolBasis::RL, Complex::default(), c(T::one(), T::zero()))
    }

    pub fn plus45() -> Self {
        Self::new(PolBasis::Diag, c(T::one(), T::zero()), Complex::default())
    }

    pub fn minus45() -> Self {
        Self::new(PolBasis::Diag, Complex::default(), c(T::one(), T::zero()))
    }

    /// `c1|R⟩ + c2|L⟩`.
    pub fn from_circular(c1: ComplexAmp<T>, c2: ComplexAmp<T>) -> Self {
        Self::new(PolBasis::RL, c1, c2)
    }

    pub fn components(&self) -> [ComplexAmp<T>; 2] {
        [self.comp0, self.comp1]
    }

    pub fn is_finite(&self) -> bool {
        self.comp0.re.is_finite() && self.comp0.im.is_finite() && self.comp1.re.is_finite() && self.comp1.im.is_finite()
    }

    /// Components in the (x, y) basis.
    pub fn to_xy(&self) -> [ComplexAmp<T>; 2] {
        let h = frac_1_sqrt_2::<T>();
        let (a, b) = (self.comp0, self.comp1);
        match self.basis {
            PolBasis::XY => [a, b],
            // x = (r + l)/√2, y = i(l − r)/√2
            PolBasis::RL => [(a + b) * h, Complex::<T>::i() * (b - a) * h],
            PolBasis::Diag => [(a + b) * h, (a - b) * h],
        }
    }

    /// Builds a vector in `basis` from (x, y) components.
    pub fn from_xy(basis: PolBasis, xy: [ComplexAmp<T>; 2]) -> Self {
        let h = frac_1_sqrt_2::<T>();
        let [x, y] = xy;
        let (c0, c1) = match basis {
            PolBasis::XY => (x, y),
            // r = ⟨R|v⟩ = (x + iy)/√2, l = ⟨L|v⟩ = (x − iy)/√2
            PolBasis::RL => ((x + Complex::<T>::i() * y) * h, (x - Complex::<T>::i() * y) * h),
            PolBasis::Diag => ((x + y) * h, (x - y) * h),
        };
        Self::new(basis, c0, c1)
    }

    /// Same physical vector expressed in `target`.
    pub fn convert(&self, target: PolBasis) -> Self {
        if self.basis == target {
            return *self;
        }
        Self::from_xy(target, self.to_xy())
    }

    pub fn norm_sqr(&self) -> T {
        self.comp0.norm_sqr() + self.comp1.norm_sqr()
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, k: ComplexAmp<T>) -> Self {
        Self::new(self.basis, self.comp0 * k, self.comp1 * k)
    }

    /// ⟨self|other⟩, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> ComplexAmp<T> {
        // Both sides go through the same basis so that ⟨u|v⟩ = conj⟨v|u⟩ exactly.
        let (u, v) = if self.basis == other.basis {
            (self.components(), other.components())
        } else {
            (self.to_xy(), other.to_xy())
        };
        u[0].conj() * v[0] + u[1].conj() * v[1]
    }

    /// Distance in the 2-norm, computed in `self`'s basis.
    pub fn distance(&self, other: &Self) -> T {
        (*self - *other).norm()
    }
}

/// ⟨u|v⟩ with automatic basis alignment.
pub fn inner_product<T: Scalar>(u: &PolVector<T>, v: &PolVector<T>) -> ComplexAmp<T> {
    u.inner(v)
}

pub fn convert_basis<T: Scalar>(v: &PolVector<T>, target: PolBasis) -> PolVector<T> {
    v.convert(target)
}

impl<T: Scalar> Add for PolVector<T> {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        let r = rhs.convert(self.basis);
        Self::new(self.basis, self.comp0 + r.comp0, self.comp1 + r.comp1)
    }
}

impl<T: Scalar> Sub for PolVector<T> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        let r = rhs.convert(self.basis);
        Self::new(self.basis, self.comp0 - r.comp0, self.comp1 - r.comp1)
    }
}

impl<T: Scalar> Neg for PolVector<T> {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(self.basis, -self.comp0, -self.comp1)
    }
}

impl<T: Scalar> Mul<ComplexAmp<T>> for PolVector<T> {
    type Output = Self;

    fn mul(self, k: ComplexAmp<T>) -> Self {
        self.scale(k)
    }
}

/// Which interferometer path a term lives in. `Single` is used outside the
/// interferometer (input and output ports).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Path {
    Single,
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeLabel {
    pub path: Path,
    pub l: i32,
}

impl ModeLabel {
    pub fn new(path: Path, l: i32) -> Self {
        Self { path, l }
    }
}

/// Sparse superposition over (path, l) labels, each carrying a polarization.
///
/// Distinct labels are orthogonal, so norms and overlaps are sums over
/// matching labels.
#[derive(Clone, Debug, PartialEq)]
pub struct PhotonState<T> {
    terms: BTreeMap<ModeLabel, PolVector<T>>,
}

impl<T: Scalar> Default for PhotonState<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> PhotonState<T> {
    pub fn new() -> Self {
        Self { terms: BTreeMap::new() }
    }

    /// `|l⟩ ⊗ |pol⟩` on the given path.
    pub fn single(path: Path, l: i32, pol: PolVector<T>) -> Result<Self> {
        let mut s = Self::new();
        s.add_term(ModeLabel::new(path, l), pol)?;
        Ok(s)
    }

    /// Adds `pol` to the amplitude stored under `label`.
    pub fn add_term(&mut self, label: ModeLabel, pol: PolVector<T>) -> Result<()> {
        if label.l.abs() > MAX_OAM {
            return Err(Error::OamOutOfRange(label.l));
        }
        if !pol.is_finite() {
            return Err(Error::NonFinite("polarization amplitude"));
        }
        self.terms.entry(label).and_modify(|v| *v = *v + pol).or_insert(pol);
        Ok(())
    }

    pub fn get(&self, label: &ModeLabel) -> Option<&PolVector<T>> {
        self.terms.get(label)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ModeLabel, &PolVector<T>)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn norm_sqr(&self) -> T {
        self.terms.values().fold(T::zero(), |acc, v| acc + v.norm_sqr())
    }

    /// Square root of the summed squared amplitudes over all terms.
    pub fn total_norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn scaled(&self, k: ComplexAmp<T>) -> Self {
        Self {
            terms: self.terms.iter().map(|(lbl, v)| (*lbl, v.scale(k))).collect(),
        }
    }

    /// Moves every term onto `path`, merging labels that collide.
    pub fn on_path(&self, path: Path) -> Self {
        let mut out = Self::new();
        for (lbl, v) in &self.terms {
            out.terms
                .entry(ModeLabel::new(path, lbl.l))
                .and_modify(|w| *w = *w + *v)
                .or_insert(*v);
        }
        out
    }

    /// Applies `f` to every term; the returned labels may collide and are merged.
    pub fn map_terms<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(ModeLabel, PolVector<T>) -> (ModeLabel, PolVector<T>),
    {
        let mut out = Self::new();
        for (lbl, v) in &self.terms {
            let (l2, v2) = f(*lbl, *v);
            out.add_term(l2, v2)?;
        }
        Ok(out)
    }

    /// Sum of two states (labels merged).
    pub fn superpose(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (lbl, v) in &other.terms {
            out.terms.entry(*lbl).and_modify(|w| *w = *w + *v).or_insert(*v);
        }
        out
    }

    /// ⟨self|other⟩ summed over matching labels.
    pub fn overlap(&self, other: &Self) -> ComplexAmp<T> {
        self.terms
            .iter()
            .filter_map(|(lbl, u)| other.terms.get(lbl).map(|v| u.inner(v)))
            .fold(Complex::default(), |acc, z| acc + z)
    }

    /// Probability of finding the state in polarization `pol`, summed over
    /// all spatial labels.
    pub fn projection_probability(&self, pol: &PolVector<T>) -> T {
        self.terms
            .values()
            .fold(T::zero(), |acc, v| acc + pol.inner(v).norm_sqr())
    }
}

/// Norm of a photon state.
pub fn total_norm<T: Scalar>(state: &PhotonState<T>) -> T {
    state.total_norm()
}
