//! Möbius maps between the upper half-plane and the unit disk.

use nalgebra::ComplexField;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{imag_unit, Real};

/// The Möbius maps used throughout: the Cayley map `b`, its inverse, and the
/// parametric maps `b_w(z) = (z − w)/(z − w̄)`, `b_w†(z) = (z − w̄)/(z − w)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MobiusMap<T: Real> {
    /// `b(z) = (z − i)/(z + i)`.
    B,
    /// `b⁻¹(a) = i(1 + a)/(1 − a)`.
    BInverse,
    /// `b_w(z) = (z − w)/(z − w̄)`.
    Bw(Complex<T>),
    /// `b_w†(z) = (z − w̄)/(z − w)`.
    BwDagger(Complex<T>),
}

impl<T: Real> MobiusMap<T> {
    /// The pole of the map.
    pub fn pole(&self) -> Complex<T> {
        let i = imag_unit::<T>();
        match *self {
            MobiusMap::B => -i,
            MobiusMap::BInverse => Complex::new(T::one(), T::zero()),
            MobiusMap::Bw(w) => w.conj(),
            MobiusMap::BwDagger(w) => w,
        }
    }

    /// Evaluates the map, rejecting its pole.
    pub fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        let i = imag_unit::<T>();
        let one = Complex::new(T::one(), T::zero());
        let (num, den) = match *self {
            MobiusMap::B => (z - i, z + i),
            MobiusMap::BInverse => (i * (one + z), one - z),
            MobiusMap::Bw(w) => (z - w, z - w.conj()),
            MobiusMap::BwDagger(w) => (z - w.conj(), z - w),
        };
        if den.modulus() <= T::machine_eps() * (T::one() + z.modulus()) {
            return Err(Error::pole(self.pole()));
        }
        Ok(num / den)
    }
}

/// Evaluates a Möbius map at `z`.
pub fn mobius_eval<T: Real>(m: MobiusMap<T>, z: Complex<T>) -> Result<Complex<T>> {
    m.eval(z)
}

/// `b(z) = (z − i)/(z + i)`.
pub fn b<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    MobiusMap::B.eval(z)
}

/// `b⁻¹(a) = i(1 + a)/(1 − a)`.
pub fn b_inv<T: Real>(a: Complex<T>) -> Result<Complex<T>> {
    MobiusMap::BInverse.eval(a)
}
