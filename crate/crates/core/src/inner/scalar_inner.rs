//! Scalar rational inner functions (finite Blaschke products on C₊).

use nalgebra::ComplexField;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{imag_unit, re, Real};

/// `constant · Π (z − a_k)/(z − ā_k)` with zeros `a_k` in C₊.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarInner<T: Real> {
    constant: Complex<T>,
    zeros: Vec<Complex<T>>,
}

impl<T: Real> ScalarInner<T> {
    /// Builds a Blaschke product with the given constant and zero multiset.
    /// No validation is performed; see [`crate::inner::is_inner`].
    pub fn new(constant: Complex<T>, zeros: Vec<Complex<T>>) -> Self {
        Self { constant, zeros }
    }

    /// Blaschke product with constant 1.
    pub fn blaschke(zeros: Vec<Complex<T>>) -> Self {
        Self::new(Complex::new(T::one(), T::zero()), zeros)
    }

    /// The unimodular constant.
    pub fn constant(&self) -> Complex<T> {
        self.constant
    }

    /// Zero multiset.
    pub fn zeros(&self) -> &[Complex<T>] {
        &self.zeros
    }

    /// Number of Blaschke factors.
    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    /// Replaces the constant.
    pub fn with_constant(&self, constant: Complex<T>) -> Self {
        Self::new(constant, self.zeros.clone())
    }

    /// Product of two Blaschke products.
    pub fn times(&self, other: &Self) -> Self {
        let mut zeros = self.zeros.clone();
        zeros.extend_from_slice(&other.zeros);
        Self::new(self.constant * other.constant, zeros)
    }

    /// Number of zeros within `tol` of `a`.
    pub fn multiplicity_at(&self, a: Complex<T>, tol: T) -> usize {
        self.zeros
            .iter()
            .filter(|z| (**z - a).modulus() <= tol)
            .count()
    }

    /// Evaluates the product; poles (conjugate zeros) are rejected.
    pub fn eval(&self, z: Complex<T>) -> Result<Complex<T>> {
        let mut acc = self.constant;
        for &a in &self.zeros {
            let den = z - a.conj();
            if den.modulus() <= T::machine_eps() * (T::one() + z.modulus()) {
                return Err(Error::pole(a.conj()));
            }
            acc *= (z - a) / den;
        }
        Ok(acc)
    }

    /// Canonical representative: the constant is chosen so that the lowest
    /// non-vanishing Taylor coefficient of `Θ∘b⁻¹` at the origin (equivalently
    /// the leading coefficient of Θ at `i` in powers of `b(z)`) is positive real.
    /// Zeros within `tol` of `i` count as zeros at `i`.
    pub fn canonicalized(&self, tol: T) -> Self {
        let i = imag_unit::<T>();
        let mut rest = Complex::new(T::one(), T::zero());
        for &a in &self.zeros {
            if (a - i).modulus() > tol {
                rest *= (i - a) / (i - a.conj());
            }
        }
        // Θ = c·b^m·R with R(i) = rest; make c·R(i) > 0.
        let phase = rest.conj() / re(rest.modulus());
        Self::new(phase, self.zeros.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    fn fdeg_theta() -> ScalarInner<f64> {
        ScalarInner::blaschke(vec![cx(0.0, 1.0), cx(0.0, 1.0)])
    }

    #[test]
    fn vanishes_at_i() {
        assert_eq!(fdeg_theta().eval(cx(0.0, 1.0)).unwrap(), cx(0.0, 0.0));
    }

    #[test]
    fn value_at_zero_is_one() {
        assert!((fdeg_theta().eval(cx(0.0, 0.0)).unwrap() - cx(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn unimodular_on_real_axis() {
        for x in [0.0, 1.0, -3.0, 10.0] {
            assert!((fdeg_theta().eval(cx(x, 0.0)).unwrap().norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn pole_rejected() {
        assert!(matches!(
            fdeg_theta().eval(cx(0.0, -1.0)),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn canonical_form_of_b_squared_is_b_squared() {
        let minus = fdeg_theta().with_constant(cx(-1.0, 0.0));
        let c = minus.canonicalized(1e-6);
        assert!((c.constant() - cx(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn canonical_leading_coefficient_positive() {
        let f = ScalarInner::new(
            Complex::from_polar(1.0, 2.0),
            vec![cx(0.0, 1.0), cx(1.0, 2.0), cx(-0.5, 0.3)],
        );
        let c = f.canonicalized(1e-9);
        // Leading coefficient at i in powers of b: Θ(z)/b(z) at z = i.
        let z = cx(1e-7, 1.0);
        let lead = c.eval(z).unwrap() / crate::operator::b(z).unwrap();
        assert!(lead.im.abs() < 1e-6 && lead.re > 0.0);
    }
}
