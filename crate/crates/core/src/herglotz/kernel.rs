//! Herglotz-space reproducing kernels and kernel Gram matrices.

use nalgebra::ComplexField;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::inner::HerglotzFn;
use crate::numeric::{psd_check, CMatrix, CVector, PsdReport};
use crate::scalar::{imag_unit, re, Real};

/// `K_w(z) = (i/π)·(G(z) + G(w)*)/(z − w̄)`.
pub fn herglotz_kernel<T: Real>(
    g: &HerglotzFn<T>,
    w: Complex<T>,
    z: Complex<T>,
) -> Result<CMatrix<T>> {
    if z.im == T::zero() {
        return Err(Error::real_point(z));
    }
    if w.im == T::zero() {
        return Err(Error::real_point(w));
    }
    let den = z - w.conj();
    if den.modulus() <= T::machine_eps() * (T::one() + z.modulus()) {
        return Err(Error::pole(w.conj()));
    }
    let s = g.eval(z)? + g.eval(w)?.adjoint();
    Ok(s * (imag_unit::<T>() / (re(T::pi()) * den)))
}

/// Gram matrix `[⟨K_{z_k}v_k, K_{z_j}v_j⟩]_{jk} = [v_j* K_{z_k}(z_j) v_k]`.
#[derive(Debug, Clone)]
pub struct KernelGram<T: Real> {
    /// Evaluation points.
    pub points: Vec<Complex<T>>,
    /// One direction per point.
    pub directions: Vec<CVector<T>>,
    /// Hermitian Gram matrix.
    pub gram: CMatrix<T>,
}

impl<T: Real> KernelGram<T> {
    /// Builds the Gram matrix of `kernel(w, z) = K_w(z)` at `(points[j],
    /// directions[j])` pairs.
    pub fn build<F>(points: &[Complex<T>], directions: &[CVector<T>], kernel: F) -> Result<Self>
    where
        F: Fn(Complex<T>, Complex<T>) -> Result<CMatrix<T>>,
    {
        if points.len() != directions.len() {
            return Err(Error::DimensionMismatch(
                "one direction per point required".into(),
            ));
        }
        let m = points.len();
        let mut gram = CMatrix::zeros(m, m);
        for j in 0..m {
            for k in 0..m {
                let kv = kernel(points[k], points[j])? * &directions[k];
                gram[(j, k)] = directions[j].dotc(&kv);
            }
        }
        Ok(Self {
            points: points.to_vec(),
            directions: directions.to_vec(),
            gram,
        })
    }

    /// Block Gram over all standard directions of C^n at each point.
    pub fn block<F>(points: &[Complex<T>], n: usize, kernel: F) -> Result<Self>
    where
        F: Fn(Complex<T>, Complex<T>) -> Result<CMatrix<T>>,
    {
        let mut pts = Vec::with_capacity(points.len() * n);
        let mut dirs = Vec::with_capacity(points.len() * n);
        for &p in points {
            for e in 0..n {
                pts.push(p);
                let mut v = CVector::zeros(n);
                v[e] = Complex::new(T::one(), T::zero());
                dirs.push(v);
            }
        }
        Self::build(&pts, &dirs, kernel)
    }

    /// Positivity certificate of the Gram matrix.
    pub fn certify(&self, tol: T) -> Result<PsdReport<T>> {
        psd_check(&self.gram, tol)
    }
}
