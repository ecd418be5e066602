//! Matrix-valued contractive functions, Herglotz functions and the
//! characteristic-function sum type.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numeric::CMatrix;
use crate::scalar::Real;

use super::scalar_inner::ScalarInner;

/// Shared, thread-safe matrix-valued evaluator.
pub type Evaluator<T> = Arc<dyn Fn(Complex<T>) -> Result<CMatrix<T>> + Send + Sync>;

/// A contractive analytic `n×n` matrix function given by an evaluator.
#[derive(Clone)]
pub struct MatrixContractive<T: Real> {
    dim: usize,
    degree_hint: Option<usize>,
    eval: Evaluator<T>,
}

impl<T: Real> fmt::Debug for MatrixContractive<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatrixContractive")
            .field("dim", &self.dim)
            .field("degree_hint", &self.degree_hint)
            .finish_non_exhaustive()
    }
}

impl<T: Real> MatrixContractive<T> {
    /// Wraps an evaluator returning `dim × dim` matrices.
    pub fn new<F>(dim: usize, degree_hint: Option<usize>, f: F) -> Self
    where
        F: Fn(Complex<T>) -> Result<CMatrix<T>> + Send + Sync + 'static,
    {
        Self {
            dim,
            degree_hint,
            eval: Arc::new(f),
        }
    }

    /// Matrix size `n`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Degree hint (McMillan degree of the rational function, if known).
    pub fn degree_hint(&self) -> Option<usize> {
        self.degree_hint
    }

    /// Evaluates at `z`.
    pub fn eval(&self, z: Complex<T>) -> Result<CMatrix<T>> {
        let v = (self.eval)(z)?;
        if v.shape() != (self.dim, self.dim) {
            return Err(Error::DimensionMismatch(format!(
                "evaluator returned {}×{}, expected {}×{}",
                v.nrows(),
                v.ncols(),
                self.dim,
                self.dim
            )));
        }
        Ok(v)
    }

    /// 1×1 function from a scalar inner function.
    pub fn from_scalar(f: &ScalarInner<T>) -> Self {
        let f = f.clone();
        let degree = f.degree();
        Self::new(1, Some(degree), move |z| {
            Ok(CMatrix::from_element(1, 1, f.eval(z)?))
        })
    }

    /// Constant function.
    pub fn constant(m: CMatrix<T>) -> Self {
        let dim = m.nrows();
        Self::new(dim, Some(0), move |_| Ok(m.clone()))
    }
}

/// A Herglotz function (positive real part on C₊). Values in C₋ follow the
/// extension convention `G(z̄)* = −G(z)`.
#[derive(Clone)]
pub struct HerglotzFn<T: Real> {
    dim: usize,
    upper: Evaluator<T>,
}

impl<T: Real> fmt::Debug for HerglotzFn<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HerglotzFn")
            .field("dim", &self.dim)
            .finish_non_exhaustive()
    }
}

impl<T: Real> HerglotzFn<T> {
    /// Wraps an evaluator valid on the upper half-plane.
    pub fn new<F>(dim: usize, upper: F) -> Self
    where
        F: Fn(Complex<T>) -> Result<CMatrix<T>> + Send + Sync + 'static,
    {
        Self {
            dim,
            upper: Arc::new(upper),
        }
    }

    /// Matrix size.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Evaluates at non-real `z`, reflecting lower half-plane points.
    pub fn eval(&self, z: Complex<T>) -> Result<CMatrix<T>> {
        if z.im > T::zero() {
            (self.upper)(z)
        } else if z.im < T::zero() {
            Ok(-(self.upper)(z.conj())?.adjoint())
        } else {
            Err(Error::real_point(z))
        }
    }

    /// Multiplies the function by a positive constant.
    pub fn scaled(&self, s: T) -> Self {
        let inner = self.upper.clone();
        Self::new(self.dim, move |z| Ok(inner(z)? * crate::scalar::re(s)))
    }
}

/// A characteristic function: scalar inner (n = 1) or matrix-valued.
#[derive(Debug, Clone)]
pub enum CharacteristicFn<T: Real> {
    /// Scalar rational inner function.
    Scalar(ScalarInner<T>),
    /// Matrix-valued contractive function.
    Matrix(MatrixContractive<T>),
}

impl<T: Real> CharacteristicFn<T> {
    /// Matrix size `n`.
    pub fn dim(&self) -> usize {
        match self {
            CharacteristicFn::Scalar(_) => 1,
            CharacteristicFn::Matrix(m) => m.dim(),
        }
    }

    /// Value at `z` as an `n×n` matrix.
    pub fn eval(&self, z: Complex<T>) -> Result<CMatrix<T>> {
        match self {
            CharacteristicFn::Scalar(f) => Ok(CMatrix::from_element(1, 1, f.eval(z)?)),
            CharacteristicFn::Matrix(m) => m.eval(z),
        }
    }

    /// The scalar inner function, when `n = 1`.
    pub fn as_scalar(&self) -> Option<&ScalarInner<T>> {
        match self {
            CharacteristicFn::Scalar(f) => Some(f),
            CharacteristicFn::Matrix(_) => None,
        }
    }

    /// Matrix-evaluator view.
    pub fn to_matrix(&self) -> MatrixContractive<T> {
        match self {
            CharacteristicFn::Scalar(f) => MatrixContractive::from_scalar(f),
            CharacteristicFn::Matrix(m) => m.clone(),
        }
    }
}

/// Evaluates a characteristic function (1×1 matrix in the scalar case).
pub fn eval_inner<T: Real>(f: &CharacteristicFn<T>, z: Complex<T>) -> Result<CMatrix<T>> {
    f.eval(z)
}
