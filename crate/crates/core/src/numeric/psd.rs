//! Positivity certification for Hermitian matrices.

use nalgebra::SymmetricEigen;

use crate::error::{Error, Result};
use crate::scalar::{re, Real};

use super::matrix::{hermitian_defect, is_finite_matrix, CMatrix};
use super::MAX_ITER;

/// Outcome of a positivity check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdReport<T: Real> {
    /// True iff the smallest eigenvalue is ≥ −tol.
    pub psd: bool,
    /// Smallest eigenvalue of the Hermitian part.
    pub min_eigenvalue: T,
}

/// Certifies positive semi-definiteness of a Hermitian matrix.
pub fn psd_check<T: Real>(m: &CMatrix<T>, tol: T) -> Result<PsdReport<T>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "{}×{} is not square",
            m.nrows(),
            m.ncols()
        )));
    }
    if !is_finite_matrix(m) {
        return Err(Error::NonFinite);
    }
    if m.nrows() == 0 {
        return Ok(PsdReport {
            psd: true,
            min_eigenvalue: T::zero(),
        });
    }
    let scale = {
        let s = m.norm();
        if s > T::one() {
            s
        } else {
            T::one()
        }
    };
    let asym = hermitian_defect(m);
    if asym > tol * scale {
        return Err(Error::NotHermitian {
            asymmetry: asym.to_f64_lossy(),
        });
    }
    let h = (m + m.adjoint()) * re(T::lit(0.5));
    let eig = SymmetricEigen::try_new(h, super::matrix::decomposition_eps(), MAX_ITER).ok_or(
        Error::NoConvergence {
            iterations: MAX_ITER,
        },
    )?;
    let min = eig
        .eigenvalues
        .iter()
        .fold(T::max_value().unwrap_or_else(T::one), |acc, &l| {
            if l < acc {
                l
            } else {
                acc
            }
        });
    Ok(PsdReport {
        psd: min >= -tol,
        min_eigenvalue: min,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::identity;

    #[test]
    fn identity_is_psd() {
        let r = psd_check(&identity::<f64>(3), 1e-9).unwrap();
        assert!(r.psd);
        assert!((r.min_eigenvalue - 1.0).abs() < 1e-14);
    }

    #[test]
    fn minus_identity_is_not_psd() {
        let r = psd_check(&(-identity::<f64>(2)), 1e-9).unwrap();
        assert!(!r.psd);
        assert!((r.min_eigenvalue + 1.0).abs() < 1e-14);
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut m = identity::<f64>(2);
        m[(0, 1)] = crate::scalar::cx(1.0, 0.0);
        assert!(matches!(
            psd_check(&m, 1e-9),
            Err(Error::NotHermitian { .. })
        ));
    }
}
