//! Dense complex matrix helpers built on `nalgebra`.

use nalgebra::{DMatrix, DVector, SVD};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{is_finite, Real};

use super::MAX_ITER;

/// Dense complex matrix.
pub type CMatrix<T> = DMatrix<Complex<T>>;
/// Dense complex column vector.
pub type CVector<T> = DVector<Complex<T>>;

/// Identity matrix of size `n`.
pub fn identity<T: Real>(n: usize) -> CMatrix<T> {
    CMatrix::identity(n, n)
}

/// Frobenius norm.
pub fn fro_norm<T: Real>(m: &CMatrix<T>) -> T {
    m.norm()
}

/// Spectral (operator 2-) norm.
pub fn op_norm<T: Real>(m: &CMatrix<T>) -> T {
    if m.is_empty() {
        return T::zero();
    }
    let svd = m.clone().svd(false, false);
    svd.singular_values
        .iter()
        .fold(T::zero(), |acc, &s| if s > acc { s } else { acc })
}

/// True when every entry is finite.
pub fn is_finite_matrix<T: Real>(m: &CMatrix<T>) -> bool {
    m.iter().all(|z| is_finite(*z))
}

/// ‖M − M*‖_F.
pub fn hermitian_defect<T: Real>(m: &CMatrix<T>) -> T {
    (m - m.adjoint()).norm()
}

/// ‖M*M − MM*‖_F (zero iff M is normal).
pub fn adjoint_defect<T: Real>(m: &CMatrix<T>) -> T {
    let a = m.adjoint();
    (&a * m - m * &a).norm()
}

/// ‖M*M − I‖_F.
pub fn unitary_defect<T: Real>(m: &CMatrix<T>) -> T {
    if !m.is_square() {
        return T::max_value().unwrap_or_else(T::one);
    }
    (m.adjoint() * m - identity::<T>(m.nrows())).norm()
}

/// ‖P² − P‖_F.
pub fn projection_defect<T: Real>(p: &CMatrix<T>) -> T {
    (p * p - p).norm()
}

/// Embeds `m` into the top-left block of a `size × size` zero matrix.
pub fn embed<T: Real>(m: &CMatrix<T>, rows: usize, cols: usize) -> CMatrix<T> {
    let mut out = CMatrix::zeros(rows, cols);
    out.view_mut((0, 0), (m.nrows(), m.ncols())).copy_from(m);
    out
}

/// Convergence threshold handed to the iterative decompositions. This is
/// nalgebra's own default of 5ε: with a threshold of exactly ε the complex SVD
/// can return an inaccurate factorisation without reporting failure.
pub(crate) fn decomposition_eps<T: Real>() -> T {
    T::machine_eps() * T::lit(5.0)
}

/// Bound on the reconstruction error accepted from a decomposition of `a`:
/// `√ε·max(1, ‖a‖)`. Loose enough for ordinary round-off, tight enough to catch
/// a factorisation that silently failed.
pub(crate) fn reconstruction_bound<T: Real>(a: &CMatrix<T>) -> T {
    let scale = a.norm().max(T::one());
    T::machine_eps().sqrt() * scale
}

/// SVD with both factors, verified by reconstruction.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // a NaN residual must fail
pub(crate) fn checked_svd<T: Real>(
    a: &CMatrix<T>,
) -> Result<SVD<Complex<T>, nalgebra::Dyn, nalgebra::Dyn>> {
    let svd = SVD::try_new(a.clone(), true, true, decomposition_eps(), MAX_ITER).ok_or(
        Error::NoConvergence {
            iterations: MAX_ITER,
        },
    )?;
    let u = svd.u.as_ref().expect("left factor requested");
    let v_t = svd.v_t.as_ref().expect("right factor requested");
    let s = CMatrix::from_diagonal(&svd.singular_values.map(|x| Complex::new(x, T::zero())));
    let residual = (u * s * v_t - a).norm();
    let bound = reconstruction_bound(a);
    if !(residual <= bound) {
        return Err(Error::Inaccurate {
            residual: residual.to_f64_lossy(),
            bound: bound.to_f64_lossy(),
        });
    }
    Ok(svd)
}

fn svd_full<T: Real>(a: &CMatrix<T>) -> Result<SVD<Complex<T>, nalgebra::Dyn, nalgebra::Dyn>> {
    // Pad with zero columns so the left factor is a full square unitary.
    let rows = a.nrows();
    let padded = if a.ncols() < rows {
        embed(a, rows, rows)
    } else {
        a.clone()
    };
    checked_svd(&padded)
}

fn rank_threshold<T: Real>(singular: &[T], rel_tol: T) -> T {
    let smax = singular
        .iter()
        .fold(T::zero(), |acc, &s| if s > acc { s } else { acc });
    rel_tol * (if smax > T::one() { smax } else { T::one() })
}

fn select_columns<T: Real>(u: &CMatrix<T>, keep: &[usize]) -> CMatrix<T> {
    let mut out = CMatrix::zeros(u.nrows(), keep.len());
    for (k, &j) in keep.iter().enumerate() {
        out.set_column(k, &u.column(j));
    }
    out
}

/// Orthonormal basis (columns) of ran(a), numerical rank cut at
/// `rel_tol·max(1, σ_max)`.
pub fn orthonormal_range<T: Real>(a: &CMatrix<T>, rel_tol: T) -> Result<CMatrix<T>> {
    if a.ncols() == 0 || a.nrows() == 0 {
        return Ok(CMatrix::zeros(a.nrows(), 0));
    }
    let svd = svd_full(a)?;
    let u = svd.u.as_ref().expect("left factor requested");
    let s: Vec<T> = svd.singular_values.iter().copied().collect();
    let thr = rank_threshold(&s, rel_tol);
    let keep: Vec<usize> = (0..s.len()).filter(|&j| s[j] > thr).collect();
    Ok(select_columns(u, &keep))
}

/// Orthonormal basis (columns) of ran(a)^⊥ in C^rows.
pub fn orthonormal_complement<T: Real>(a: &CMatrix<T>, rel_tol: T) -> Result<CMatrix<T>> {
    let rows = a.nrows();
    if a.ncols() == 0 {
        return Ok(identity(rows));
    }
    let svd = svd_full(a)?;
    let u = svd.u.as_ref().expect("left factor requested");
    let s: Vec<T> = svd.singular_values.iter().copied().collect();
    let thr = rank_threshold(&s, rel_tol);
    let keep: Vec<usize> = (0..u.ncols())
        .filter(|&j| j >= s.len() || s[j] <= thr)
        .collect();
    Ok(select_columns(u, &keep))
}

/// Orthonormal basis (columns) of ker(a).
pub fn null_space<T: Real>(a: &CMatrix<T>, rel_tol: T) -> Result<CMatrix<T>> {
    orthonormal_complement(&a.adjoint(), rel_tol)
}

/// Moore–Penrose pseudo-inverse with relative singular-value cut-off.
pub fn pinv<T: Real>(a: &CMatrix<T>, rel_tol: T) -> Result<CMatrix<T>> {
    if a.is_empty() {
        return Ok(CMatrix::zeros(a.ncols(), a.nrows()));
    }
    let svd = checked_svd(a)?;
    let s: Vec<T> = svd.singular_values.iter().copied().collect();
    let thr = rank_threshold(&s, rel_tol);
    svd.pseudo_inverse(thr)
        .map_err(|e| Error::InvalidInput(e.to_string()))
}

/// Solves `a x = b` for square invertible `a`; `z` names the evaluation point
/// for the singularity diagnostic.
pub fn solve<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>, z: Complex<T>) -> Result<CMatrix<T>> {
    if !a.is_square() || a.nrows() != b.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "solve: {}×{} system with {} right-hand rows",
            a.nrows(),
            a.ncols(),
            b.nrows()
        )));
    }
    let x = a.clone().lu().solve(b).ok_or_else(|| Error::singular(z))?;
    // Reject numerically singular systems: the solution must be finite and
    // the reciprocal condition estimate non-negligible.
    let scale = a.norm() * x.norm();
    let residual = (a * &x - b).norm();
    if !is_finite_matrix(&x) || residual > T::lit(1e-6) * (scale + b.norm()) {
        return Err(Error::singular(z));
    }
    let s = a.clone().svd(false, false).singular_values;
    let (mut smin, mut smax) = (T::max_value().unwrap_or_else(T::one), T::zero());
    for &v in s.iter() {
        if v < smin {
            smin = v;
        }
        if v > smax {
            smax = v;
        }
    }
    if smin <= T::machine_eps() * T::lit(16.0) * smax {
        return Err(Error::singular(z));
    }
    Ok(x)
}

/// Unitary polar factor of a square matrix (closest unitary in Frobenius norm).
pub fn polar_unitary<T: Real>(m: &CMatrix<T>) -> Result<CMatrix<T>> {
    let svd = checked_svd(m)?;
    let u = svd.u.expect("left factor requested");
    let v_t = svd.v_t.expect("right factor requested");
    Ok(u * v_t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    fn m(rows: usize, cols: usize, data: &[(f64, f64)]) -> CMatrix<f64> {
        CMatrix::from_row_iterator(rows, cols, data.iter().map(|&(a, b)| cx(a, b)))
    }

    #[test]
    fn complement_of_column_is_orthogonal() {
        let a = m(3, 1, &[(1.0, 0.0), (0.0, 1.0), (0.0, 0.0)]);
        let c = orthonormal_complement(&a, 1e-12).unwrap();
        assert_eq!(c.ncols(), 2);
        assert!((c.adjoint() * &a).norm() < 1e-14);
        assert!((c.adjoint() * &c - identity::<f64>(2)).norm() < 1e-14);
    }

    #[test]
    fn null_space_of_rank_one() {
        let a = m(2, 2, &[(1.0, 0.0), (1.0, 0.0), (1.0, 0.0), (1.0, 0.0)]);
        let n = null_space(&a, 1e-12).unwrap();
        assert_eq!(n.ncols(), 1);
        assert!((&a * &n).norm() < 1e-14);
    }

    #[test]
    fn range_of_zero_matrix_is_empty() {
        let a = CMatrix::<f64>::zeros(3, 2);
        assert_eq!(orthonormal_range(&a, 1e-12).unwrap().ncols(), 0);
    }

    #[test]
    fn polar_of_scaled_unitary() {
        let u = m(2, 2, &[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (0.0, 0.0)]);
        let p = polar_unitary(&(&u * cx::<f64>(3.0, 0.0))).unwrap();
        assert!((p - u).norm() < 1e-14);
    }

    #[test]
    fn singular_solve_rejected() {
        let a = m(2, 2, &[(1.0, 0.0), (2.0, 0.0), (2.0, 0.0), (4.0, 0.0)]);
        let b = identity::<f64>(2);
        assert!(solve(&a, &b, cx(0.0, 1.0)).is_err());
    }

    #[test]
    fn op_norm_of_diagonal() {
        let a = m(2, 2, &[(3.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, -4.0)]);
        assert!((op_norm(&a) - 4.0).abs() < 1e-14);
    }
}
