//! Spectral decomposition of normal matrices via the complex Schur form.

use nalgebra::{ComplexField, Schur};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{re, Real};

use super::matrix::{
    adjoint_defect, decomposition_eps, identity, is_finite_matrix, reconstruction_bound, CMatrix,
};
use super::poly::cluster_points;
use super::MAX_ITER;

/// Eigenvalues with their orthogonal spectral projections.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition<T: Real> {
    /// Distinct (clustered) eigenvalues.
    pub eigenvalues: Vec<Complex<T>>,
    /// Orthogonal projection onto the eigenspace of each eigenvalue.
    pub projections: Vec<CMatrix<T>>,
}

impl<T: Real> SpectralDecomposition<T> {
    /// Σ λ_k P_k.
    pub fn reconstruct(&self) -> CMatrix<T> {
        let n = self.projections.first().map_or(0, |p| p.nrows());
        let mut out = CMatrix::zeros(n, n);
        for (l, p) in self.eigenvalues.iter().zip(&self.projections) {
            out += p * *l;
        }
        out
    }

    /// Rank of each projection (multiplicity of each eigenvalue).
    pub fn multiplicities(&self) -> Vec<usize> {
        self.projections
            .iter()
            .map(|p| {
                let tr: Complex<T> = p.trace();
                tr.re.round().to_usize().unwrap_or(0)
            })
            .collect()
    }

    /// Index of the eigenvalue within `tol` of `z`, if any.
    pub fn find(&self, z: Complex<T>, tol: T) -> Option<usize> {
        self.eigenvalues
            .iter()
            .position(|l| (*l - z).modulus() <= tol)
    }
}

/// Eigenvalues of a general square matrix (with algebraic multiplicity),
/// read from the diagonal of its complex Schur form.
pub fn eigenvalues<T: Real>(m: &CMatrix<T>) -> Result<Vec<Complex<T>>> {
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
        return Ok(Vec::new());
    }
    let (_, t) = checked_schur(m)?;
    Ok((0..t.nrows()).map(|k| t[(k, k)]).collect())
}

/// Complex Schur form `(Q, T)` with `M = QTQ*`, verified by reconstruction.
#[allow(clippy::neg_cmp_op_on_partial_ord)] // a NaN residual must fail
fn checked_schur<T: Real>(m: &CMatrix<T>) -> Result<(CMatrix<T>, CMatrix<T>)> {
    let schur =
        Schur::try_new(m.clone(), decomposition_eps(), MAX_ITER).ok_or(Error::NoConvergence {
            iterations: MAX_ITER,
        })?;
    let (q, t) = schur.unpack();
    let residual = (&q * &t * q.adjoint() - m).norm();
    let bound = reconstruction_bound(m);
    if !(residual <= bound) {
        return Err(Error::Inaccurate {
            residual: residual.to_f64_lossy(),
            bound: bound.to_f64_lossy(),
        });
    }
    Ok((q, t))
}

/// Spectral decomposition of a normal matrix.
///
/// Eigenvalues closer than `tol·max(1, ‖M‖)` are merged into one cluster whose
/// projection is built from the corresponding Schur vectors.
pub fn eig_normal<T: Real>(m: &CMatrix<T>, tol: T) -> Result<SpectralDecomposition<T>> {
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
    let n = m.nrows();
    if n == 0 {
        return Ok(SpectralDecomposition {
            eigenvalues: Vec::new(),
            projections: Vec::new(),
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
    let commutator = adjoint_defect(m);
    if commutator > tol * scale * scale {
        return Err(Error::NotNormal {
            commutator: commutator.to_f64_lossy(),
        });
    }
    let (q, t) = checked_schur(m)?;
    let diag: Vec<Complex<T>> = (0..n).map(|k| t[(k, k)]).collect();
    let clusters = cluster_indices(&diag, tol * scale);

    let mut eigenvalues = Vec::with_capacity(clusters.len());
    let mut projections = Vec::with_capacity(clusters.len());
    for members in clusters {
        let mut mean = Complex::new(T::zero(), T::zero());
        let mut basis = CMatrix::zeros(n, members.len());
        for (k, &j) in members.iter().enumerate() {
            mean += diag[j];
            basis.set_column(k, &q.column(j));
        }
        eigenvalues.push(mean / re(T::from_count(members.len())));
        projections.push(&basis * basis.adjoint());
    }
    let dec = SpectralDecomposition {
        eigenvalues,
        projections,
    };

    let bound = T::lit(10.0) * tol * scale;
    let residual = (dec.reconstruct() - m).norm();
    let completeness = (dec
        .projections
        .iter()
        .fold(CMatrix::zeros(n, n), |acc, p| acc + p)
        - identity::<T>(n))
    .norm();
    let worst = if residual > completeness {
        residual
    } else {
        completeness
    };
    if worst > bound {
        return Err(Error::Inaccurate {
            residual: worst.to_f64_lossy(),
            bound: bound.to_f64_lossy(),
        });
    }
    Ok(dec)
}

/// Groups indices of `points` into single-linkage clusters of radius `tol`,
/// preserving first-occurrence order.
fn cluster_indices<T: Real>(points: &[Complex<T>], tol: T) -> Vec<Vec<usize>> {
    let groups = cluster_points(points, tol);
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); groups.len()];
    for (idx, g) in groups.into_iter().enumerate() {
        for j in g.1 {
            out[idx].push(j);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    fn fdeg_u() -> CMatrix<f64> {
        let d = [0.0, 0.6, 0.8, 1.0, 0.0, 0.0, 0.0, 0.8, -0.6];
        CMatrix::from_row_iterator(3, 3, d.iter().map(|&x| cx(x, 0.0)))
    }

    #[test]
    fn identity_single_cluster() {
        let dec = eig_normal(&identity::<f64>(3), 1e-9).unwrap();
        assert_eq!(dec.eigenvalues.len(), 1);
        assert!((dec.eigenvalues[0] - cx(1.0, 0.0)).norm() < 1e-14);
        assert!((&dec.projections[0] - identity::<f64>(3)).norm() < 1e-14);
    }

    #[test]
    fn fdeg_unitary_eigenvalues() {
        let dec = eig_normal(&fdeg_u(), 1e-9).unwrap();
        assert_eq!(dec.eigenvalues.len(), 3);
        for want in [cx(1.0, 0.0), cx(-0.8, 0.6), cx(-0.8, -0.6)] {
            assert!(dec.find(want, 1e-12).is_some(), "missing {want}");
        }
        assert_eq!(dec.multiplicities(), vec![1, 1, 1]);
    }

    #[test]
    fn non_normal_rejected() {
        let m = CMatrix::<f64>::from_row_iterator(
            2,
            2,
            [cx(0.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0)],
        );
        match eig_normal(&m, 1e-9) {
            Err(Error::NotNormal { commutator }) => assert!(commutator > 0.5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn f32_instantiation() {
        let m = CMatrix::<f32>::from_row_iterator(
            2,
            2,
            [cx(0.0, 0.0), cx(1.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0)],
        );
        let dec = eig_normal(&m, 1e-5).unwrap();
        assert_eq!(dec.eigenvalues.len(), 2);
    }

    #[test]
    fn general_eigenvalues_of_nilpotent() {
        let m = CMatrix::<f64>::from_row_iterator(
            2,
            2,
            [cx(0.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0), cx(0.0, 0.0)],
        );
        let ev = eigenvalues(&m).unwrap();
        assert!(ev.iter().all(|z| z.norm() < 1e-12));
    }
}
