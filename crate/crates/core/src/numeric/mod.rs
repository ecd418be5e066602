//! Numerical substrate: dense complex matrices, spectral decomposition of
//! normal matrices, polynomial roots and positivity certification.

mod eigen;
mod matrix;
mod poly;
mod psd;

pub use eigen::{eig_normal, eigenvalues, SpectralDecomposition};
pub(crate) use matrix::checked_svd;
pub use matrix::{
    adjoint_defect, embed, fro_norm, hermitian_defect, identity, is_finite_matrix, null_space,
    op_norm, orthonormal_complement, orthonormal_range, pinv, polar_unitary, projection_defect,
    solve, unitary_defect, CMatrix, CVector,
};
pub use poly::{cluster_points, poly_from_roots, poly_roots, Polynomial};
pub use psd::{psd_check, PsdReport};

/// Default tolerance for golden comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Default tolerance for sampled-grid checks.
pub const GRID_TOL: f64 = 1e-7;
/// Root-clustering tolerance used when recovering inner functions.
pub const CLUSTER_TOL: f64 = 1e-6;
/// Maximum number of Schur/QR sweeps before reporting non-convergence.
pub const MAX_ITER: usize = 10_000;
