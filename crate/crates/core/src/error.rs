//! Error type shared by all modules.

use thiserror::Error;

/// Failures reported by library operations. Numeric payloads are converted to
/// `f64` for reporting regardless of the scalar type in use.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not normal: commutator norm ‖M*M − MM*‖ = {commutator:e}")]
    NotNormal { commutator: f64 },
    #[error("eigenvalue iteration failed to converge within {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("decomposition inaccurate: residual {residual:e} exceeds {bound:e}")]
    Inaccurate { residual: f64, bound: f64 },
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial has degree {degree}, at least 1 required")]
    DegreeTooLow { degree: usize },
    #[error("matrix is not Hermitian: ‖M − M*‖ = {asymmetry:e}")]
    NotHermitian { asymmetry: f64 },
    #[error("matrix is not unitary: ‖M*M − I‖ = {defect:e}")]
    NotUnitary { defect: f64 },
    #[error("not a partial isometry: ‖V*V − (V*V)²‖ = {defect:e}")]
    NotPartialIsometry { defect: f64 },
    #[error("unequal deficiency indices ({kernel}, {corange})")]
    UnequalIndices { kernel: usize, corange: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("point {re}{im:+}i is a pole of the map")]
    Pole { re: f64, im: f64 },
    #[error("point {re}{im:+}i lies on the real axis")]
    RealPoint { re: f64, im: f64 },
    #[error("rank defect at {re}{im:+}i: rank {rank}, expected {expected} (exceptional point)")]
    RankDefect {
        re: f64,
        im: f64,
        rank: usize,
        expected: usize,
    },
    #[error("matrix singular at {re}{im:+}i")]
    Singular { re: f64, im: f64 },
    #[error("non-finite entries in input")]
    NonFinite,
    #[error("‖Θ(i)‖ = {norm} is not < 1")]
    NotStrictlyContractiveAtI { norm: f64 },
    #[error("U is not a minimal unitary extension of V")]
    NotExtension,
    #[error("the unitary does not fix the base space H")]
    NotFixingBase,
    #[error("theta does not divide phi")]
    NotDivisible,
    #[error("function does not vanish at i")]
    MissingZeroAtI,
    #[error("rational recovery failed: {0}")]
    Recovery(String),
    #[error("insufficient grid coverage: {usable} of {total} points usable")]
    InsufficientCoverage { usable: usize, total: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Result alias for library operations.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn at<T: crate::Real>(
        z: num_complex::Complex<T>,
        make: fn(f64, f64) -> Error,
    ) -> Error {
        make(z.re.to_f64_lossy(), z.im.to_f64_lossy())
    }

    pub(crate) fn pole<T: crate::Real>(z: num_complex::Complex<T>) -> Error {
        Self::at(z, |re, im| Error::Pole { re, im })
    }

    pub(crate) fn real_point<T: crate::Real>(z: num_complex::Complex<T>) -> Error {
        Self::at(z, |re, im| Error::RealPoint { re, im })
    }

    pub(crate) fn singular<T: crate::Real>(z: num_complex::Complex<T>) -> Error {
        Self::at(z, |re, im| Error::Singular { re, im })
    }

    pub(crate) fn rank_defect<T: crate::Real>(
        z: num_complex::Complex<T>,
        rank: usize,
        expected: usize,
    ) -> Error {
        Error::RankDefect {
            re: z.re.to_f64_lossy(),
            im: z.im.to_f64_lossy(),
            rank,
            expected,
        }
    }
}
