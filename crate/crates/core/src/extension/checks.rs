//! The Alexandrov–Clark identity and invariance under H-fixing conjugation.

use nalgebra::ComplexField;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::inner::{livsic_matrix, MatrixContractive};
use crate::numeric::{unitary_defect, CMatrix};
use crate::operator::{canonical_extension, PartialIsometrySystem};
use crate::scalar::Real;

use super::data::{ext_char_matrix, ExtensionData};

/// Pointwise agreement of two matrix functions on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct AgreementReport<T: Real> {
    /// `deviation ≤ tol` with at least half the grid usable.
    pub holds: bool,
    /// Largest Frobenius deviation over usable points, relative to
    /// `max(1, ‖value‖)` (values grow near poles in C₋).
    pub deviation: T,
    /// Points where both sides evaluated.
    pub usable: usize,
    /// Points offered.
    pub total: usize,
}

fn agreement<T: Real>(
    f: &MatrixContractive<T>,
    g: impl Fn(Complex<T>) -> Result<CMatrix<T>>,
    grid: &[Complex<T>],
    tol: T,
) -> Result<AgreementReport<T>> {
    let (mut dev, mut usable) = (T::zero(), 0);
    for &z in grid {
        let (Ok(a), Ok(b)) = (f.eval(z), g(z)) else {
            continue;
        };
        usable += 1;
        let scale = b.norm().max(T::one());
        dev = dev.max((a - b).norm() / scale);
    }
    if usable == 0 || usable * 2 < grid.len() {
        return Err(Error::InsufficientCoverage {
            usable,
            total: grid.len(),
        });
    }
    Ok(AgreementReport {
        holds: dev <= tol,
        deviation: dev,
        usable,
        total: grid.len(),
    })
}

/// Alexandrov–Clark check: for the canonical extension with parameter
/// `uparam`, Φ equals `Θ·conj(uparam)` at every grid point. (With the
/// parameter convention of [`canonical_extension`] this is the transpose of
/// `U*Θ`.)
pub fn ac_check<T: Real>(
    system: &PartialIsometrySystem<T>,
    uparam: &CMatrix<T>,
    grid: &[Complex<T>],
    tol: T,
) -> Result<AgreementReport<T>> {
    let u = canonical_extension(system, uparam)?;
    let ext = ExtensionData::new(u, system.clone(), system.tol())?;
    let phi = ext_char_matrix(&ext)?;
    let theta = livsic_matrix(system, &system.frame());
    let conj_u = uparam.map(|c| c.conj());
    agreement(&phi, |z| Ok(theta.eval(z)? * &conj_u), grid, tol)
}

/// Φ is unchanged when `U` is replaced by `WUW*` for a unitary `W` acting as
/// the identity on H.
pub fn equivalence_invariance<T: Real>(
    ext: &ExtensionData<T>,
    w: &CMatrix<T>,
    grid: &[Complex<T>],
    tol: T,
) -> Result<AgreementReport<T>> {
    let (m, nn) = (ext.dim(), ext.base_dim());
    if w.shape() != (m, m) {
        return Err(Error::DimensionMismatch(format!("W must be {m}×{m}")));
    }
    let defect = unitary_defect(w);
    if defect > ext.tol() {
        return Err(Error::NotUnitary {
            defect: defect.to_f64_lossy(),
        });
    }
    let mut off = T::zero();
    for r in 0..m {
        for c in 0..m {
            if r < nn || c < nn {
                let target = if r == c { T::one() } else { T::zero() };
                off = off.max((w[(r, c)] - Complex::new(target, T::zero())).modulus());
            }
        }
    }
    if off > ext.tol() {
        return Err(Error::NotFixingBase);
    }
    let conj = w * ext.u() * w.adjoint();
    let other =
        ExtensionData::with_frame(conj, ext.base().clone(), ext.frame().clone(), ext.tol())?;
    let f = ext_char_matrix(ext)?;
    let g = ext_char_matrix(&other)?;
    agreement(&f, |z| g.eval(z), grid, tol)
}
