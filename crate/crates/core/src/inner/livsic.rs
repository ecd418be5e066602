//! The Livsic characteristic function of a simple partial isometry.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numeric::{op_norm, solve, CMatrix, CLUSTER_TOL, GRID_TOL};
use crate::operator::{b, DeficiencyFrame, PartialIsometrySystem};
use crate::scalar::Real;

use super::fit::recover_scalar_inner;
use super::functions::{CharacteristicFn, MatrixContractive};

/// `Θ(z) = b(z)·(D*J)⁻¹·D*Ji` where `D` is any basis of `ker(B* − z̄)`.
///
/// The value is basis independent. Real `z` is allowed away from the
/// exceptional set (boundary values).
pub fn livsic_value<T: Real>(
    system: &PartialIsometrySystem<T>,
    frame: &DeficiencyFrame<T>,
    z: Complex<T>,
) -> Result<CMatrix<T>> {
    let d = system.defect_space(z.conj())?;
    let a = d.adjoint() * &frame.j;
    let bz = b(z)?;
    let rhs = d.adjoint() * &frame.ji;
    Ok(solve(&a, &rhs, z)? * bz)
}

/// Matrix evaluator of the Livsic function on the given frames.
pub fn livsic_matrix<T: Real>(
    system: &PartialIsometrySystem<T>,
    frame: &DeficiencyFrame<T>,
) -> MatrixContractive<T> {
    let (sys, fr) = (system.clone(), frame.clone());
    MatrixContractive::new(frame.index(), Some(system.dim()), move |z| {
        livsic_value(&sys, &fr, z)
    })
}

/// The Livsic characteristic function.
///
/// For `n = 1` the scalar inner function is recovered from sampled values by
/// rational fitting and root finding, and returned in canonical form; for
/// `n > 1` the matrix evaluator is returned. `grid` (default: the crate's
/// 12-point grid) is used to certify invertibility of `D*J` and contractivity.
pub fn livsic_char<T: Real>(
    system: &PartialIsometrySystem<T>,
    frame: &DeficiencyFrame<T>,
    grid: Option<&[Complex<T>]>,
) -> Result<CharacteristicFn<T>> {
    let n = system.index();
    if n == 0 {
        return Err(Error::InvalidInput(
            "deficiency indices are (0,0): V is unitary".into(),
        ));
    }
    if !system.is_simple() {
        return Err(Error::InvalidInput(
            "V is not simple (sampled rank test)".into(),
        ));
    }
    let theta = livsic_matrix(system, frame);
    let default = super::default_grid::<T>();
    let grid = grid.unwrap_or(&default);
    let upper: Vec<Complex<T>> = grid.iter().copied().filter(|z| z.im > T::zero()).collect();
    let mut usable = 0;
    for &z in &upper {
        if let Ok(v) = theta.eval(z) {
            usable += 1;
            let nrm = op_norm(&v);
            if nrm > T::one() + T::lit(GRID_TOL) {
                return Err(Error::Recovery(format!(
                    "‖Θ(z)‖ = {} > 1 at z = {}{:+}i: numerical failure",
                    nrm.to_f64_lossy(),
                    z.re.to_f64_lossy(),
                    z.im.to_f64_lossy()
                )));
            }
        }
    }
    if usable == 0 && !upper.is_empty() {
        return Err(Error::InsufficientCoverage {
            usable,
            total: upper.len(),
        });
    }
    if n > 1 {
        return Ok(CharacteristicFn::Matrix(theta));
    }
    let scalar = recover_scalar_inner(
        |z| Ok(theta.eval(z)?[(0, 0)]),
        system.dim(),
        T::lit(CLUSTER_TOL),
    )?;
    Ok(CharacteristicFn::Scalar(
        scalar.canonicalized(T::lit(CLUSTER_TOL)),
    ))
}
