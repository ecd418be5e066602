//! Recovery of a scalar rational inner function from sampled values.

use nalgebra::ComplexField;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numeric::{poly_roots, CMatrix, CVector, Polynomial};
use crate::operator::b_inv;
use crate::scalar::{re, Real};

use super::scalar_inner::ScalarInner;

/// Radius of the sampling circle in the disk variable `ζ = b(z)`.
const SAMPLE_RADIUS: f64 = 0.75;
/// Relative residual accepted for the rational fit.
const FIT_TOL: f64 = 1e-8;

/// Recovers `Θ` of degree ≤ `max_degree` from its values.
///
/// The fit is carried out in the disk variable `ζ = b(z)`: on `4d + 8`
/// points of the circle `|ζ| = 3/4` the linear least-squares problem
/// `θ·Q − P = 0` with `Q(0) = 1` is solved for increasing degree `d` until the
/// residual is negligible. The zeros are the roots of `P` (clustered with
/// `cluster_tol`), mapped back by `b⁻¹`; the constant is fitted last.
pub fn recover_scalar_inner<T: Real, F>(
    f: F,
    max_degree: usize,
    cluster_tol: T,
) -> Result<ScalarInner<T>>
where
    F: Fn(Complex<T>) -> Result<Complex<T>>,
{
    if max_degree == 0 {
        return Err(Error::Recovery("maximal degree must be positive".into()));
    }
    let m = 4 * max_degree + 8;
    let mut zetas = Vec::with_capacity(m);
    let mut values = Vec::with_capacity(m);
    for k in 0..m {
        let angle = T::two_pi() * T::from_count(k) / T::from_count(m) + T::lit(0.1);
        let zeta = crate::scalar::polar(T::lit(SAMPLE_RADIUS), angle);
        let z = b_inv(zeta)?;
        if let Ok(v) = f(z) {
            if crate::scalar::is_finite(v) {
                zetas.push(zeta);
                values.push(v);
            }
        }
    }
    let scale = values.iter().fold(
        T::one(),
        |acc, v| if v.modulus() > acc { v.modulus() } else { acc },
    );

    for d in 1..=max_degree {
        if zetas.len() < 2 * d + 2 {
            return Err(Error::InsufficientCoverage {
                usable: zetas.len(),
                total: m,
            });
        }
        let rows = zetas.len();
        let mut a = CMatrix::<T>::zeros(rows, 2 * d + 1);
        let mut rhs = CVector::<T>::zeros(rows);
        for (r, (&zeta, &theta)) in zetas.iter().zip(&values).enumerate() {
            let mut pow = Complex::new(T::one(), T::zero());
            for k in 0..=d {
                a[(r, k)] = pow;
                if k >= 1 {
                    a[(r, d + k)] = -theta * pow;
                }
                pow *= zeta;
            }
            rhs[r] = theta;
        }
        let svd = crate::numeric::checked_svd(&a)?;
        let x = svd
            .solve(&rhs, T::machine_eps() * T::lit(64.0))
            .map_err(|e| Error::Recovery(e.to_string()))?;
        let resid = (&a * &x - &rhs).camax();
        if resid > T::lit(FIT_TOL) * scale {
            continue;
        }
        let p = Polynomial::new((0..=d).map(|k| x[k]).collect());
        let alphas = poly_roots(&p, cluster_tol)?;
        let mut zeros = Vec::with_capacity(alphas.len());
        for alpha in alphas {
            if alpha.modulus() >= T::one() {
                return Err(Error::Recovery(format!(
                    "zero outside the disk (|ζ| = {}): result is not inner",
                    alpha.modulus().to_f64_lossy()
                )));
            }
            zeros.push(b_inv(alpha)?);
        }
        let bl = ScalarInner::blaschke(zeros);
        let mut c = Complex::new(T::zero(), T::zero());
        for (&zeta, &theta) in zetas.iter().zip(&values) {
            c += theta / bl.eval(b_inv(zeta)?)?;
        }
        c /= re(T::from_count(zetas.len()));
        let modulus = c.modulus();
        if (modulus - T::one()).abs() > T::lit(1e-6) {
            return Err(Error::Recovery(format!(
                "fitted constant has modulus {}: result is not inner",
                modulus.to_f64_lossy()
            )));
        }
        let out = bl.with_constant(c / re(modulus));
        // Independent check against the raw values.
        let worst = zetas
            .iter()
            .zip(&values)
            .map(|(&zeta, &theta)| {
                (out.eval(b_inv(zeta).unwrap_or(zeta)).unwrap_or(theta) - theta).modulus()
            })
            .fold(T::zero(), |acc, e| if e > acc { e } else { acc });
        if worst > T::lit(1e-6) {
            return Err(Error::Recovery(format!(
                "recovered function deviates by {}",
                worst.to_f64_lossy()
            )));
        }
        return Ok(out);
    }
    Err(Error::Recovery(format!(
        "no rational fit of degree ≤ {max_degree}"
    )))
}
