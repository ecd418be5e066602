//! Model maps Γ_A, Ω_A, the kernels k_w and K_w, and the Λ identities.

use nalgebra::ComplexField;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::inner::livsic_value;
use crate::numeric::{identity, solve, CMatrix};
use crate::operator::b;
use crate::scalar::{imag_unit, re, Real};

use super::data::{clark_measure, ext_char_matrix, ExtensionData};

/// `Ω_A(z) = 2i((i − z̄) + (i + z̄)U)⁻¹J` on C^M and its compression
/// `Γ_A(z) = P_H Ω_A(z)` (first `N` rows). Both are co-analytic in `z`, and
/// `Γ_A(z)` takes values in `ker(B* − z̄)`. The formula is the Cayley form of
/// `(A + i)(A − z̄)⁻¹J` and needs no special case when 1 is an eigenvalue.
#[derive(Debug, Clone)]
pub struct ModelMaps<T: Real> {
    u: CMatrix<T>,
    jm: CMatrix<T>,
    base_dim: usize,
}

impl<T: Real> ModelMaps<T> {
    /// `Ω_A(z)`, an `M×n` matrix.
    pub fn omega(&self, z: Complex<T>) -> Result<CMatrix<T>> {
        let i = imag_unit::<T>();
        let zb = z.conj();
        let m = self.u.nrows();
        let factor = identity::<T>(m) * (i - zb) + &self.u * (i + zb);
        solve(&factor, &(&self.jm * (i * re(T::lit(2.0)))), z)
    }

    /// `Γ_A(z)`, an `N×n` matrix.
    pub fn gamma(&self, z: Complex<T>) -> Result<CMatrix<T>> {
        let o = self.omega(z)?;
        Ok(o.rows(0, self.base_dim).into_owned())
    }
}

/// Builds the model maps of an extension.
pub fn model_maps<T: Real>(ext: &ExtensionData<T>) -> ModelMaps<T> {
    ModelMaps {
        u: ext.u().clone(),
        jm: ext.j_embedded(),
        base_dim: ext.base_dim(),
    }
}

fn require_nonreal<T: Real>(w: Complex<T>, z: Complex<T>) -> Result<()> {
    if z.im == T::zero() {
        return Err(Error::real_point(z));
    }
    if w.im == T::zero() {
        return Err(Error::real_point(w));
    }
    Ok(())
}

/// `k_w(z) = Γ_A(z)*Γ_A(w)`, the reproducing kernel of the quasi-model space.
pub fn small_kernel<T: Real>(
    ext: &ExtensionData<T>,
    w: Complex<T>,
    z: Complex<T>,
) -> Result<CMatrix<T>> {
    require_nonreal(w, z)?;
    let m = model_maps(ext);
    Ok(m.gamma(z)?.adjoint() * m.gamma(w)?)
}

/// `k_w(z)` from the Livsic function:
/// `B(z)·(1 − Θ(z)Θ(w)*)/(1 − b(z)b(w)‾)·B(w)*` with `B(z) = Γ_A(z)*J`.
pub fn small_kernel_from_livsic<T: Real>(
    ext: &ExtensionData<T>,
    w: Complex<T>,
    z: Complex<T>,
) -> Result<CMatrix<T>> {
    require_nonreal(w, z)?;
    let den = Complex::new(T::one(), T::zero()) - b(z)? * b(w)?.conj();
    if den.modulus() <= T::machine_eps() * T::lit(16.0) {
        return Err(Error::pole(w.conj()));
    }
    let m = model_maps(ext);
    let j = &ext.frame().j;
    let bz = m.gamma(z)?.adjoint() * j;
    let bw = m.gamma(w)?.adjoint() * j;
    let tz = livsic_value(ext.base(), ext.frame(), z)?;
    let tw = livsic_value(ext.base(), ext.frame(), w)?;
    let mid = (identity::<T>(ext.index()) - tz * tw.adjoint()) / den;
    Ok(bz * mid * bw.adjoint())
}

/// `K_w(z) = Ω_A(z)*Ω_A(w)`, the kernel of the extension space (the Herglotz
/// kernel of πG for the Clark measure).
pub fn big_kernel<T: Real>(
    ext: &ExtensionData<T>,
    w: Complex<T>,
    z: Complex<T>,
) -> Result<CMatrix<T>> {
    require_nonreal(w, z)?;
    let m = model_maps(ext);
    Ok(m.omega(z)?.adjoint() * m.omega(w)?)
}

/// `K_w(z)` from the Clark measure:
/// `σ({1}) + Σ_k (1 + t_k²)σ_k/((t_k − z)(t_k − w̄))`, `t_k = b⁻¹(λ_k)`.
pub fn big_kernel_from_measure<T: Real>(
    ext: &ExtensionData<T>,
    w: Complex<T>,
    z: Complex<T>,
) -> Result<CMatrix<T>> {
    require_nonreal(w, z)?;
    let sigma = clark_measure(ext)?;
    let n = ext.index();
    let one = Complex::new(T::one(), T::zero());
    let mut out = CMatrix::zeros(n, n);
    for a in sigma.atoms() {
        if (a.point - one).modulus() <= crate::herglotz::atom_tol::<T>() {
            out += &a.weight;
        } else {
            let t = crate::operator::b_inv(a.point)?.re;
            let t = re(t);
            out += &a.weight * ((one + t * t) / ((t - z) * (t - w.conj())));
        }
    }
    Ok(out)
}

/// Outcome of the Λ-identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaReport<T: Real> {
    /// All three deviations are within tolerance and coverage is ≥ 80%.
    pub holds: bool,
    /// `max ‖Λ_A(z) − Φ(z)‖`.
    pub lambda_deviation: T,
    /// `max ‖Λ̃_A(z) − Φ(z)‖`.
    pub lambda_tilde_deviation: T,
    /// `max ‖Λ_A(z) − Λ̃_A(z)‖`.
    pub mutual_deviation: T,
    /// Grid points where every factor was invertible.
    pub usable: usize,
    /// Upper-half-plane grid points offered.
    pub total: usize,
}

/// Checks `Λ_A(z) = b(z)K_{z̄}(−i)⁻¹K_{z̄}(i)` and
/// `Λ̃_A(z) = b(z)K_i(z)⁻¹K_{−i}(z)` against Φ[A;B] at the upper points of
/// `grid`; points with singular factors are skipped.
pub fn lambda_identity<T: Real>(
    ext: &ExtensionData<T>,
    grid: &[Complex<T>],
    tol: T,
) -> Result<LambdaReport<T>> {
    let i = imag_unit::<T>();
    let phi = ext_char_matrix(ext)?;
    let upper: Vec<Complex<T>> = grid.iter().copied().filter(|z| z.im > T::zero()).collect();
    let (mut d1, mut d2, mut d3, mut usable) = (T::zero(), T::zero(), T::zero(), 0);
    for &z in &upper {
        let eval = || -> Result<(CMatrix<T>, CMatrix<T>, CMatrix<T>)> {
            let bz = b(z)?;
            let l = solve(
                &big_kernel(ext, z.conj(), -i)?,
                &big_kernel(ext, z.conj(), i)?,
                z,
            )? * bz;
            let lt = solve(&big_kernel(ext, i, z)?, &big_kernel(ext, -i, z)?, z)? * bz;
            Ok((l, lt, phi.eval(z)?))
        };
        let Ok((l, lt, f)) = eval() else { continue };
        usable += 1;
        d1 = d1.max((&l - &f).norm());
        d2 = d2.max((&lt - &f).norm());
        d3 = d3.max((&l - &lt).norm());
    }
    if upper.is_empty() || usable * 5 < upper.len() * 4 {
        return Err(Error::InsufficientCoverage {
            usable,
            total: upper.len(),
        });
    }
    Ok(LambdaReport {
        holds: d1 <= tol && d2 <= tol && d3 <= tol,
        lambda_deviation: d1,
        lambda_tilde_deviation: d2,
        mutual_deviation: d3,
        usable,
        total: upper.len(),
    })
}
