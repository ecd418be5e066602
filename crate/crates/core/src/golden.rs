//! The two worked examples, with their inputs and exact expected values.
//!
//! *fdeg*: `V` on C² (`Ve₁ = e₂`, `Ve₂ = 0`) and the unitary extension `U` on
//! C³, which has eigenvalue 1.
//!
//! *fdeg2*: the partial isometry `W` on C³ extending `V`, and its canonical
//! unitary extension `X`. With `B = b⁻¹(V)`, `T = b⁻¹(W)`, `A = b⁻¹(X)`:
//! `B ⊂ T ⊂ A`, and `B ≲ T` is witnessed by `D(t) = −i(4/5)/(b(t)² − 3/5)`.

use std::sync::Arc;

use num_complex::Complex;

use crate::error::Result;
use crate::extension::{ext_char, herglotz_data, ExtensionData, LineFn, OrderWitness};
use crate::inner::ScalarInner;
use crate::numeric::CMatrix;
use crate::operator::{b, deficiency_data, DeficiencyFrame};
use crate::scalar::{cx, imag_unit, re, Real};

fn mat<T: Real>(rows: usize, cols: usize, d: &[(f64, f64)]) -> CMatrix<T> {
    CMatrix::from_row_iterator(rows, cols, d.iter().map(|&(a, b)| cx(a, b)))
}

/// `V = [[0, 0], [1, 0]]`.
pub fn fdeg_v<T: Real>() -> CMatrix<T> {
    mat(2, 2, &[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.0, 0.0)])
}

/// `U = [[0, 3/5, 4/5], [1, 0, 0], [0, 4/5, −3/5]]`.
pub fn fdeg_u<T: Real>() -> CMatrix<T> {
    mat(
        3,
        3,
        &[
            (0.0, 0.0),
            (0.6, 0.0),
            (0.8, 0.0),
            (1.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
            (0.8, 0.0),
            (-0.6, 0.0),
        ],
    )
}

/// `W = [[0, 3/5, 4/5], [1, 0, 0], [0, 0, 0]]`.
pub fn fdeg2_w<T: Real>() -> CMatrix<T> {
    mat(
        3,
        3,
        &[
            (0.0, 0.0),
            (0.6, 0.0),
            (0.8, 0.0),
            (1.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
        ],
    )
}

/// `X = [[0, 3/5, 4/5], [1, 0, 0], [0, −4i/5, 3i/5]]`.
pub fn fdeg2_x<T: Real>() -> CMatrix<T> {
    mat(
        3,
        3,
        &[
            (0.0, 0.0),
            (0.6, 0.0),
            (0.8, 0.0),
            (1.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
            (0.0, 0.0),
            (0.0, -0.8),
            (0.0, 0.6),
        ],
    )
}

fn e<T: Real>(n: usize, k: usize) -> CMatrix<T> {
    let mut v = CMatrix::zeros(n, 1);
    v[(k, 0)] = cx(1.0, 0.0);
    v
}

/// `U` over `V` with `J = e₁`, `Ji = e₂`.
pub fn fdeg_extension<T: Real>(tol: T) -> Result<ExtensionData<T>> {
    let sys = deficiency_data(&fdeg_v::<T>(), tol)?;
    let frame = DeficiencyFrame::new(e(2, 0), e(2, 1), &sys, tol)?;
    ExtensionData::with_frame(fdeg_u(), sys, frame, tol)
}

/// `X` over `V` with `J = e₁`, `Ji = e₂`.
pub fn fdeg2_extension<T: Real>(tol: T) -> Result<ExtensionData<T>> {
    let sys = deficiency_data(&fdeg_v::<T>(), tol)?;
    let frame = DeficiencyFrame::new(e(2, 0), e(2, 1), &sys, tol)?;
    ExtensionData::with_frame(fdeg2_x(), sys, frame, tol)
}

/// `X` over `W` with `J = e₃` and `Ji = X*e₃` (a canonical extension).
pub fn fdeg2_t_extension<T: Real>(tol: T) -> Result<ExtensionData<T>> {
    let sys = deficiency_data(&fdeg2_w::<T>(), tol)?;
    let x = fdeg2_x::<T>();
    let ji = x.adjoint() * e::<T>(3, 2);
    let frame = DeficiencyFrame::new(e(3, 2), ji, &sys, tol)?;
    ExtensionData::with_frame(x, sys, frame, tol)
}

/// `λ = (2/5)√6 − i/5`.
pub fn fdeg2_lambda<T: Real>() -> Complex<T> {
    cx(0.4 * 6f64.sqrt(), -0.2)
}

/// Eigenvalues of `U`: `1, −4/5 ± 3i/5`.
pub fn fdeg_eigenvalues<T: Real>() -> Vec<Complex<T>> {
    vec![cx(1.0, 0.0), cx(-0.8, 0.6), cx(-0.8, -0.6)]
}

/// Clark measure of `U` over `V`: `(point, weight)`.
pub fn fdeg_clark_weights<T: Real>() -> Vec<(Complex<T>, T)> {
    vec![
        (cx(1.0, 0.0), T::lit(4.0 / 9.0)),
        (cx(-0.8, 0.6), T::lit(5.0 / 18.0)),
        (cx(-0.8, -0.6), T::lit(5.0 / 18.0)),
    ]
}

/// Zeros of `Θ_B`: `{i, i}`.
pub fn fdeg_theta_zeros<T: Real>() -> Vec<Complex<T>> {
    vec![imag_unit(), imag_unit()]
}

/// Zeros of `Φ[A;B]` for fdeg: `{i, i, i/4}`.
pub fn fdeg_phi_zeros<T: Real>() -> Vec<Complex<T>> {
    vec![imag_unit(), imag_unit(), cx(0.0, 0.25)]
}

/// Eigenvalues of `X` (roots of `det(z − X)`): `i, λ, −λ̄`.
pub fn fdeg2_eigenvalues<T: Real>() -> Vec<Complex<T>> {
    let l = fdeg2_lambda::<T>();
    vec![imag_unit(), l, -l.conj()]
}

/// Clark measure of `X` at `e₃` (over `W`).
pub fn fdeg2_sigma_x<T: Real>() -> Vec<(Complex<T>, T)> {
    let l = fdeg2_lambda::<T>();
    vec![
        (imag_unit(), T::lit(2.0 / 3.0)),
        (l, T::lit(1.0 / 6.0)),
        (-l.conj(), T::lit(1.0 / 6.0)),
    ]
}

/// Clark measure of `X` at `e₁` (over `V`).
pub fn fdeg2_sigma_v<T: Real>() -> Vec<(Complex<T>, T)> {
    let l = fdeg2_lambda::<T>();
    vec![
        (imag_unit(), T::lit(1.0 / 6.0)),
        (l, T::lit(5.0 / 12.0)),
        (-l.conj(), T::lit(5.0 / 12.0)),
    ]
}

/// Zeros of `Θ_T`: `{i, i(4 + √15), i(4 − √15)}`.
pub fn fdeg2_theta_t_zeros<T: Real>() -> Vec<Complex<T>> {
    let s = 15f64.sqrt();
    vec![imag_unit(), cx(0.0, 4.0 + s), cx(0.0, 4.0 - s)]
}

/// Zeros of `Φ[A;B]` for fdeg2: `{i, i, (i − 4)/(i + 4)}`.
pub fn fdeg2_phi_zeros<T: Real>() -> Vec<Complex<T>> {
    let mu = cx::<T>(-4.0, 1.0) / cx::<T>(4.0, 1.0);
    vec![imag_unit(), imag_unit(), mu]
}

/// `D(t) = −i(4/5)/(b(t)² − 3/5)` as a 1×1 line function.
pub fn fdeg2_d<T: Real>() -> LineFn<T> {
    Arc::new(|t: T| {
        let bt = b(re(t))?;
        let v = cx::<T>(0.0, -0.8) / (bt * bt - re(T::lit(0.6)));
        Ok(CMatrix::from_element(1, 1, v))
    })
}

/// `f(t) = (1 − b(t))(i/π)/(t + i)`, the image of `dom B` spanned by `e₁ − e₂`.
pub fn fdeg2_f<T: Real>() -> LineFn<T> {
    Arc::new(|t: T| {
        let i = imag_unit::<T>();
        let one = Complex::new(T::one(), T::zero());
        let v = (one - b(re(t))?) * i / (re(T::pi()) * (re(t) + i));
        Ok(CMatrix::from_element(1, 1, v))
    })
}

/// The full fdeg2 witness for `B ≲ T`: Θ₁ = Θ_B, Φ = Φ[A;B], the closed-form
/// `D`, Σ̃ the line measure of `X` at `e₁`, Σ that of `X` at `e₃`.
pub fn fdeg2_witness<T: Real>(tol: T) -> Result<OrderWitness<T>> {
    let small = fdeg2_extension(tol)?;
    let big = fdeg2_t_extension(tol)?;
    let phi = ext_char(&small)?.as_scalar().cloned().ok_or_else(|| {
        crate::error::Error::Recovery("fdeg2 characteristic function is not scalar".into())
    })?;
    Ok(OrderWitness {
        theta_small: ScalarInner::blaschke(fdeg_theta_zeros()),
        phi,
        d: fdeg2_d(),
        sigma_small: herglotz_data(&small)?.measure().clone(),
        sigma_big: herglotz_data(&big)?.measure().clone(),
    })
}
