//! The cyclic expansion `h = Σ_j b_w†(A)^j P_w (b_w(B)Q_w)^j h + remainder`.

use nalgebra::ComplexField;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numeric::{eigenvalues, embed, identity, pinv, solve, CMatrix, CVector};
use crate::operator::defect_vector;
use crate::scalar::{imag_unit, Real};

use super::data::ExtensionData;

/// Partial sums of the cyclic expansion with their exactness and tail data.
#[derive(Debug, Clone)]
pub struct CyclicExpansion<T: Real> {
    /// `S_k = Σ_{j≤k} b_w†(A)^j P_w V_w^j h` in C^M, for `k = 0..=K`.
    pub partial_sums: Vec<CVector<T>>,
    /// `‖h − S_k − b_w†(A)^{k+1}V_w^{k+1}h‖` (zero up to rounding).
    pub identity_residuals: Vec<T>,
    /// `‖V_w^{k+1}h‖`, the norm of the remainder term.
    pub tails: Vec<T>,
    /// Spectral radius of `V_w = b_w(B)Q_w`.
    pub spectral_radius: T,
    /// The matrix `V_w` on C^N.
    pub v_w: CMatrix<T>,
}

/// Expands `h ∈ H = C^N` to order `k` at the non-real point `w`.
///
/// `V_w = b_w(B)Q_w` maps `(B − w̄)x ↦ (B − w)x` and vanishes on
/// `ker(B* − w)`; `P_w` projects onto `ker(B* − w)`; and
/// `b_w†(A) = ((i − w̄) + (i + w̄)U)((i − w) + (i + w)U)⁻¹`.
pub fn cyclic_expansion<T: Real>(
    ext: &ExtensionData<T>,
    h: &CVector<T>,
    w: Complex<T>,
    k: usize,
) -> Result<CyclicExpansion<T>> {
    if w.im == T::zero() {
        return Err(Error::real_point(w));
    }
    let (nn, m) = (ext.base_dim(), ext.dim());
    if h.len() != nn {
        return Err(Error::DimensionMismatch(format!(
            "h has length {}, H has dimension {nn}",
            h.len()
        )));
    }
    let i = imag_unit::<T>();
    let wb = w.conj();
    let v = ext.base().v();
    let g = ext.base().initial_basis();
    let id_n = identity::<T>(nn);
    let rm = (&id_n * (i - wb) + v * (i + wb)) * g;
    let rp = (&id_n * (i - w) + v * (i + w)) * g;
    let v_w = rp * pinv(&rm, T::lit(1e-10).max(T::machine_eps().sqrt()))?;

    let id_m = identity::<T>(m);
    let num = &id_m * (i - wb) + ext.u() * (i + wb);
    let den = &id_m * (i - w) + ext.u() * (i + w);
    // T = num·den⁻¹, computed as (den*⁻¹ num*)*.
    let t = solve(&den.adjoint(), &num.adjoint(), w)?.adjoint();

    let d = defect_vector(ext.base(), w)?;
    let p_w = &d * d.adjoint();

    let spectral_radius = eigenvalues(&v_w)?
        .iter()
        .fold(T::zero(), |acc, l| acc.max(l.modulus()));

    let h_m = embed(&CMatrix::from_column_slice(nn, 1, h.as_slice()), m, 1)
        .column(0)
        .into_owned();
    let mut y = h.clone();
    let mut t_pow = id_m.clone();
    let mut sum = CVector::zeros(m);
    let lift = |x: &CVector<T>| {
        embed(&CMatrix::from_column_slice(nn, 1, x.as_slice()), m, 1)
            .column(0)
            .into_owned()
    };
    let (mut partial_sums, mut identity_residuals, mut tails) =
        (Vec::new(), Vec::new(), Vec::new());
    for _ in 0..=k {
        sum += &t_pow * lift(&(&p_w * &y));
        y = &v_w * &y;
        t_pow = &t_pow * &t;
        let remainder = &t_pow * lift(&y);
        identity_residuals.push((&h_m - &sum - remainder).norm());
        tails.push(y.norm());
        partial_sums.push(sum.clone());
    }
    Ok(CyclicExpansion {
        partial_sums,
        identity_residuals,
        tails,
        spectral_radius,
        v_w,
    })
}
