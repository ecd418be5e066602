//! Verifier for the three-condition characterisation of the partial order
//! `B₁ ≲ B₂` with a supplied witness.

use std::fmt;
use std::sync::Arc;

use nalgebra::ComplexField;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::herglotz::{atom_tol, AtomicMatrixMeasure, Domain};
use crate::inner::{divides, ScalarInner};
use crate::numeric::{is_finite_matrix, pinv, CMatrix};
use crate::operator::b_inv;
use crate::scalar::{imag_unit, re, Real};

use super::data::ExtensionData;

/// A matrix-valued function on the real line (evaluated at atoms).
pub type LineFn<T> = Arc<dyn Fn(T) -> Result<CMatrix<T>> + Send + Sync>;

/// A [`LineFn`] given by a table of `(t, value)` pairs; points off the table
/// evaluate to the zero matrix of the table's shape.
pub fn tabulated<T: Real>(table: Vec<(T, CMatrix<T>)>) -> LineFn<T> {
    let shape = table.first().map_or((0, 0), |(_, v)| v.shape());
    Arc::new(move |t| {
        let tol = atom_tol::<T>() * (T::one() + t.abs());
        Ok(table
            .iter()
            .find(|(s, _)| (*s - t).abs() <= tol)
            .map_or_else(|| CMatrix::zeros(shape.0, shape.1), |(_, v)| v.clone()))
    })
}

/// Supplied witness for `B₁ ≲ B₂`.
#[derive(Clone)]
pub struct OrderWitness<T: Real> {
    /// Livsic function Θ₁ of the smaller operator.
    pub theta_small: ScalarInner<T>,
    /// The mediating characteristic function Φ.
    pub phi: ScalarInner<T>,
    /// `D(t)`, an `n₂×n₁` matrix at each atom of Σ.
    pub d: LineFn<T>,
    /// Σ̃, the line measure attached to `B₁` (size `n₁`).
    pub sigma_small: AtomicMatrixMeasure<T>,
    /// Σ, the line measure attached to `B₂` (size `n₂`).
    pub sigma_big: AtomicMatrixMeasure<T>,
}

impl<T: Real> fmt::Debug for OrderWitness<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrderWitness")
            .field("theta_small", &self.theta_small)
            .field("phi", &self.phi)
            .field("sigma_small", &self.sigma_small)
            .field("sigma_big", &self.sigma_big)
            .finish_non_exhaustive()
    }
}

/// Outcome of [`pochar_verify`].
#[derive(Debug, Clone, PartialEq)]
pub struct PocharReport<T: Real> {
    /// Θ₁ divides Φ.
    pub cond1: bool,
    /// Support containment, `Σ̃ = D*ΣD` at atoms, `D` finite at atoms.
    pub cond2: bool,
    /// Both moment sums vanish for every domain image.
    pub cond3: bool,
    /// `max ‖Σ̃(t) − D(t)*Σ(t)D(t)‖` over atoms.
    pub weight_deviation: T,
    /// `max ‖Σ_t Σ̃(t)f(t)‖` over domain images.
    pub moment_small: T,
    /// `max ‖Σ_t Σ(t)D(t)f(t)‖` over domain images.
    pub moment_big: T,
    /// Human-readable reasons for failed conditions.
    pub notes: Vec<String>,
}

impl<T: Real> PocharReport<T> {
    /// All three conditions hold.
    pub fn holds(&self) -> bool {
        self.cond1 && self.cond2 && self.cond3
    }
}

/// Checks the three conditions for a supplied witness. Mismatches are reported
/// as failed conditions; only malformed input is an error.
pub fn pochar_verify<T: Real>(
    witness: &OrderWitness<T>,
    domain_images: &[LineFn<T>],
    tol: T,
) -> Result<PocharReport<T>> {
    let (small, big) = (&witness.sigma_small, &witness.sigma_big);
    if small.domain() != Domain::Line || big.domain() != Domain::Line {
        return Err(Error::InvalidInput(
            "witness measures must live on the line".into(),
        ));
    }
    let mut notes = Vec::new();
    let cond1 = divides(&witness.theta_small, &witness.phi, T::lit(1e-6));
    if !cond1 {
        notes.push("Θ₁ does not divide Φ".to_string());
    }

    let point_tol = |t: T| atom_tol::<T>() * (T::one() + t.abs());
    let mut support = true;
    for a in small.atoms() {
        if a.weight.norm() > tol && big.weight_at(a.point, point_tol(a.point.re)).is_none() {
            support = false;
            notes.push(format!(
                "Σ̃ has an atom at {} outside supp Σ",
                a.point.re.to_f64_lossy()
            ));
        }
    }
    let (mut weight_dev, mut finite) = (T::zero(), true);
    let mut d_at = Vec::with_capacity(big.len());
    for a in big.atoms() {
        let t = a.point.re;
        let d = (witness.d)(t)?;
        if d.nrows() != big.dim() || d.ncols() != small.dim() {
            return Err(Error::DimensionMismatch(format!(
                "D(t) is {}×{}, expected {}×{}",
                d.nrows(),
                d.ncols(),
                big.dim(),
                small.dim()
            )));
        }
        if !is_finite_matrix(&d) {
            finite = false;
            notes.push(format!("D is not finite at {}", t.to_f64_lossy()));
        }
        let pulled = d.adjoint() * &a.weight * &d;
        let target = small
            .weight_at(a.point, point_tol(t))
            .cloned()
            .unwrap_or_else(|| CMatrix::zeros(small.dim(), small.dim()));
        weight_dev = weight_dev.max((pulled - target).norm());
        d_at.push(d);
    }
    if weight_dev > tol {
        notes.push(format!(
            "Σ̃ ≠ D*ΣD (deviation {:e})",
            weight_dev.to_f64_lossy()
        ));
    }
    let cond2 = support && finite && weight_dev <= tol;

    let (mut m_small, mut m_big) = (T::zero(), T::zero());
    for f in domain_images {
        let mut s1 = CMatrix::zeros(small.dim(), 1);
        for a in small.atoms() {
            s1 += &a.weight * f(a.point.re)?;
        }
        let mut s2 = CMatrix::zeros(big.dim(), 1);
        for (a, d) in big.atoms().iter().zip(&d_at) {
            s2 += &a.weight * d * f(a.point.re)?;
        }
        m_small = m_small.max(s1.norm());
        m_big = m_big.max(s2.norm());
    }
    let cond3 = m_small <= tol && m_big <= tol;
    if !cond3 {
        notes.push(format!(
            "moment sums do not vanish ({:e}, {:e})",
            m_small.to_f64_lossy(),
            m_big.to_f64_lossy()
        ));
    }
    Ok(PocharReport {
        cond1,
        cond2,
        cond3,
        weight_deviation: weight_dev,
        moment_small: m_small,
        moment_big: m_big,
        notes,
    })
}

/// Images of vectors `h ∈ H` (columns of `hs`, `N` rows) in the
/// `L²(Σ)`-representation of an extension:
/// `f_h(t_k) = (i/π)(t_k + i)⁻¹(J*P_kJ)⁺J*P_k h` at the line atoms, zero
/// elsewhere.
pub fn domain_images<T: Real>(ext: &ExtensionData<T>, hs: &CMatrix<T>) -> Result<Vec<LineFn<T>>> {
    if hs.nrows() != ext.base_dim() {
        return Err(Error::DimensionMismatch(format!(
            "vectors must have {} entries",
            ext.base_dim()
        )));
    }
    let i = imag_unit::<T>();
    let one = Complex::new(T::one(), T::zero());
    let jm = ext.j_embedded();
    let h_m = crate::numeric::embed(hs, ext.dim(), hs.ncols());
    let mut tables: Vec<Vec<(T, CMatrix<T>)>> = vec![Vec::new(); hs.ncols()];
    let spec = ext.spectrum();
    for (&l, p) in spec.eigenvalues.iter().zip(&spec.projections) {
        if (l - one).modulus() <= atom_tol::<T>() {
            continue;
        }
        let t = b_inv(l)?.re;
        let w = jm.adjoint() * p * &jm;
        let scale = i / (re(T::pi()) * (re(t) + i));
        let vals =
            pinv(&w, T::lit(1e-10).max(T::machine_eps().sqrt()))? * jm.adjoint() * p * &h_m * scale;
        for (c, table) in tables.iter_mut().enumerate() {
            table.push((t, vals.columns(c, 1).into_owned()));
        }
    }
    Ok(tables.into_iter().map(tabulated).collect())
}
