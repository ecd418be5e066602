//! Partial isometry systems and their deficiency data.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numeric::{identity, is_finite_matrix, orthonormal_complement, CMatrix};
use crate::scalar::{imag_unit, Real};

/// Relative cut-off used for numerical ranks of deficiency computations.
pub(crate) fn rank_tol<T: Real>() -> T {
    T::lit(1e-8)
}

/// A partial isometry `V` on C^N standing for a simple symmetric operator `B`
/// with `V = b(B)`, together with its deficiency data.
#[derive(Debug, Clone)]
pub struct PartialIsometrySystem<T: Real> {
    v: CMatrix<T>,
    ker_basis: CMatrix<T>,
    coran_basis: CMatrix<T>,
    initial_basis: CMatrix<T>,
    dom_basis: CMatrix<T>,
    simple: bool,
    tol: T,
}

/// Isometric frames of the two deficiency subspaces at ∓i.
#[derive(Debug, Clone)]
pub struct DeficiencyFrame<T: Real> {
    /// N×n isometry onto `ker(B* + i) = ran(V)^⊥`.
    pub j: CMatrix<T>,
    /// N×n isometry onto `ker(B* − i) = ker V`.
    pub ji: CMatrix<T>,
}

impl<T: Real> DeficiencyFrame<T> {
    /// Validates user-supplied frames against a system.
    pub fn new(
        j: CMatrix<T>,
        ji: CMatrix<T>,
        system: &PartialIsometrySystem<T>,
        tol: T,
    ) -> Result<Self> {
        let (nn, n) = (system.dim(), system.index());
        if j.shape() != (nn, n) || ji.shape() != (nn, n) {
            return Err(Error::DimensionMismatch(format!(
                "frames must be {nn}×{n}, got {:?} and {:?}",
                j.shape(),
                ji.shape()
            )));
        }
        let id = identity::<T>(n);
        let iso = (j.adjoint() * &j - &id).norm() + (ji.adjoint() * &ji - &id).norm();
        let ran_v = (j.adjoint() * system.v()).norm();
        let ker_v = (system.v() * &ji).norm();
        if iso > tol || ran_v > tol || ker_v > tol {
            return Err(Error::InvalidInput(format!(
                "frame invariants violated: isometry {:e}, J ⊥ ran V {:e}, V·Ji {:e}",
                iso.to_f64_lossy(),
                ran_v.to_f64_lossy(),
                ker_v.to_f64_lossy()
            )));
        }
        Ok(Self { j, ji })
    }

    /// Deficiency index `n`.
    pub fn index(&self) -> usize {
        self.j.ncols()
    }
}

impl<T: Real> PartialIsometrySystem<T> {
    /// The partial isometry `V`.
    pub fn v(&self) -> &CMatrix<T> {
        &self.v
    }

    /// Dimension `N` of H.
    pub fn dim(&self) -> usize {
        self.v.nrows()
    }

    /// Deficiency index `n = dim ker V = dim ran(V)^⊥`.
    pub fn index(&self) -> usize {
        self.ker_basis.ncols()
    }

    /// Orthonormal basis of `ker V = ker(B* − i)`.
    pub fn ker_basis(&self) -> &CMatrix<T> {
        &self.ker_basis
    }

    /// Orthonormal basis of `ran(V)^⊥ = ker(B* + i)`.
    pub fn coran_basis(&self) -> &CMatrix<T> {
        &self.coran_basis
    }

    /// Orthonormal basis of the initial space `ker(V)^⊥`.
    pub fn initial_basis(&self) -> &CMatrix<T> {
        &self.initial_basis
    }

    /// Basis of `dom B = (1 − V)·ker(V)^⊥`.
    pub fn dom_basis(&self) -> &CMatrix<T> {
        &self.dom_basis
    }

    /// `B` applied to the domain basis: `B(1 − V)g = i(1 + V)g`.
    pub fn b_on_dom_basis(&self) -> CMatrix<T> {
        let n = self.dim();
        (identity::<T>(n) + &self.v) * &self.initial_basis * imag_unit::<T>()
    }

    /// Result of the sampled simplicity test.
    pub fn is_simple(&self) -> bool {
        self.simple
    }

    /// Tolerance the system was validated with.
    pub fn tol(&self) -> T {
        self.tol
    }

    /// The stored frames `J = coranBasis`, `Ji = kerBasis`.
    pub fn frame(&self) -> DeficiencyFrame<T> {
        DeficiencyFrame {
            j: self.coran_basis.clone(),
            ji: self.ker_basis.clone(),
        }
    }

    /// Orthonormal basis of `ker(B* − z)`, allowing real `z` away from the
    /// exceptional set.
    pub(crate) fn defect_space(&self, z: Complex<T>) -> Result<CMatrix<T>> {
        let i = imag_unit::<T>();
        let zb = z.conj();
        let n = self.dim();
        let factor = identity::<T>(n) * (i - zb) + &self.v * (i + zb);
        let ran = factor * &self.initial_basis;
        let comp = orthonormal_complement(&ran, rank_tol())?;
        if comp.ncols() != self.index() {
            return Err(Error::rank_defect(z, n - comp.ncols(), n - self.index()));
        }
        Ok(comp)
    }
}

/// Validates `V` and computes its deficiency data.
pub fn deficiency_data<T: Real>(v: &CMatrix<T>, tol: T) -> Result<PartialIsometrySystem<T>> {
    if !v.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "V must be square, got {}×{}",
            v.nrows(),
            v.ncols()
        )));
    }
    if !is_finite_matrix(v) {
        return Err(Error::NonFinite);
    }
    let n = v.nrows();
    let d = v.adjoint() * v;
    let defect = (&d * &d - &d).norm();
    if defect > tol {
        return Err(Error::NotPartialIsometry {
            defect: defect.to_f64_lossy(),
        });
    }
    let svd = crate::numeric::checked_svd(v)?;
    let u = svd.u.as_ref().expect("left factor requested");
    let vt = svd.v_t.as_ref().expect("right factor requested");
    let half = T::lit(0.5);
    let (mut ker, mut coran, mut init) = (Vec::new(), Vec::new(), Vec::new());
    for (k, &s) in svd.singular_values.iter().enumerate() {
        // Singular values of a partial isometry are 0 or 1.
        if s <= half {
            ker.push(vt.row(k).adjoint());
            coran.push(u.column(k).into_owned());
        } else {
            init.push(vt.row(k).adjoint());
        }
    }
    if ker.len() != coran.len() {
        return Err(Error::UnequalIndices {
            kernel: ker.len(),
            corange: coran.len(),
        });
    }
    let stack = |cols: &[nalgebra::DVector<Complex<T>>]| {
        let mut m = CMatrix::zeros(n, cols.len());
        for (k, c) in cols.iter().enumerate() {
            m.set_column(k, c);
        }
        m
    };
    let ker_basis = stack(&ker);
    let coran_basis = stack(&coran);
    let initial_basis = stack(&init);
    let dom_basis = (identity::<T>(n) - v) * &initial_basis;
    let mut sys = PartialIsometrySystem {
        v: v.clone(),
        ker_basis,
        coran_basis,
        initial_basis,
        dom_basis,
        simple: false,
        tol,
    };
    sys.simple = simplicity(&sys)?;
    Ok(sys)
}

/// Sample grid for the simplicity test: at least 20 points in C₊ ∪ C₋, more
/// when `N` exceeds what 20 deficiency spaces of dimension `n` can span.
fn simplicity_grid<T: Real>(points: usize) -> Vec<Complex<T>> {
    (0..points)
        .map(|k| {
            let theta = T::pi() * (T::from_count(k) + T::lit(0.5)) / T::from_count(points / 2);
            let r = T::lit(0.5) + T::lit(0.37) * T::from_count(k % 5);
            Complex::new(r * theta.cos(), r * theta.sin())
        })
        .collect()
}

fn simplicity<T: Real>(sys: &PartialIsometrySystem<T>) -> Result<bool> {
    let (nn, n) = (sys.dim(), sys.index());
    if n == 0 {
        return Ok(nn == 0);
    }
    let points = 20.max(2 * nn.div_ceil(n) + 4);
    let points = points + points % 2;
    let mut cols = Vec::new();
    for z in simplicity_grid::<T>(points) {
        if let Ok(d) = sys.defect_space(z) {
            for c in d.column_iter() {
                cols.push(c.into_owned());
            }
        }
    }
    let mut m = CMatrix::zeros(nn, cols.len());
    for (k, c) in cols.iter().enumerate() {
        m.set_column(k, c);
    }
    let rank = crate::numeric::orthonormal_range(&m, rank_tol())?.ncols();
    Ok(rank == nn)
}

/// Orthonormal basis of `ker(B* − z)` for non-real `z`.
pub fn defect_vector<T: Real>(
    system: &PartialIsometrySystem<T>,
    z: Complex<T>,
) -> Result<CMatrix<T>> {
    if z.im == T::zero() {
        return Err(Error::real_point(z));
    }
    system.defect_space(z)
}

/// Scales a vector so that its first entry of maximal modulus is real positive
/// (used to compare spans of single vectors).
#[cfg(test)]
pub(crate) fn normalise_phase<T: Real>(v: &CMatrix<T>) -> CMatrix<T> {
    use crate::scalar::re;
    use nalgebra::ComplexField;
    let mut best = Complex::new(T::zero(), T::zero());
    for z in v.iter() {
        if z.modulus() > best.modulus() + T::lit(1e-12) {
            best = *z;
        }
    }
    let phase = best.conj() / re(best.modulus());
    v * phase / re(v.norm())
}
