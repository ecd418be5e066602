//! Extension data, Clark measures and the characteristic function Φ[A;B].

use nalgebra::ComplexField;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::herglotz::{
    atom_tol, measure_transform, Atom, AtomicMatrixMeasure, Domain, HerglotzData,
};
use crate::inner::{CharacteristicFn, MatrixContractive, ScalarInner};
use crate::numeric::{
    eig_normal, embed, poly_from_roots, poly_roots, CMatrix, Polynomial, SpectralDecomposition,
    CLUSTER_TOL,
};
use crate::operator::{verify_extension, DeficiencyFrame, PartialIsometrySystem};
use crate::scalar::{imag_unit, re, Real};

/// A minimal unitary extension `U` on C^M of a partial isometry on H = C^N.
#[derive(Debug, Clone)]
pub struct ExtensionData<T: Real> {
    u: CMatrix<T>,
    base: PartialIsometrySystem<T>,
    frame: DeficiencyFrame<T>,
    one_is_eigenvalue: bool,
    spectrum: SpectralDecomposition<T>,
    tol: T,
}

impl<T: Real> ExtensionData<T> {
    /// Validates `u` as a minimal extension of `base`, using the stored frames.
    pub fn new(u: CMatrix<T>, base: PartialIsometrySystem<T>, tol: T) -> Result<Self> {
        let frame = base.frame();
        Self::with_frame(u, base, frame, tol)
    }

    /// As [`ExtensionData::new`] with explicitly supplied frames.
    pub fn with_frame(
        u: CMatrix<T>,
        base: PartialIsometrySystem<T>,
        frame: DeficiencyFrame<T>,
        tol: T,
    ) -> Result<Self> {
        if frame.j.nrows() != base.dim() || frame.index() != base.index() {
            return Err(Error::DimensionMismatch(
                "frame does not match the base system".into(),
            ));
        }
        if !verify_extension(&u, &base, tol)? {
            return Err(Error::NotExtension);
        }
        let spectral_tol = if tol > atom_tol::<T>() {
            tol
        } else {
            atom_tol::<T>()
        };
        let mut spectrum = eig_normal(&u, spectral_tol)?;
        for l in spectrum.eigenvalues.iter_mut() {
            *l /= re(l.modulus());
        }
        let one = Complex::new(T::one(), T::zero());
        let one_is_eigenvalue = spectrum.find(one, atom_tol::<T>()).is_some();
        Ok(Self {
            u,
            base,
            frame,
            one_is_eigenvalue,
            spectrum,
            tol,
        })
    }

    /// The unitary `U`.
    pub fn u(&self) -> &CMatrix<T> {
        &self.u
    }

    /// The base system.
    pub fn base(&self) -> &PartialIsometrySystem<T> {
        &self.base
    }

    /// The deficiency frames in use.
    pub fn frame(&self) -> &DeficiencyFrame<T> {
        &self.frame
    }

    /// Whether 1 is an eigenvalue of `U` (the exceptional case).
    pub fn one_is_eigenvalue(&self) -> bool {
        self.one_is_eigenvalue
    }

    /// Spectral decomposition of `U` (unimodular eigenvalues).
    pub fn spectrum(&self) -> &SpectralDecomposition<T> {
        &self.spectrum
    }

    /// Validation tolerance.
    pub fn tol(&self) -> T {
        self.tol
    }

    /// Dimension `M` of the extension space.
    pub fn dim(&self) -> usize {
        self.u.nrows()
    }

    /// Dimension `N` of H.
    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    /// Deficiency index `n`.
    pub fn index(&self) -> usize {
        self.frame.index()
    }

    /// `J` embedded in C^M.
    pub fn j_embedded(&self) -> CMatrix<T> {
        embed(&self.frame.j, self.dim(), self.index())
    }

    /// `Ji` embedded in C^M.
    pub fn ji_embedded(&self) -> CMatrix<T> {
        embed(&self.frame.ji, self.dim(), self.index())
    }
}

/// `σ_U(Ω) = J*P_U(Ω)J`: atoms at the eigenvalues of `U` with weights
/// `J*P_kJ`; the total mass is `I_n`.
pub fn clark_measure<T: Real>(ext: &ExtensionData<T>) -> Result<AtomicMatrixMeasure<T>> {
    let n = ext.index();
    if n == 0 {
        return Err(Error::InvalidInput("deficiency indices are (0,0)".into()));
    }
    let jm = ext.j_embedded();
    let atoms = ext
        .spectrum
        .eigenvalues
        .iter()
        .zip(&ext.spectrum.projections)
        .map(|(&point, p)| {
            let w = jm.adjoint() * p * &jm;
            let weight = (&w + w.adjoint()) * re(T::lit(0.5));
            Atom { point, weight }
        })
        .collect();
    AtomicMatrixMeasure::new(Domain::Circle, n, atoms, atom_tol::<T>())
}

/// Half-plane Herglotz data `(P, Σ)` of the Clark measure.
pub fn herglotz_data<T: Real>(ext: &ExtensionData<T>) -> Result<HerglotzData<T>> {
    measure_transform(&clark_measure(ext)?)
}

/// Φ[A;B] as a matrix evaluator `(G − 1)(G + 1)⁻¹` built from the Herglotz
/// data of the Clark measure. Exact (no fitting); boundary values are
/// available away from the atoms.
pub fn ext_char_matrix<T: Real>(ext: &ExtensionData<T>) -> Result<MatrixContractive<T>> {
    Ok(herglotz_data(ext)?.to_contractive())
}

/// Φ[A;B].
///
/// For `n = 1` the finite Blaschke product is obtained exactly: with
/// `Π(z) = Π_k(t_k − z)` over the line atoms, `(G − 1)Π` and `(G + 1)Π` are
/// polynomials whose roots are the zeros and poles of Φ; the constant is the
/// ratio of their leading coefficients (the true constant, not normalised).
/// For `n > 1` the matrix evaluator of [`ext_char_matrix`] is returned.
pub fn ext_char<T: Real>(ext: &ExtensionData<T>) -> Result<CharacteristicFn<T>> {
    let h = herglotz_data(ext)?;
    if ext.index() > 1 {
        return Ok(CharacteristicFn::Matrix(h.to_contractive()));
    }
    let i = imag_unit::<T>();
    let atoms = h.circle_weights();
    let sign = if atoms.len() % 2 == 0 {
        T::one()
    } else {
        -T::one()
    };
    let ts: Vec<Complex<T>> = atoms.iter().map(|(t, _)| re(*t)).collect();
    let pi_all = poly_from_roots(&ts, re(sign));
    let p = h.p()[(0, 0)];
    let mut g_pi = &Polynomial::new(vec![Complex::new(T::zero(), T::zero()), -i * p]) * &pi_all;
    for (k, (t, w)) in atoms.iter().enumerate() {
        let others: Vec<Complex<T>> = ts
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, &x)| x)
            .collect();
        let rest = poly_from_roots(&others, re(-sign));
        let lin = Polynomial::new(vec![Complex::new(T::one(), T::zero()), re(*t)]);
        let term = (&lin * &rest).scale(w[(0, 0)] / i);
        g_pi = &g_pi + &term;
    }
    let num = (&g_pi - &pi_all).trimmed(T::lit(1e-13).max(T::machine_eps() * T::lit(16.0)));
    let den = (&g_pi + &pi_all).trimmed(T::lit(1e-13).max(T::machine_eps() * T::lit(16.0)));
    if num.degree() != den.degree() {
        return Err(Error::Recovery(format!(
            "numerator and denominator degrees differ ({} vs {})",
            num.degree(),
            den.degree()
        )));
    }
    let constant = num.leading() / den.leading();
    let zeros = if num.degree() == 0 {
        Vec::new()
    } else {
        poly_roots(&num, T::lit(CLUSTER_TOL))?
    };
    let phi = ScalarInner::new(constant / re(constant.modulus()), zeros);
    // Consistency with the exact evaluator on a few points of C₊.
    let exact = h.to_contractive();
    for z in crate::inner::default_upper_grid::<T>() {
        let (Ok(a), Ok(b)) = (phi.eval(z), exact.eval(z)) else {
            continue;
        };
        let dev = (a - b[(0, 0)]).modulus();
        if dev > T::lit(1e-6) {
            return Err(Error::Recovery(format!(
                "root recovery deviates by {:e}",
                dev.to_f64_lossy()
            )));
        }
    }
    Ok(CharacteristicFn::Scalar(phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inner::{coincide, livsic_char, livsic_matrix};
    use crate::operator::{canonical_extension, deficiency_data};
    use crate::scalar::cx;

    fn real(rows: usize, cols: usize, d: &[f64]) -> CMatrix<f64> {
        CMatrix::from_row_iterator(rows, cols, d.iter().map(|&x| cx(x, 0.0)))
    }

    pub(crate) fn fdeg() -> ExtensionData<f64> {
        let v = real(2, 2, &[0.0, 0.0, 1.0, 0.0]);
        let u = real(3, 3, &[0.0, 0.6, 0.8, 1.0, 0.0, 0.0, 0.0, 0.8, -0.6]);
        ExtensionData::new(u, deficiency_data(&v, 1e-9).unwrap(), 1e-9).unwrap()
    }

    #[test]
    fn fdeg_clark_measure() {
        let ext = fdeg();
        assert!(ext.one_is_eigenvalue());
        let s = clark_measure(&ext).unwrap();
        let at = |p: Complex<f64>| s.weight_at(p, 1e-10).unwrap()[(0, 0)].re;
        assert!((at(cx(1.0, 0.0)) - 4.0 / 9.0).abs() < 1e-12);
        assert!((at(cx(-0.8, 0.6)) - 5.0 / 18.0).abs() < 1e-12);
        assert!((at(cx(-0.8, -0.6)) - 5.0 / 18.0).abs() < 1e-12);
        assert!((s.total_mass()[(0, 0)] - cx(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn fdeg_ext_char_zeros() {
        let phi = ext_char(&fdeg()).unwrap();
        let phi = phi.as_scalar().unwrap();
        assert_eq!(phi.degree(), 3);
        assert_eq!(phi.multiplicity_at(cx(0.0, 1.0), 1e-8), 2);
        assert_eq!(phi.multiplicity_at(cx(0.0, 0.25), 1e-8), 1);
        assert!(phi.eval(cx(0.0, 1.0)).unwrap().norm() < 1e-12);
    }

    #[test]
    fn non_extension_rejected() {
        let v = real(2, 2, &[0.0, 0.0, 1.0, 0.0]);
        let sys = deficiency_data(&v, 1e-9).unwrap();
        let u = real(3, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(
            ExtensionData::new(u, sys, 1e-9).unwrap_err(),
            Error::NotExtension
        );
    }

    #[test]
    fn canonical_parameter_one_gives_livsic() {
        let v = real(2, 2, &[0.0, 0.0, 1.0, 0.0]);
        let sys = deficiency_data(&v, 1e-9).unwrap();
        let u = canonical_extension(&sys, &CMatrix::identity(1, 1)).unwrap();
        let ext = ExtensionData::new(u, sys.clone(), 1e-9).unwrap();
        let phi = ext_char(&ext).unwrap();
        let theta = livsic_char(&sys, &sys.frame(), None).unwrap();
        assert!(coincide(&phi, &theta, &[], 1e-8).unwrap().holds);
        // Exact values agree, not only zeros.
        let th = livsic_matrix(&sys, &sys.frame());
        for z in crate::inner::default_grid::<f64>() {
            let a = phi.eval(z).unwrap();
            let b = th.eval(z).unwrap();
            assert!(
                (&a - &b).norm() < 1e-9 * b.norm().max(1.0),
                "z={z} phi={a} theta={b}"
            );
        }
    }
}
