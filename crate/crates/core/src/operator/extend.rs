//! Unitary extensions of partial isometries.

use crate::error::{Error, Result};
use crate::numeric::{embed, identity, orthonormal_range, unitary_defect, CMatrix};
use crate::scalar::Real;

use super::system::{rank_tol, PartialIsometrySystem};

fn require_unitary<T: Real>(u: &CMatrix<T>, tol: T) -> Result<()> {
    let defect = unitary_defect(u);
    if defect > tol {
        return Err(Error::NotUnitary {
            defect: defect.to_f64_lossy(),
        });
    }
    Ok(())
}

/// Dimension of the smallest subspace of C^M containing the first `n`
/// coordinates and invariant under both `U` and `U*` (joint Krylov span).
pub fn krylov_reducing_dim<T: Real>(u: &CMatrix<T>, n: usize) -> Result<usize> {
    let m = u.nrows();
    let mut basis = embed(&identity::<T>(n), m, n);
    let ua = u.adjoint();
    loop {
        let grown = {
            let a = u * &basis;
            let b = &ua * &basis;
            let mut all = CMatrix::zeros(m, basis.ncols() * 3);
            all.columns_mut(0, basis.ncols()).copy_from(&basis);
            all.columns_mut(basis.ncols(), basis.ncols()).copy_from(&a);
            all.columns_mut(2 * basis.ncols(), basis.ncols())
                .copy_from(&b);
            orthonormal_range(&all, rank_tol())?
        };
        if grown.ncols() == basis.ncols() {
            return Ok(basis.ncols());
        }
        basis = grown;
    }
}

/// Checks that `U` (unitary on C^M, M ≥ N, with H = C^N as the first N
/// coordinates) agrees with `V` on `ker(V)^⊥` and is minimal: no proper
/// `U`-reducing subspace of C^M contains H.
pub fn verify_extension<T: Real>(
    u: &CMatrix<T>,
    system: &PartialIsometrySystem<T>,
    tol: T,
) -> Result<bool> {
    let (m, n) = (u.nrows(), system.dim());
    if !u.is_square() || m < n {
        return Err(Error::DimensionMismatch(format!(
            "U is {}×{}, base dimension {n}",
            u.nrows(),
            u.ncols()
        )));
    }
    require_unitary(u, tol)?;
    let g = system.initial_basis();
    let lifted = embed(g, m, g.ncols());
    let agreement = (u * lifted - embed(&(system.v() * g), m, g.ncols())).norm();
    if agreement > tol {
        return Ok(false);
    }
    Ok(krylov_reducing_dim(u, n)? == m)
}

/// Canonical extension `V + Σ_{jk} Uparam_{jk}⟨·, u_j⟩v_k` on the stored frames
/// (`u_j` columns of `Ji`, `v_k` columns of `J`), i.e. `V + J·Uparamᵀ·Ji*`.
pub fn canonical_extension<T: Real>(
    system: &PartialIsometrySystem<T>,
    uparam: &CMatrix<T>,
) -> Result<CMatrix<T>> {
    let n = system.index();
    if uparam.shape() != (n, n) {
        return Err(Error::DimensionMismatch(format!(
            "parameter must be {n}×{n}, got {}×{}",
            uparam.nrows(),
            uparam.ncols()
        )));
    }
    require_unitary(uparam, system.tol())?;
    let frame = system.frame();
    Ok(system.v() + &frame.j * uparam.transpose() * frame.ji.adjoint())
}

/// The parameter `Uparam` for which `canonical_extension(system, Uparam) = u`
/// (meaningful when `u` is a canonical extension on the stored frames).
pub fn canonical_parameter<T: Real>(
    system: &PartialIsometrySystem<T>,
    u: &CMatrix<T>,
) -> CMatrix<T> {
    let frame = system.frame();
    (frame.j.adjoint() * u * &frame.ji).transpose()
}

/// One-parameter family of non-canonical extensions on C^{N+k}: the new
/// coordinates `E` are coupled to the deficiency spaces through an
/// `(n+k)×(n+k)` unitary `coupling`, `U = V ⊕ 0 + [J, E]·coupling·[Ji, E]*`.
pub fn coupled_extension<T: Real>(
    system: &PartialIsometrySystem<T>,
    extra: usize,
    coupling: &CMatrix<T>,
) -> Result<CMatrix<T>> {
    let (nn, n) = (system.dim(), system.index());
    let m = nn + extra;
    if coupling.shape() != (n + extra, n + extra) {
        return Err(Error::DimensionMismatch(format!(
            "coupling must be {0}×{0}, got {1}×{2}",
            n + extra,
            coupling.nrows(),
            coupling.ncols()
        )));
    }
    require_unitary(coupling, system.tol())?;
    let frame = system.frame();
    let mut out_frame = CMatrix::zeros(m, n + extra);
    let mut in_frame = CMatrix::zeros(m, n + extra);
    out_frame.view_mut((0, 0), (nn, n)).copy_from(&frame.j);
    in_frame.view_mut((0, 0), (nn, n)).copy_from(&frame.ji);
    for k in 0..extra {
        out_frame[(nn + k, n + k)] = crate::scalar::cx(1.0, 0.0);
        in_frame[(nn + k, n + k)] = crate::scalar::cx(1.0, 0.0);
    }
    Ok(embed(system.v(), m, m) + out_frame * coupling * in_frame.adjoint())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::deficiency_data;
    use crate::scalar::cx;
    use num_complex::Complex;

    fn real(rows: usize, cols: usize, d: &[f64]) -> CMatrix<f64> {
        CMatrix::from_row_iterator(rows, cols, d.iter().map(|&x| cx(x, 0.0)))
    }

    fn fdeg() -> (CMatrix<f64>, PartialIsometrySystem<f64>) {
        let v = real(2, 2, &[0.0, 0.0, 1.0, 0.0]);
        let u = real(3, 3, &[0.0, 0.6, 0.8, 1.0, 0.0, 0.0, 0.0, 0.8, -0.6]);
        (u, deficiency_data(&v, 1e-9).unwrap())
    }

    #[test]
    fn fdeg_is_extension() {
        let (u, sys) = fdeg();
        assert!(verify_extension(&u, &sys, 1e-9).unwrap());
    }

    #[test]
    fn unitary_base_is_its_own_extension() {
        let v = real(2, 2, &[0.0, 1.0, 1.0, 0.0]);
        let sys = deficiency_data(&v, 1e-9).unwrap();
        assert!(verify_extension(&v, &sys, 1e-9).unwrap());
    }

    #[test]
    fn perturbed_entry_breaks_agreement() {
        let (mut u, sys) = fdeg();
        // Rotate the phase of the entry carrying V e₁ = e₂: still unitary.
        u[(1, 0)] = Complex::from_polar(1.0, 1e-3);
        assert!(!verify_extension(&u, &sys, 1e-9).unwrap());
    }

    #[test]
    fn non_unitary_rejected() {
        let (mut u, sys) = fdeg();
        u[(0, 0)] = cx(1e-3, 0.0);
        assert!(matches!(
            verify_extension(&u, &sys, 1e-9),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn non_minimal_extension_detected() {
        let (_, sys) = fdeg();
        // Canonical extension plus a decoupled extra coordinate.
        let c = canonical_extension(&sys, &identity::<f64>(1)).unwrap();
        let mut u = embed(&c, 3, 3);
        u[(2, 2)] = cx(1.0, 0.0);
        assert!(!verify_extension(&u, &sys, 1e-9).unwrap());
    }

    #[test]
    fn fdeg_canonical_structure() {
        let (_, sys) = fdeg();
        let u0 = Complex::from_polar(1.0, 0.7);
        let param = CMatrix::from_element(1, 1, u0);
        let u = canonical_extension(&sys, &param).unwrap();
        // Frames are e₂ (kernel) and e₁ (co-range) up to phase: the new entry
        // sits at (0,1) with modulus one.
        assert!((u[(1, 0)] - cx(1.0, 0.0)).norm() < 1e-14);
        assert!((u[(0, 1)].norm() - 1.0).abs() < 1e-14);
        assert!(unitary_defect(&u) < 1e-14);
        assert!((canonical_parameter(&sys, &u) - param).norm() < 1e-14);
    }

    #[test]
    fn fdeg2_x_is_canonical_extension_of_w() {
        let w = real(3, 3, &[0.0, 0.6, 0.8, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let mut x = w.clone();
        x[(2, 1)] = cx(0.0, -0.8);
        x[(2, 2)] = cx(0.0, 0.6);
        let sys = deficiency_data(&w, 1e-9).unwrap();
        let param = canonical_parameter(&sys, &x);
        let rebuilt = canonical_extension(&sys, &param).unwrap();
        assert!((rebuilt - &x).norm() < 1e-14);
        assert!(verify_extension(&x, &sys, 1e-9).unwrap());
        // X − W is rank one from ker W to ran(W)^⊥.
        let diff = &x - &w;
        assert_eq!(orthonormal_range(&diff, 1e-10).unwrap().ncols(), 1);
    }

    #[test]
    fn coupled_extension_is_minimal_unitary() {
        let (_, sys) = fdeg();
        let s = 0.5f64.sqrt();
        let q = real(2, 2, &[s, s, -s, s]);
        let u = coupled_extension(&sys, 1, &q).unwrap();
        assert!(unitary_defect(&u) < 1e-14);
        assert!(verify_extension(&u, &sys, 1e-9).unwrap());
    }
}
