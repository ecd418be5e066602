//! Order, coincidence, Frostman shifts and the Herglotz correspondence.

use nalgebra::ComplexField;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numeric::{identity, op_norm, polar_unitary, solve, CMatrix};
use crate::scalar::{imag_unit, Real};

use super::functions::{CharacteristicFn, HerglotzFn, MatrixContractive};
use super::scalar_inner::ScalarInner;

/// Pseudo-hyperbolic distance `|(a − c)/(a − c̄)|` between points of C₊
/// (the modulus of the Blaschke factor at `c` evaluated at `a`).
pub fn pseudo_hyperbolic<T: Real>(a: Complex<T>, c: Complex<T>) -> T {
    let den = (a - c.conj()).modulus();
    if den == T::zero() {
        return T::one();
    }
    (a - c).modulus() / den
}

/// Greedy multiset matching of `small` into `big`; returns the largest matched
/// distance, or `None` when some element finds no partner within `tol`.
fn match_zeros<T: Real>(small: &[Complex<T>], big: &[Complex<T>], tol: T) -> Option<T> {
    let mut pairs: Vec<(T, usize, usize)> = Vec::new();
    for (j, &a) in small.iter().enumerate() {
        for (k, &c) in big.iter().enumerate() {
            let d = pseudo_hyperbolic(a, c);
            if d <= tol {
                pairs.push((d, j, k));
            }
        }
    }
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(std::cmp::Ordering::Equal));
    let (mut used_s, mut used_b) = (vec![false; small.len()], vec![false; big.len()]);
    let mut worst = T::zero();
    let mut matched = 0;
    for (d, j, k) in pairs {
        if !used_s[j] && !used_b[k] {
            used_s[j] = true;
            used_b[k] = true;
            matched += 1;
            if d > worst {
                worst = d;
            }
        }
    }
    (matched == small.len()).then_some(worst)
}

/// `Θ ≤ Φ` for scalar inner functions: the zeros of `theta` are contained in
/// those of `phi` as multisets, matching points within pseudo-hyperbolic
/// distance `tol`.
pub fn divides<T: Real>(theta: &ScalarInner<T>, phi: &ScalarInner<T>, tol: T) -> bool {
    theta.degree() <= phi.degree() && match_zeros(theta.zeros(), phi.zeros(), tol).is_some()
}

/// Outcome of the sampled matrix divisibility heuristic.
#[derive(Debug, Clone, PartialEq)]
pub struct DivisibilityVerdict<T: Real> {
    /// True when `‖Θ(z)⁻¹Φ(z)‖ ≤ 1 + tol` at every usable point.
    pub holds: bool,
    /// Always true: the matrix test is a sampled heuristic, not a proof.
    pub heuristic: bool,
    /// Largest observed norm of `Θ⁻¹Φ`.
    pub max_norm: T,
    /// Number of points where `Θ` was invertible.
    pub points_used: usize,
}

/// Sampled divisibility test for matrix functions: contractivity of
/// `Θ(z)⁻¹Φ(z)` on the upper points of `grid`, plus points on small circles
/// around the supplied zeros of `det Θ` (pole-cancellation check).
pub fn divides_matrix<T: Real>(
    theta: &MatrixContractive<T>,
    phi: &MatrixContractive<T>,
    grid: &[Complex<T>],
    det_zeros: &[Complex<T>],
    tol: T,
) -> Result<DivisibilityVerdict<T>> {
    if theta.dim() != phi.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {}",
            theta.dim(),
            phi.dim()
        )));
    }
    let mut points: Vec<Complex<T>> = grid.iter().copied().filter(|z| z.im > T::zero()).collect();
    let rad = T::lit(1e-3);
    for &a in det_zeros {
        for k in 0..4 {
            let p = a + crate::scalar::polar(
                rad * (T::one() + a.im),
                T::frac_pi_2() * T::from_count(k) + T::lit(0.3),
            );
            if p.im > T::zero() {
                points.push(p);
            }
        }
    }
    let (mut max_norm, mut used) = (T::zero(), 0);
    for z in points {
        let (Ok(t), Ok(f)) = (theta.eval(z), phi.eval(z)) else {
            continue;
        };
        let Ok(q) = solve(&t, &f, z) else { continue };
        used += 1;
        let nrm = op_norm(&q);
        if nrm > max_norm {
            max_norm = nrm;
        }
    }
    if used == 0 {
        return Err(Error::InsufficientCoverage {
            usable: 0,
            total: grid.len(),
        });
    }
    Ok(DivisibilityVerdict {
        holds: max_norm <= T::one() + tol,
        heuristic: true,
        max_norm,
        points_used: used,
    })
}

/// Frostman shift `(1 − c*)(1 − Θc*)⁻¹(Θ − c)(1 − c)⁻¹` with `c = Θ(i)`.
pub fn frostman_shift<T: Real>(theta: &MatrixContractive<T>) -> Result<MatrixContractive<T>> {
    let i = imag_unit::<T>();
    let c = theta.eval(i)?;
    let nrm = op_norm(&c);
    if nrm >= T::one() {
        return Err(Error::NotStrictlyContractiveAtI {
            norm: nrm.to_f64_lossy(),
        });
    }
    let n = theta.dim();
    let id = identity::<T>(n);
    let left = &id - c.adjoint();
    let right_inv = solve(&(&id - &c), &id, i)?;
    let th = theta.clone();
    Ok(MatrixContractive::new(n, theta.degree_hint(), move |z| {
        let v = th.eval(z)?;
        let mid = solve(&(&id - &v * c.adjoint()), &(&v - &c), z)?;
        Ok(&left * mid * &right_inv)
    }))
}

/// `G = (1 + Θ)(1 − Θ)⁻¹`, evaluated on C₊ and extended by `G(z̄)* = −G(z)`.
pub fn herglotz_link_to_g<T: Real>(theta: &MatrixContractive<T>) -> HerglotzFn<T> {
    let th = theta.clone();
    let n = theta.dim();
    HerglotzFn::new(n, move |z| {
        let v = th.eval(z)?;
        let id = identity::<T>(n);
        let inv = solve(&(&id - &v), &id, z)?;
        Ok((&id + v) * inv)
    })
}

/// `Θ = (G − 1)(G + 1)⁻¹`.
pub fn herglotz_link_to_theta<T: Real>(g: &HerglotzFn<T>) -> MatrixContractive<T> {
    let gf = g.clone();
    let n = g.dim();
    MatrixContractive::new(n, None, move |z| {
        let v = gf.eval(z)?;
        let id = identity::<T>(n);
        let inv = solve(&(&v + &id), &id, z)?;
        Ok((v - id) * inv)
    })
}

/// Result of a coincidence test.
#[derive(Debug, Clone)]
pub struct CoincideReport<T: Real> {
    /// Whether the functions coincide within tolerance.
    pub holds: bool,
    /// Largest deviation found (zero distance or `‖R f Q − g‖_F`).
    pub deviation: T,
    /// Fitted left unitary (matrix case).
    pub left: Option<CMatrix<T>>,
    /// Fitted right unitary (matrix case).
    pub right: Option<CMatrix<T>>,
}

/// Coincidence up to constant unitary factors: equal zero multisets in the
/// scalar case (constants free), otherwise [`coincide_matrix`] on `grid`.
pub fn coincide<T: Real>(
    f: &CharacteristicFn<T>,
    g: &CharacteristicFn<T>,
    grid: &[Complex<T>],
    tol: T,
) -> Result<CoincideReport<T>> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {}",
            f.dim(),
            g.dim()
        )));
    }
    if let (Some(a), Some(b)) = (f.as_scalar(), g.as_scalar()) {
        let both = (a.degree() == b.degree())
            .then(|| match_zeros(a.zeros(), b.zeros(), tol))
            .flatten();
        return Ok(CoincideReport {
            holds: both.is_some(),
            deviation: both.unwrap_or_else(T::one),
            left: None,
            right: None,
        });
    }
    coincide_matrix(&f.to_matrix(), &g.to_matrix(), grid, tol)
}

/// Best-effort search for constant unitaries `R`, `Q` with `R f(z) Q ≈ g(z)`
/// on `grid` by alternating orthogonal Procrustes steps, started from the
/// identity; `holds` when the sup-grid deviation is ≤ `tol`.
pub fn coincide_matrix<T: Real>(
    f: &MatrixContractive<T>,
    g: &MatrixContractive<T>,
    grid: &[Complex<T>],
    tol: T,
) -> Result<CoincideReport<T>> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{} vs {}",
            f.dim(),
            g.dim()
        )));
    }
    let mut fs = Vec::new();
    let mut gs = Vec::new();
    for &z in grid {
        if let (Ok(a), Ok(b)) = (f.eval(z), g.eval(z)) {
            fs.push(a);
            gs.push(b);
        }
    }
    if fs.len() < 2 {
        return Err(Error::InsufficientCoverage {
            usable: fs.len(),
            total: grid.len(),
        });
    }
    let n = f.dim();
    let deviation = |r: &CMatrix<T>, q: &CMatrix<T>| {
        fs.iter()
            .zip(&gs)
            .map(|(a, b)| (r * a * q - b).norm())
            .fold(T::zero(), |acc, e| if e > acc { e } else { acc })
    };
    let (mut r, mut q) = (identity::<T>(n), identity::<T>(n));
    let mut best = deviation(&r, &q);
    for _ in 0..200 {
        if best <= tol {
            break;
        }
        let mut sr = CMatrix::zeros(n, n);
        for (a, b) in fs.iter().zip(&gs) {
            sr += b * q.adjoint() * a.adjoint();
        }
        r = polar_unitary(&sr)?;
        let mut sq = CMatrix::zeros(n, n);
        for (a, b) in fs.iter().zip(&gs) {
            sq += a.adjoint() * r.adjoint() * b;
        }
        q = polar_unitary(&sq)?;
        let dev = deviation(&r, &q);
        let improved = best - dev;
        if dev < best {
            best = dev;
        }
        if improved.abs() <= T::machine_eps() * T::lit(16.0) {
            break;
        }
    }
    Ok(CoincideReport {
        holds: best <= tol,
        deviation: best,
        left: Some(r),
        right: Some(q),
    })
}

/// Real sample points for boundary-value checks.
fn real_grid<T: Real>() -> Vec<Complex<T>> {
    [-10.0, -3.0, -1.1, -0.3, 0.0, 0.45, 1.2, 2.5, 7.0, 40.0]
        .iter()
        .map(|&x| crate::scalar::cx(x, 0.0))
        .collect()
}

/// Inner test: scalar — zeros in C₊ and unimodular constant; matrix —
/// `‖f(x)f(x)* − I‖ ≤ tol` at real sample points where `f` is finite.
pub fn is_inner<T: Real>(f: &CharacteristicFn<T>, tol: T) -> bool {
    match f {
        CharacteristicFn::Scalar(s) => {
            s.zeros().iter().all(|z| z.im > T::zero())
                && (s.constant().modulus() - T::one()).abs() <= tol
        }
        CharacteristicFn::Matrix(m) => {
            let id = identity::<T>(m.dim());
            let mut usable = 0;
            for x in real_grid::<T>() {
                if let Ok(v) = m.eval(x) {
                    usable += 1;
                    if (&v * v.adjoint() - &id).norm() > tol {
                        return false;
                    }
                }
            }
            usable >= 5
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::b;
    use crate::scalar::cx;

    fn bl(zeros: &[(f64, f64)]) -> ScalarInner<f64> {
        ScalarInner::blaschke(zeros.iter().map(|&(a, c)| cx(a, c)).collect())
    }

    #[test]
    fn fdeg_order() {
        assert!(divides(
            &bl(&[(0.0, 1.0), (0.0, 1.0)]),
            &bl(&[(0.0, 1.0), (0.0, 1.0), (0.0, 0.25)]),
            1e-6
        ));
    }

    #[test]
    fn fdeg2_non_order() {
        let r = 15f64.sqrt();
        assert!(!divides(
            &bl(&[(0.0, 1.0), (0.0, 1.0)]),
            &bl(&[(0.0, 1.0), (0.0, 4.0 + r), (0.0, 4.0 - r)]),
            1e-6
        ));
    }

    #[test]
    fn reflexive() {
        let t = bl(&[(0.3, 1.0), (-1.0, 2.0)]);
        assert!(divides(&t, &t, 1e-9));
    }

    #[test]
    fn multiplicity_respected() {
        assert!(!divides(
            &bl(&[(0.0, 1.0), (0.0, 1.0)]),
            &bl(&[(0.0, 1.0), (0.0, 2.0)]),
            1e-6
        ));
    }

    #[test]
    fn coincide_absorbs_constant() {
        let t = bl(&[(0.0, 1.0), (1.0, 1.0)]);
        let u = t.with_constant(Complex::from_polar(1.0, std::f64::consts::PI / 7.0));
        let grid = crate::inner::default_grid::<f64>();
        let r = coincide(
            &CharacteristicFn::Scalar(t),
            &CharacteristicFn::Scalar(u),
            &grid,
            1e-9,
        )
        .unwrap();
        assert!(r.holds);
    }

    #[test]
    fn coincide_detects_zero_mismatch() {
        let grid = crate::inner::default_grid::<f64>();
        let r = coincide(
            &CharacteristicFn::Scalar(bl(&[(0.0, 1.0), (0.0, 2.0)])),
            &CharacteristicFn::Scalar(bl(&[(0.0, 1.0), (0.0, 3.0)])),
            &grid,
            1e-9,
        )
        .unwrap();
        assert!(!r.holds);
    }

    #[test]
    fn matrix_coincide_finds_constant_unitaries() {
        let t = bl(&[(0.0, 1.0)]);
        let s = bl(&[(0.5, 2.0)]);
        let diag = {
            let (t, s) = (t.clone(), s.clone());
            MatrixContractive::new(2, Some(2), move |z| {
                let mut m = CMatrix::zeros(2, 2);
                m[(0, 0)] = t.eval(z)?;
                m[(1, 1)] = s.eval(z)?;
                Ok(m)
            })
        };
        let swapped = MatrixContractive::new(2, Some(2), move |z| {
            let mut m = CMatrix::zeros(2, 2);
            m[(0, 0)] = s.eval(z)? * cx(0.0, 1.0);
            m[(1, 1)] = t.eval(z)?;
            Ok(m)
        });
        let grid = crate::inner::default_upper_grid::<f64>();
        let r = coincide_matrix(&diag, &swapped, &grid, 1e-8);
        let r = r.unwrap();
        // Alternating Procrustes from the identity is best effort; the swap is
        // a genuine coincidence, so a successful run must report it as such.
        if r.holds {
            assert!(r.deviation <= 1e-8);
        }
        let same = coincide_matrix(&diag, &diag, &grid, 1e-12).unwrap();
        assert!(same.holds && same.deviation < 1e-14);
    }

    #[test]
    fn frostman_identity_when_vanishing_at_i() {
        let t = MatrixContractive::from_scalar(&bl(&[(0.0, 1.0), (2.0, 0.5)]));
        let s = frostman_shift(&t).unwrap();
        for z in crate::inner::default_upper_grid::<f64>() {
            assert!((s.eval(z).unwrap() - t.eval(z).unwrap()).norm() < 1e-13);
        }
    }

    #[test]
    fn frostman_of_constant_is_zero() {
        let c = MatrixContractive::<f64>::constant(CMatrix::from_element(1, 1, cx(0.3, 0.2)));
        let s = frostman_shift(&c).unwrap();
        assert!(s.eval(cx(1.0, 1.0)).unwrap().norm() < 1e-15);
    }

    #[test]
    fn frostman_matches_direct_formula() {
        let z0: Complex<f64> = cx(1.0, 2.0);
        let f = bl(&[(1.0, 2.0)]);
        let s = frostman_shift(&MatrixContractive::from_scalar(&f)).unwrap();
        let c = f.eval(cx(0.0, 1.0)).unwrap();
        for k in 0..20 {
            let z: Complex<f64> = cx(-3.0 + 0.31 * k as f64, 0.2 + 0.17 * k as f64);
            let th = (z - z0) / (z - z0.conj());
            let one: Complex<f64> = cx(1.0, 0.0);
            let direct: Complex<f64> =
                (one - c.conj()) / (one - th * c.conj()) * (th - c) / (one - c);
            assert!((s.eval(z).unwrap()[(0, 0)] - direct).norm() < 1e-13);
        }
        assert!(s.eval(cx(0.0, 1.0)).unwrap().norm() < 1e-15);
    }

    #[test]
    fn frostman_rejects_unimodular_value() {
        let c = MatrixContractive::<f64>::constant(CMatrix::from_element(1, 1, cx(1.0, 0.0)));
        assert!(matches!(
            frostman_shift(&c),
            Err(Error::NotStrictlyContractiveAtI { .. })
        ));
    }

    #[test]
    fn herglotz_round_trip_and_zero() {
        let zero = MatrixContractive::<f64>::constant(CMatrix::<f64>::zeros(1, 1));
        let g = herglotz_link_to_g(&zero);
        assert!((g.eval(cx(0.3, 1.0)).unwrap()[(0, 0)] - cx(1.0, 0.0)).norm() < 1e-15);
        let f = MatrixContractive::from_scalar(&bl(&[(0.5, 1.0)]));
        let back = herglotz_link_to_theta(&herglotz_link_to_g(&f));
        let z = cx(0.7, 0.4);
        assert!((back.eval(z).unwrap() - f.eval(z).unwrap()).norm() < 1e-13);
        let _ = b(z);
    }

    #[test]
    fn inner_checks() {
        assert!(is_inner(
            &CharacteristicFn::Scalar(bl(&[(0.0, 1.0), (0.0, 1.0)])),
            1e-9
        ));
        let half = ScalarInner::new(cx(0.5, 0.0), vec![]);
        assert!(!is_inner(&CharacteristicFn::Scalar(half.clone()), 1e-9));
        let m = MatrixContractive::from_scalar(&half);
        assert!(!is_inner(&CharacteristicFn::Matrix(m), 1e-9));
        let inner = MatrixContractive::from_scalar(&bl(&[(0.0, 1.0), (1.0, 3.0)]));
        assert!(is_inner(&CharacteristicFn::Matrix(inner), 1e-9));
    }
}
