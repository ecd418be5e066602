//! Property tests for the numerical substrate and the Möbius maps.

mod common;

use common::{haar_unitary, random_partial_isometry, rng};
use livsic_core::numeric::{
    eig_normal, null_space, pinv, poly_from_roots, poly_roots, psd_check, unitary_defect, CMatrix,
};
use livsic_core::operator::{b, b_inv, deficiency_data};
use livsic_core::scalar::cx;
use livsic_core::C64;
use proptest::prelude::*;

fn point() -> impl Strategy<Value = C64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| cx(a, b))
}

/// Roots at least `sep` apart, so clustering never merges distinct roots.
fn separated_roots(max_len: usize, sep: f64) -> impl Strategy<Value = Vec<C64>> {
    prop::collection::vec(point(), 1..=max_len).prop_map(move |pts| {
        let mut out: Vec<C64> = Vec::new();
        for p in pts {
            if out.iter().all(|q| (p - q).norm() >= sep) {
                out.push(p);
            }
        }
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poly_roots_round_trip(roots in separated_roots(12, 0.3), lead in point()) {
        prop_assume!(lead.norm() > 0.1);
        let p = poly_from_roots(&roots, lead);
        let got = poly_roots(&p, 1e-9).unwrap();
        prop_assert_eq!(got.len(), roots.len());
        for r in &roots {
            let best = got.iter().map(|g| (g - r).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(best < 1e-6, "root {r} missed by {best}");
        }
    }

    #[test]
    fn double_roots_are_clustered(r in point(), s in point()) {
        prop_assume!((r - s).norm() > 0.5);
        let p = poly_from_roots(&[r, r, s], cx(1.0, 0.0));
        let got = poly_roots(&p, 1e-6).unwrap();
        prop_assert_eq!(got.len(), 3);
        prop_assert_eq!(got.iter().filter(|g| (**g - r).norm() < 1e-6).count(), 2);
    }

    #[test]
    fn cayley_maps_are_inverse(re_part in -5.0f64..5.0, im_part in 0.01f64..5.0) {
        let z = cx(re_part, im_part);
        let a = b(z).unwrap();
        prop_assert!(a.norm() < 1.0);
        prop_assert!((b_inv::<f64>(a).unwrap() - z).norm() < 1e-10 * z.norm().max(1.0));
        let lower = b(z.conj()).unwrap();
        prop_assert!(lower.norm() > 1.0);
    }

    #[test]
    fn real_axis_maps_to_circle(x in -50.0f64..50.0) {
        prop_assert!((b::<f64>(cx(x, 0.0)).unwrap().norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn haar_unitary_spectral_reconstruction(seed in 0u64..10_000, n in 1usize..7) {
        let u = haar_unitary(&mut rng(seed), n);
        prop_assert!(unitary_defect(&u) < 1e-12);
        let spec = eig_normal(&u, 1e-9).unwrap();
        prop_assert!((spec.reconstruct() - &u).norm() < 1e-10);
        for l in &spec.eigenvalues {
            prop_assert!((l.norm() - 1.0).abs() < 1e-10);
        }
        let total = spec.projections.iter().fold(CMatrix::<f64>::zeros(n, n), |acc, p| acc + p);
        prop_assert!((total - CMatrix::<f64>::identity(n, n)).norm() < 1e-10);
    }

    #[test]
    fn deficiency_frames_are_orthonormal(seed in 0u64..10_000, n in 2usize..7, idx in 1usize..3) {
        prop_assume!(idx < n);
        let v = random_partial_isometry(&mut rng(seed), n, idx);
        let sys = deficiency_data(&v, 1e-9).unwrap();
        prop_assert_eq!(sys.index(), idx);
        let k = sys.ker_basis();
        let j = sys.coran_basis();
        prop_assert!((&v * k).norm() < 1e-10);
        prop_assert!((j.adjoint() * &v).norm() < 1e-10);
        prop_assert!((k.adjoint() * k - CMatrix::<f64>::identity(idx, idx)).norm() < 1e-10);
        prop_assert!((j.adjoint() * j - CMatrix::<f64>::identity(idx, idx)).norm() < 1e-10);
    }

    #[test]
    fn pseudo_inverse_and_null_space(seed in 0u64..10_000) {
        let v = random_partial_isometry(&mut rng(seed), 5, 2);
        let p = pinv(&v, 1e-10).unwrap();
        prop_assert!((&v * &p * &v - &v).norm() < 1e-10);
        prop_assert_eq!(null_space(&v, 1e-10).unwrap().ncols(), 2);
    }
}

#[test]
fn gram_of_vectors_is_certified_psd() {
    let mut r = rng(7);
    let g = common::ginibre(&mut r, 4, 3);
    let rep = psd_check(&(g.adjoint() * &g), 1e-12).unwrap();
    assert!(rep.psd && rep.min_eigenvalue > -1e-12);
    let neg = CMatrix::<f64>::from_diagonal_element(2, 2, cx(-1.0, 0.0));
    assert!(!psd_check(&neg, 1e-9).unwrap().psd);
}
