//! Deviation measures used by the reports.

use livsic_core::{Matrix, Measure, C64};

/// Largest distance under the best greedy pairing of two point multisets
/// (closest pairs first); infinite when the sizes differ.
pub fn multiset_deviation(got: &[C64], want: &[C64]) -> f64 {
    if got.len() != want.len() {
        return f64::INFINITY;
    }
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(got.len() * want.len());
    for (j, a) in got.iter().enumerate() {
        for (k, b) in want.iter().enumerate() {
            pairs.push(((a - b).norm(), j, k));
        }
    }
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let (mut used_g, mut used_w) = (vec![false; got.len()], vec![false; want.len()]);
    let mut worst: f64 = 0.0;
    for (d, j, k) in pairs {
        if !used_g[j] && !used_w[k] {
            used_g[j] = true;
            used_w[k] = true;
            worst = worst.max(d);
        }
    }
    worst
}

/// `‖a − b‖_F / max(1, ‖b‖_F)`.
pub fn relative_deviation(a: &Matrix, b: &Matrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    (a - b).norm() / b.norm().max(1.0)
}

/// Largest relative weight deviation between two measures with the same
/// support; infinite when an atom of either has no partner.
pub fn measure_deviation(got: &Measure, want: &Measure) -> f64 {
    if got.domain() != want.domain() || got.dim() != want.dim() || got.len() != want.len() {
        return f64::INFINITY;
    }
    let mut worst: f64 = 0.0;
    for a in want.atoms() {
        let tol = 1e-9 * (1.0 + a.point.norm());
        match got.weight_at(a.point, tol) {
            Some(w) => worst = worst.max(relative_deviation(w, &a.weight)),
            None => return f64::INFINITY,
        }
    }
    worst
}

/// Largest deviation of the expected scalar weights `(point, weight)` from
/// the `(0, 0)` entries of `got`; infinite for a missing atom or a different
/// number of atoms.
pub fn scalar_weight_deviation(got: &Measure, want: &[(C64, f64)], point_tol: f64) -> f64 {
    if got.len() != want.len() {
        return f64::INFINITY;
    }
    want.iter()
        .fold(0.0, |acc: f64, (p, w)| match got.weight_at(*p, point_tol) {
            Some(m) => acc.max((m[(0, 0)] - C64::new(*w, 0.0)).norm()),
            None => f64::INFINITY,
        })
}
