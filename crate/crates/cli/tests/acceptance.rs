//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (no test harness) so the verdict lines are always
//! printed; the process fails when any criterion fails.

use std::time::Instant;

use livsic_cli::reproduce::reproduce;
use livsic_cli::Example;
use livsic_core::extension::{
    ac_check, big_kernel, cyclic_expansion, equivalence_invariance, ext_char, ext_char_matrix,
    small_kernel, synthesize_extension,
};
use livsic_core::herglotz::KernelGram;
use livsic_core::inner::{
    coincide, default_grid, divides, divides_matrix, livsic_char, livsic_matrix, CharacteristicFn,
};
use livsic_core::numeric::{identity, CMatrix};
use livsic_core::operator::{canonical_extension, coupled_extension, deficiency_data};
use livsic_core::scalar::cx;
use livsic_core::{Extension, Inner, Matrix, System, Vector, C64};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;

// ---------------------------------------------------------------- generators

fn ginibre(r: &mut StdRng, rows: usize, cols: usize) -> Matrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        cx(r.sample(StandardNormal), r.sample(StandardNormal))
    })
}

fn haar_unitary(r: &mut StdRng, n: usize) -> Matrix {
    let qr = ginibre(r, n, n).qr();
    let (q, rr) = (qr.q(), qr.r());
    let phases = CMatrix::from_diagonal(&rr.diagonal().map(|d| {
        if d.norm() > 0.0 {
            d / d.norm()
        } else {
            cx(1.0, 0.0)
        }
    }));
    q * phases
}

fn random_system(r: &mut StdRng, dim: usize, index: usize) -> System {
    loop {
        let mut p = identity::<f64>(dim);
        for k in dim - index..dim {
            p[(k, k)] = cx(0.0, 0.0);
        }
        let v = haar_unitary(r, dim) * p * haar_unitary(r, dim);
        if let Ok(sys) = deficiency_data(&v, 1e-9) {
            if sys.is_simple() {
                return sys;
            }
        }
    }
}

fn random_canonical(r: &mut StdRng, sys: &System) -> Extension {
    loop {
        let u =
            canonical_extension(sys, &haar_unitary(r, sys.index())).expect("canonical extension");
        if let Ok(ext) = Extension::new(u, sys.clone(), 1e-9) {
            return ext;
        }
    }
}

fn random_coupled(r: &mut StdRng, sys: &System, extra: usize) -> Extension {
    loop {
        let c = haar_unitary(r, sys.index() + extra);
        let u = coupled_extension(sys, extra, &c).expect("coupled extension");
        if let Ok(ext) = Extension::new(u, sys.clone(), 1e-9) {
            return ext;
        }
    }
}

fn random_upper(r: &mut StdRng) -> C64 {
    cx(r.random_range(-2.0..2.0), r.random_range(0.2..2.5))
}

fn random_nonreal(r: &mut StdRng) -> C64 {
    let z = random_upper(r);
    if r.random_bool(0.5) {
        z
    } else {
        z.conj()
    }
}

/// A random system with index 1 or 2 and dimension at most 6.
fn random_small_system(r: &mut StdRng, k: usize) -> System {
    let index = 1 + k % 2;
    let dim = r.random_range(index + 1..=6);
    random_system(r, dim, index)
}

// ------------------------------------------------------------------ reporting

struct Verdict {
    pass: bool,
    detail: String,
}

fn report(n: usize, title: &str, v: &Verdict, secs: f64) -> bool {
    let tag = if v.pass { "PASS" } else { "FAIL" };
    println!("criterion {n} [{tag}] {title}: {} ({secs:.2} s)", v.detail);
    v.pass
}

// ------------------------------------------------------------------ criteria

fn reproduce_example(ex: Example) -> Verdict {
    let r = reproduce(ex, None);
    let failing: Vec<String> = r
        .items
        .iter()
        .filter(|i| !i.pass)
        .map(|i| i.name.clone())
        .collect();
    Verdict {
        pass: r.pass,
        detail: if failing.is_empty() {
            format!(
                "{} items, max deviation {:.2e}",
                r.items.len(),
                r.max_deviation
            )
        } else {
            format!("failing items: {}", failing.join("; "))
        },
    }
}

fn criterion3() -> Verdict {
    const TOL: f64 = 1e-7;
    let mut r = StdRng::seed_from_u64(3);
    let grid = default_grid::<f64>();
    let (mut checked, mut failures, mut worst_norm) = (0, 0, 0.0f64);
    for k in 0..50 {
        let sys = random_small_system(&mut r, k);
        let theta = livsic_char(&sys, &sys.frame(), None);
        for ext in [
            random_canonical(&mut r, &sys),
            random_coupled(&mut r, &sys, 1),
        ] {
            checked += 1;
            let ok = match (&theta, ext_char(&ext)) {
                (Ok(CharacteristicFn::Scalar(t)), Ok(CharacteristicFn::Scalar(p))) => {
                    divides(t, &p, 1e-6)
                }
                (Ok(_), Ok(_)) => {
                    let t = livsic_matrix(ext.base(), ext.frame());
                    match ext_char_matrix(&ext)
                        .and_then(|p| divides_matrix(&t, &p, &grid, &[], TOL))
                    {
                        Ok(v) => {
                            worst_norm = worst_norm.max(v.max_norm);
                            v.holds
                        }
                        Err(_) => false,
                    }
                }
                _ => false,
            };
            failures += usize::from(!ok);
        }
    }
    Verdict {
        pass: failures == 0,
        detail: format!(
            "{checked} extensions of 50 systems, {failures} failures; max sampled ‖Θ⁻¹Φ‖ = {worst_norm:.6} (tol {TOL:e})"
        ),
    }
}

fn criterion4() -> Verdict {
    const RESIDUAL_TOL: f64 = 1e-10;
    const RATIO_TOL: f64 = 0.05;
    let (lo, hi) = (19usize, 59usize);
    let mut r = StdRng::seed_from_u64(4);
    let (mut worst_resid, mut worst_gap, mut failures, mut skipped) = (0.0f64, 0.0f64, 0, 0);
    for k in 0..20 {
        let sys = random_small_system(&mut r, k);
        let ext = if k % 2 == 0 {
            random_canonical(&mut r, &sys)
        } else {
            random_coupled(&mut r, &sys, 1)
        };
        let h = Vector::from_fn(sys.dim(), |_, _| {
            cx(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0))
        });
        let w = random_nonreal(&mut r);
        let e = match cyclic_expansion(&ext, &h, w, hi) {
            Ok(e) => e,
            Err(_) => {
                failures += 1;
                continue;
            }
        };
        let resid = e.identity_residuals[..=10]
            .iter()
            .copied()
            .fold(0.0, f64::max);
        worst_resid = worst_resid.max(resid);
        let (a, b) = (e.tails[lo], e.tails[hi]);
        let ok_ratio = if a > 0.0 && b > 1e-280 {
            let ratio = (b / a).powf(1.0 / (hi - lo) as f64);
            let gap = (ratio - e.spectral_radius).abs();
            worst_gap = worst_gap.max(gap);
            gap <= RATIO_TOL
        } else {
            // The expansion terminated: h lies in a finite cyclic subspace.
            skipped += 1;
            true
        };
        failures += usize::from(resid > RESIDUAL_TOL || !ok_ratio);
    }
    Verdict {
        pass: failures == 0,
        detail: format!(
            "20 triples, {failures} failures; max residual (k ≤ 10) {worst_resid:.2e} (tol {RESIDUAL_TOL:e}); \
             max |decay ratio − spectral radius| over k {lo}..{hi} {worst_gap:.4} (tol {RATIO_TOL}); {skipped} terminated"
        ),
    }
}

fn criterion5() -> Verdict {
    const TOL: f64 = 1e-7;
    let mut r = StdRng::seed_from_u64(5);
    let grid = default_grid::<f64>();
    let (mut failures, mut worst) = (0, 0.0f64);
    for k in 0..20 {
        let sys = random_small_system(&mut r, k);
        let up = haar_unitary(&mut r, sys.index());
        match ac_check(&sys, &up, &grid, TOL) {
            Ok(rep) => {
                worst = worst.max(rep.deviation);
                failures += usize::from(!rep.holds);
            }
            Err(_) => failures += 1,
        }
    }
    Verdict {
        pass: failures == 0,
        detail: format!("20 pairs, {failures} failures; max deviation {worst:.2e} (tol {TOL:e})"),
    }
}

fn criterion6() -> Verdict {
    const TOL: f64 = 1e-7;
    let mut r = StdRng::seed_from_u64(6);
    let i = cx(0.0, 1.0);
    let (mut failures, mut worst) = (0, 0.0f64);
    for k in 0..15 {
        let deg_theta = 1 + k % 3;
        let deg_phi = (deg_theta + 1 + k % 4).min(6);
        let mut tz = vec![i];
        while tz.len() < deg_theta {
            tz.push(random_upper(&mut r));
        }
        let mut pz = tz.clone();
        while pz.len() < deg_phi {
            // Occasionally repeat a zero to exercise multiplicities.
            let z = if r.random_bool(0.2) {
                pz[r.random_range(0..pz.len())]
            } else {
                random_upper(&mut r)
            };
            pz.push(z);
        }
        let theta = Inner::new(
            C64::from_polar(1.0, r.random_range(0.0..std::f64::consts::TAU)),
            tz,
        );
        let phi = Inner::new(
            C64::from_polar(1.0, r.random_range(0.0..std::f64::consts::TAU)),
            pz,
        );
        let ok = synthesize_extension(&theta, &phi, 1e-9)
            .and_then(|s| ext_char(&s.extension))
            .and_then(|got| {
                let rep = coincide(&got, &CharacteristicFn::Scalar(phi.clone()), &[], TOL)?;
                let dc = got
                    .as_scalar()
                    .map_or(f64::INFINITY, |g| (g.constant() - phi.constant()).norm());
                worst = worst.max(rep.deviation).max(dc);
                Ok(rep.holds && dc <= TOL)
            });
        failures += usize::from(!matches!(ok, Ok(true)));
    }
    Verdict {
        pass: failures == 0,
        detail: format!("15 pairs (deg φ ≤ 6), {failures} failures; max zero/constant deviation {worst:.2e} (tol {TOL:e})"),
    }
}

fn criterion7() -> Verdict {
    const TOL: f64 = 1e-9;
    let mut r = StdRng::seed_from_u64(7);
    let (mut failures, mut min_eig) = (0, f64::INFINITY);
    for k in 0..20 {
        let sys = random_small_system(&mut r, k);
        let ext = if k % 2 == 0 {
            random_canonical(&mut r, &sys)
        } else {
            random_coupled(&mut r, &sys, 1 + k % 3)
        };
        let pts: Vec<C64> = (0..6).map(|_| random_upper(&mut r)).collect();
        let n = ext.index();
        let grams = [
            KernelGram::block(&pts, n, |w, z| big_kernel(&ext, w, z)),
            KernelGram::block(&pts, n, |w, z| small_kernel(&ext, w, z)),
            KernelGram::block(&pts, n, |w, z| {
                Ok(big_kernel(&ext, w, z)? - small_kernel(&ext, w, z)?)
            }),
        ];
        for g in grams {
            match g.and_then(|g| g.certify(TOL)) {
                Ok(rep) => {
                    min_eig = min_eig.min(rep.min_eigenvalue);
                    failures += usize::from(rep.min_eigenvalue < -TOL);
                }
                Err(_) => failures += 1,
            }
        }
    }
    Verdict {
        pass: failures == 0,
        detail: format!("20 extensions × 3 Grams, {failures} failures; smallest eigenvalue {min_eig:.2e} (floor −{TOL:e})"),
    }
}

fn criterion8() -> Verdict {
    const TOL: f64 = 1e-9;
    let mut r = StdRng::seed_from_u64(8);
    let grid = default_grid::<f64>();
    let (mut failures, mut worst) = (0, 0.0f64);
    for k in 0..5 {
        let sys = random_small_system(&mut r, k);
        let ext = random_coupled(&mut r, &sys, 2);
        let (m, n) = (ext.dim(), ext.base_dim());
        for _ in 0..10 {
            let mut w = identity::<f64>(m);
            w.view_mut((n, n), (m - n, m - n))
                .copy_from(&haar_unitary(&mut r, m - n));
            match equivalence_invariance(&ext, &w, &grid, TOL) {
                Ok(rep) => {
                    worst = worst.max(rep.deviation);
                    failures += usize::from(!rep.holds);
                }
                Err(_) => failures += 1,
            }
        }
    }
    Verdict {
        pass: failures == 0,
        detail: format!("5 extensions × 10 conjugations, {failures} failures; max deviation {worst:.2e} (tol {TOL:e})"),
    }
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 8] = [
        ("reproduce fdeg", || reproduce_example(Example::Fdeg)),
        ("reproduce fdeg2", || reproduce_example(Example::Fdeg2)),
        ("Θ_B divides Φ_A for random extensions", criterion3),
        ("cyclic expansion identity and geometric decay", criterion4),
        ("Alexandrov–Clark agreement", criterion5),
        ("synthesis round trip", criterion6),
        ("kernel Gram positivity", criterion7),
        ("invariance under H-fixing conjugation", criterion8),
    ];
    let mut all = true;
    for (n, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        all &= report(n + 1, title, &v, start.elapsed().as_secs_f64());
    }
    println!(
        "acceptance: {}",
        if all { "all criteria passed" } else { "FAILED" }
    );
    if !all {
        std::process::exit(1);
    }
}
