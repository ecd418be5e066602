//! Random generators shared by the property tests.
#![allow(dead_code)]

use livsic_core::numeric::{embed, identity, CMatrix};
use livsic_core::operator::{canonical_extension, coupled_extension, deficiency_data};
use livsic_core::scalar::cx;
use livsic_core::{Extension, Matrix, System, C64};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn ginibre(rng: &mut StdRng, rows: usize, cols: usize) -> Matrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        cx(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
pub fn haar_unitary(rng: &mut StdRng, n: usize) -> Matrix {
    let qr = ginibre(rng, n, n).qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = CMatrix::from_diagonal(&r.diagonal().map(|d| {
        if d.norm() > 0.0 {
            d / d.norm()
        } else {
            cx(1.0, 0.0)
        }
    }));
    q * phases
}

/// `V = W₁·diag(1, …, 1, 0, …, 0)·W₂` with `n` zeros.
pub fn random_partial_isometry(rng: &mut StdRng, dim: usize, index: usize) -> Matrix {
    let w1 = haar_unitary(rng, dim);
    let w2 = haar_unitary(rng, dim);
    let mut p = identity::<f64>(dim);
    for k in dim - index..dim {
        p[(k, k)] = cx(0.0, 0.0);
    }
    w1 * p * w2
}

/// A simple system with the given size and index.
pub fn random_system(rng: &mut StdRng, dim: usize, index: usize) -> System {
    loop {
        let v = random_partial_isometry(rng, dim, index);
        let sys = deficiency_data(&v, 1e-9).expect("partial isometry");
        if sys.is_simple() {
            return sys;
        }
    }
}

pub fn random_upper(rng: &mut StdRng) -> C64 {
    cx(rng.random_range(-2.0..2.0), rng.random_range(0.2..2.5))
}

pub fn random_nonreal(rng: &mut StdRng) -> C64 {
    let z = random_upper(rng);
    if rng.random_bool(0.5) {
        z
    } else {
        z.conj()
    }
}

pub fn random_canonical(rng: &mut StdRng, sys: &System) -> Extension {
    let u = canonical_extension(sys, &haar_unitary(rng, sys.index())).unwrap();
    Extension::new(u, sys.clone(), 1e-9).unwrap()
}

/// One extra dimension coupled through a random unitary.
pub fn random_coupled(rng: &mut StdRng, sys: &System) -> Extension {
    loop {
        let c = haar_unitary(rng, sys.index() + 1);
        let u = coupled_extension(sys, 1, &c).unwrap();
        if let Ok(ext) = Extension::new(u, sys.clone(), 1e-9) {
            return ext;
        }
    }
}

/// A random unitary on C^M acting as the identity on the first `n` coordinates.
pub fn random_h_fixing(rng: &mut StdRng, m: usize, n: usize) -> Matrix {
    let mut w = identity::<f64>(m);
    if m > n {
        let tail = haar_unitary(rng, m - n);
        w.view_mut((n, n), (m - n, m - n)).copy_from(&tail);
    }
    w
}

pub fn embed_vec(v: &Matrix, rows: usize) -> Matrix {
    embed(v, rows, v.ncols())
}
