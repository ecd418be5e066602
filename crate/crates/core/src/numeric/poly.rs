//! Complex polynomials and companion-matrix root finding.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::ComplexField;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{re, Real};

use super::eigen::eigenvalues;
use super::matrix::CMatrix;

/// Polynomial with complex coefficients in ascending degree order.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T: Real> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> Polynomial<T> {
    /// Builds a polynomial from ascending coefficients `c_0, c_1, ...`.
    pub fn new(coeffs: Vec<Complex<T>>) -> Self {
        Self { coeffs }
    }

    /// Constant polynomial.
    pub fn constant(c: Complex<T>) -> Self {
        Self { coeffs: vec![c] }
    }

    /// The monomial `z`.
    pub fn z() -> Self {
        Self {
            coeffs: vec![
                Complex::new(T::zero(), T::zero()),
                Complex::new(T::one(), T::zero()),
            ],
        }
    }

    /// Linear factor `z − a`.
    pub fn linear(a: Complex<T>) -> Self {
        Self {
            coeffs: vec![-a, Complex::new(T::one(), T::zero())],
        }
    }

    /// Ascending coefficients.
    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// Largest coefficient modulus.
    pub fn norm(&self) -> T {
        self.coeffs.iter().fold(
            T::zero(),
            |acc, c| if c.modulus() > acc { c.modulus() } else { acc },
        )
    }

    /// Removes leading coefficients with modulus ≤ `tol·‖p‖`.
    pub fn trimmed(&self, tol: T) -> Self {
        let thr = tol * self.norm();
        let mut coeffs = self.coeffs.clone();
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.modulus() <= thr) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    /// Formal degree (length − 1, zero for the empty polynomial).
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Leading coefficient.
    pub fn leading(&self) -> Complex<T> {
        self.coeffs
            .last()
            .copied()
            .unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(T::zero(), T::zero()), |acc, &c| acc * z + c)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::constant(Complex::new(T::zero(), T::zero()));
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * re(T::from_count(k)))
            .collect();
        Self { coeffs }
    }

    /// Multiplies every coefficient by `s`.
    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        }
    }
}

impl<T: Real> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Complex::new(T::zero(), T::zero());
        let coeffs = (0..n)
            .map(|k| {
                self.coeffs.get(k).copied().unwrap_or(zero)
                    + rhs.coeffs.get(k).copied().unwrap_or(zero)
            })
            .collect();
        Polynomial { coeffs }
    }
}

impl<T: Real> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial {
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }
}

impl<T: Real> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: Self) -> Polynomial<T> {
        self + &(-rhs)
    }
}

impl<T: Real> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Polynomial { coeffs: Vec::new() };
        }
        let mut coeffs =
            vec![Complex::new(T::zero(), T::zero()); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (j, &a) in self.coeffs.iter().enumerate() {
            for (k, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[j + k] += a * b;
            }
        }
        Polynomial { coeffs }
    }
}

/// `lead · Π (z − r)`.
pub fn poly_from_roots<T: Real>(roots: &[Complex<T>], lead: Complex<T>) -> Polynomial<T> {
    roots.iter().fold(Polynomial::constant(lead), |acc, &r| {
        &acc * &Polynomial::linear(r)
    })
}

/// Single-linkage clustering of complex points with radius `tol`.
///
/// Returns `(mean, member indices)` per cluster in order of first appearance.
pub fn cluster_points<T: Real>(points: &[Complex<T>], tol: T) -> Vec<(Complex<T>, Vec<usize>)> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for a in 0..n {
        for b in (a + 1)..n {
            if (points[a] - points[b]).modulus() <= tol {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[rb.max(ra)] = rb.min(ra);
                }
            }
        }
    }
    let mut order: Vec<usize> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for j in 0..n {
        let r = find(&mut parent, j);
        match order.iter().position(|&o| o == r) {
            Some(g) => groups[g].push(j),
            None => {
                order.push(r);
                groups.push(vec![j]);
            }
        }
    }
    groups
        .into_iter()
        .map(|g| {
            let sum = g
                .iter()
                .fold(Complex::new(T::zero(), T::zero()), |acc, &j| {
                    acc + points[j]
                });
            (sum / re(T::from_count(g.len())), g)
        })
        .collect()
}

/// Roots of `p` with multiplicity.
///
/// Companion-matrix eigenvalues are refined by two guarded Newton steps; roots
/// within `tol·max(1, |root|)` of each other are merged into one multiple root
/// located at the cluster mean.
pub fn poly_roots<T: Real>(p: &Polynomial<T>, tol: T) -> Result<Vec<Complex<T>>> {
    if p.norm() == T::zero() {
        return Err(Error::ZeroPolynomial);
    }
    let p = p.trimmed(tol);
    let d = p.degree();
    if d == 0 {
        return Err(Error::DegreeTooLow { degree: 0 });
    }
    let lead = p.leading();
    let mut comp = CMatrix::<T>::zeros(d, d);
    // First row holds −c_{d−1}/c_d, ..., −c_0/c_d; sub-diagonal of ones.
    for k in 0..d {
        comp[(0, k)] = -p.coeffs()[d - 1 - k] / lead;
    }
    for k in 1..d {
        comp[(k, k - 1)] = Complex::new(T::one(), T::zero());
    }
    let mut roots = eigenvalues(&comp)?;

    let dp = p.derivative();
    for r in roots.iter_mut() {
        for _ in 0..2 {
            let f = p.eval(*r);
            let df = dp.eval(*r);
            if df.modulus() == T::zero() {
                break;
            }
            let cand = *r - f / df;
            if crate::scalar::is_finite(cand) && p.eval(cand).modulus() <= f.modulus() {
                *r = cand;
            }
        }
    }

    let scale = roots.iter().fold(
        T::one(),
        |acc, r| if r.modulus() > acc { r.modulus() } else { acc },
    );
    let mut clusters: Vec<(Complex<T>, usize)> = cluster_points(&roots, tol * scale)
        .into_iter()
        .map(|(mean, members)| (mean, members.len()))
        .collect();

    // An m-fold root is only resolved to about ε^{1/m}, so higher multiplicities
    // can split beyond `tol`. Widen the merge radius step by step and accept a
    // merge only if the refined centre annihilates the Taylor coefficients of
    // order below the merged multiplicity.
    let ten = T::lit(10.0);
    let max_radius = T::lit(1e-2) * scale;
    let mut radius = tol * scale * ten;
    // Relative coefficient noise that splits a double root by about `tol`.
    let noise = (tol * tol).max(T::lit(64.0) * T::machine_eps());
    while radius <= max_radius {
        clusters = merge_validated(&p, clusters, radius, noise);
        radius *= ten;
    }

    let mut out = Vec::with_capacity(d);
    for (mean, m) in clusters {
        out.extend(std::iter::repeat(mean).take(m));
    }
    Ok(out)
}

/// One widening pass: groups clusters within `radius` and keeps a group merged
/// only when its centre passes the multiple-root test.
fn merge_validated<T: Real>(
    p: &Polynomial<T>,
    clusters: Vec<(Complex<T>, usize)>,
    radius: T,
    noise: T,
) -> Vec<(Complex<T>, usize)> {
    let means: Vec<Complex<T>> = clusters.iter().map(|c| c.0).collect();
    let mut out = Vec::with_capacity(clusters.len());
    for (_, members) in cluster_points(&means, radius) {
        if members.len() == 1 {
            out.push(clusters[members[0]]);
            continue;
        }
        let m: usize = members.iter().map(|&k| clusters[k].1).sum();
        let weighted = members
            .iter()
            .fold(Complex::new(T::zero(), T::zero()), |acc, &k| {
                acc + clusters[k].0 * re(T::from_count(clusters[k].1))
            });
        let centre = refine_multiple_root(p, weighted / re(T::from_count(m)), m);
        if is_multiple_root(p, centre, m, noise) {
            out.push((centre, m));
        } else {
            out.extend(members.iter().map(|&k| clusters[k]));
        }
    }
    out
}

/// Guarded Newton steps on `p^{(m−1)}`, for which an m-fold root of `p` is simple.
fn refine_multiple_root<T: Real>(p: &Polynomial<T>, start: Complex<T>, m: usize) -> Complex<T> {
    let mut q = p.clone();
    for _ in 1..m {
        q = q.derivative();
    }
    let dq = q.derivative();
    let mut z = start;
    for _ in 0..4 {
        let f = q.eval(z);
        let df = dq.eval(z);
        if df.modulus() == T::zero() {
            break;
        }
        let cand = z - f / df;
        if !crate::scalar::is_finite(cand) || q.eval(cand).modulus() > f.modulus() {
            break;
        }
        z = cand;
    }
    z
}

/// Whether the Taylor coefficients of `p` at `c` of order `0..m` all vanish to
/// within `noise` of their natural magnitude `Σ_k |a_k| C(k, j) |c|^{k−j}`.
fn is_multiple_root<T: Real>(p: &Polynomial<T>, c: Complex<T>, m: usize, noise: T) -> bool {
    let r = c.modulus();
    let mut q = p.clone();
    let mut factorial = T::one();
    for j in 0..m {
        if j > 0 {
            q = q.derivative();
            factorial *= T::from_count(j);
        }
        let taylor = q.eval(c).modulus() / factorial;
        let mut magnitude = T::zero();
        for (k, a) in p.coeffs().iter().enumerate().skip(j) {
            magnitude += a.modulus() * binomial::<T>(k, j) * r.powi((k - j) as i32);
        }
        if taylor > noise * magnitude {
            return false;
        }
    }
    true
}

fn binomial<T: Real>(n: usize, k: usize) -> T {
    (0..k).fold(T::one(), |acc, i| {
        acc * T::from_count(n - i) / T::from_count(i + 1)
    })
}
