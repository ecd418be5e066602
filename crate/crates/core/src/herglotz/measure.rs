//! Finite atomic PSD-matrix-valued measures.

use nalgebra::ComplexField;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numeric::{psd_check, CMatrix};
use crate::scalar::Real;

/// Matching tolerance for atom locations and weights.
pub const ATOM_TOL: f64 = 1e-8;

/// [`ATOM_TOL`] widened to `√ε` for scalar types coarser than `f64`.
pub fn atom_tol<T: Real>() -> T {
    T::lit(ATOM_TOL).max(T::machine_eps().sqrt())
}

/// Where the atoms live.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// The unit circle 𝕋.
    Circle,
    /// The real line ℝ.
    Line,
}

/// A point mass with PSD matrix weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom<T: Real> {
    /// Location (unimodular on the circle, real on the line).
    pub point: Complex<T>,
    /// `n×n` PSD weight.
    pub weight: CMatrix<T>,
}

/// Finitely many atoms with PSD `n×n` weights.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomicMatrixMeasure<T: Real> {
    domain: Domain,
    dim: usize,
    atoms: Vec<Atom<T>>,
}

impl<T: Real> AtomicMatrixMeasure<T> {
    /// Validates and builds a measure: weights `dim×dim` PSD within `tol`,
    /// points on the domain within `tol`, pairwise distinct.
    pub fn new(domain: Domain, dim: usize, atoms: Vec<Atom<T>>, tol: T) -> Result<Self> {
        let mut clean = Vec::with_capacity(atoms.len());
        for a in atoms {
            if a.weight.shape() != (dim, dim) {
                return Err(Error::DimensionMismatch(format!(
                    "atom weight is {}×{}, expected {dim}×{dim}",
                    a.weight.nrows(),
                    a.weight.ncols()
                )));
            }
            let rep = psd_check(&a.weight, tol)?;
            if !rep.psd {
                return Err(Error::InvalidInput(format!(
                    "atom weight not PSD (smallest eigenvalue {:e})",
                    rep.min_eigenvalue.to_f64_lossy()
                )));
            }
            let point = match domain {
                Domain::Circle => {
                    if (a.point.modulus() - T::one()).abs() > tol {
                        return Err(Error::InvalidInput("circle atom not unimodular".into()));
                    }
                    a.point
                }
                Domain::Line => {
                    if a.point.im.abs() > tol {
                        return Err(Error::InvalidInput("line atom not real".into()));
                    }
                    Complex::new(a.point.re, T::zero())
                }
            };
            if clean
                .iter()
                .any(|b: &Atom<T>| (b.point - point).modulus() <= tol)
            {
                return Err(Error::InvalidInput("atoms are not distinct".into()));
            }
            clean.push(Atom {
                point,
                weight: a.weight,
            });
        }
        Ok(Self {
            domain,
            dim,
            atoms: clean,
        })
    }

    /// Domain of the atoms.
    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Matrix size of the weights.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The atoms.
    pub fn atoms(&self) -> &[Atom<T>] {
        &self.atoms
    }

    /// Number of atoms.
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    /// True when there are no atoms.
    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Sum of all weights.
    pub fn total_mass(&self) -> CMatrix<T> {
        self.atoms
            .iter()
            .fold(CMatrix::zeros(self.dim, self.dim), |acc, a| acc + &a.weight)
    }

    /// Weight of the atom within `tol` of `point`.
    pub fn weight_at(&self, point: Complex<T>, tol: T) -> Option<&CMatrix<T>> {
        self.atoms
            .iter()
            .find(|a| (a.point - point).modulus() <= tol)
            .map(|a| &a.weight)
    }

    /// Equality up to `point_tol` in locations and `weight_tol` in Frobenius
    /// norm of weights (atoms with weight below `weight_tol` are ignored).
    pub fn approx_eq(&self, other: &Self, point_tol: T, weight_tol: T) -> bool {
        if self.domain != other.domain || self.dim != other.dim {
            return false;
        }
        let covers = |a: &Self, b: &Self| {
            a.atoms
                .iter()
                .filter(|x| x.weight.norm() > weight_tol)
                .all(|x| match b.weight_at(x.point, point_tol) {
                    Some(w) => (w - &x.weight).norm() <= weight_tol,
                    None => false,
                })
        };
        covers(self, other) && covers(other, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    fn w(x: f64) -> CMatrix<f64> {
        CMatrix::from_element(1, 1, cx(x, 0.0))
    }

    #[test]
    fn rejects_negative_weight() {
        let r = AtomicMatrixMeasure::new(
            Domain::Line,
            1,
            vec![Atom {
                point: cx(0.0, 0.0),
                weight: w(-1.0),
            }],
            1e-9,
        );
        assert!(r.is_err());
    }

    #[test]
    fn rejects_off_circle_point() {
        let r = AtomicMatrixMeasure::new(
            Domain::Circle,
            1,
            vec![Atom {
                point: cx(0.5, 0.0),
                weight: w(1.0),
            }],
            1e-9,
        );
        assert!(r.is_err());
    }

    #[test]
    fn rejects_duplicate_points() {
        let a = Atom {
            point: cx(1.0, 0.0),
            weight: w(0.5),
        };
        let r = AtomicMatrixMeasure::new(Domain::Circle, 1, vec![a.clone(), a], 1e-9);
        assert!(r.is_err());
    }

    #[test]
    fn total_mass_and_lookup() {
        let m = AtomicMatrixMeasure::new(
            Domain::Circle,
            1,
            vec![
                Atom {
                    point: cx(1.0, 0.0),
                    weight: w(0.25),
                },
                Atom {
                    point: cx(0.0, 1.0),
                    weight: w(0.75),
                },
            ],
            1e-9,
        )
        .unwrap();
        assert!((m.total_mass()[(0, 0)] - cx(1.0, 0.0)).norm() < 1e-15);
        assert!(m.weight_at(cx(0.0, 1.0), 1e-8).is_some());
        assert!(m.approx_eq(&m.clone(), 1e-8, 1e-8));
    }
}
