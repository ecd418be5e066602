//! Circle ↔ line measure dictionary and Herglotz evaluation on C₊.

use nalgebra::ComplexField;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::inner::{HerglotzFn, MatrixContractive};
use crate::numeric::{identity, psd_check, solve, CMatrix};
use crate::operator::{b, b_inv};
use crate::scalar::{imag_unit, re, Real};

use super::measure::{atom_tol, Atom, AtomicMatrixMeasure, Domain};

/// Half-plane Herglotz data `(P, Σ)`: `P` is the circle mass at 1 (the
/// coefficient of the linear term) and `Σ` a line measure.
#[derive(Debug, Clone, PartialEq)]
pub struct HerglotzData<T: Real> {
    p: CMatrix<T>,
    measure: AtomicMatrixMeasure<T>,
}

impl<T: Real> HerglotzData<T> {
    /// Validates `P ⪰ 0` and that `measure` lives on the line.
    pub fn new(p: CMatrix<T>, measure: AtomicMatrixMeasure<T>, tol: T) -> Result<Self> {
        if measure.domain() != Domain::Line {
            return Err(Error::InvalidInput(
                "Herglotz data needs a line measure".into(),
            ));
        }
        if p.shape() != (measure.dim(), measure.dim()) {
            return Err(Error::DimensionMismatch(
                "P and measure sizes differ".into(),
            ));
        }
        if !psd_check(&p, tol)?.psd {
            return Err(Error::InvalidInput("P is not PSD".into()));
        }
        Ok(Self { p, measure })
    }

    /// The mass at 1.
    pub fn p(&self) -> &CMatrix<T> {
        &self.p
    }

    /// The line measure Σ.
    pub fn measure(&self) -> &AtomicMatrixMeasure<T> {
        &self.measure
    }

    /// Matrix size.
    pub fn dim(&self) -> usize {
        self.p.nrows()
    }

    /// Circle weights `Σ(t)/(π(1 + t²))` paired with line points.
    pub(crate) fn circle_weights(&self) -> Vec<(T, CMatrix<T>)> {
        self.measure
            .atoms()
            .iter()
            .map(|a| {
                let t = a.point.re;
                (t, &a.weight * re(T::one() / (T::pi() * (T::one() + t * t))))
            })
            .collect()
    }

    /// `G(z) = −izP + Σ_t (tz + 1)/(i(t − z))·σ_t`, valid at every `z` that is
    /// not an atom (real points included).
    pub(crate) fn value(&self, z: Complex<T>) -> Result<CMatrix<T>> {
        let i = imag_unit::<T>();
        let mut g = &self.p * (-i * z);
        for (t, w) in self.circle_weights() {
            let den = i * (re(t) - z);
            if den.modulus() <= T::machine_eps() * (T::one() + t.abs()) {
                return Err(Error::pole(re(t)));
            }
            g += w * ((re(t) * z + re(T::one())) / den);
        }
        Ok(g)
    }

    /// The Herglotz function `G` as an evaluator.
    pub fn to_fn(&self) -> HerglotzFn<T> {
        let data = self.clone();
        HerglotzFn::new(self.dim(), move |z| data.value(z))
    }

    /// `Φ = (G − 1)(G + 1)⁻¹` as a matrix evaluator (boundary values allowed
    /// away from the atoms).
    pub fn to_contractive(&self) -> MatrixContractive<T> {
        let data = self.clone();
        let n = self.dim();
        let degree = self.measure.len() + usize::from(self.p.norm() > T::zero());
        MatrixContractive::new(n, Some(degree), move |z| {
            let g = data.value(z)?;
            let id = identity::<T>(n);
            let inv = solve(&(&g + &id), &id, z)?;
            Ok((g - id) * inv)
        })
    }
}

/// Circle measure σ → half-plane data: `P = σ({1})`, and each atom `(α, w)`
/// with `α ≠ 1` becomes a line atom at `t = b⁻¹(α)` with weight `π(1 + t²)w`.
pub fn measure_transform<T: Real>(sigma: &AtomicMatrixMeasure<T>) -> Result<HerglotzData<T>> {
    if sigma.domain() != Domain::Circle {
        return Err(Error::InvalidInput(
            "measure_transform needs a circle measure".into(),
        ));
    }
    let n = sigma.dim();
    let one = Complex::new(T::one(), T::zero());
    let mut p = CMatrix::zeros(n, n);
    let mut atoms = Vec::new();
    for a in sigma.atoms() {
        if (a.point - one).modulus() <= atom_tol::<T>() {
            p += &a.weight;
        } else {
            let t = b_inv(a.point)?.re;
            atoms.push(Atom {
                point: re(t),
                weight: &a.weight * re(T::pi() * (T::one() + t * t)),
            });
        }
    }
    let measure = AtomicMatrixMeasure::new(Domain::Line, n, atoms, atom_tol::<T>())?;
    Ok(HerglotzData { p, measure })
}

/// Inverse of [`measure_transform`]: line atom `t` ↦ circle atom `b(t)` with
/// weight `Σ(t)/(π(1 + t²))`, plus `P` at 1.
pub fn inverse_measure_transform<T: Real>(h: &HerglotzData<T>) -> Result<AtomicMatrixMeasure<T>> {
    let n = h.dim();
    let mut atoms = Vec::new();
    if h.p.norm() > T::zero() {
        atoms.push(Atom {
            point: Complex::new(T::one(), T::zero()),
            weight: h.p.clone(),
        });
    }
    for (t, w) in h.circle_weights() {
        atoms.push(Atom {
            point: b(re(t))?,
            weight: w,
        });
    }
    AtomicMatrixMeasure::new(Domain::Circle, n, atoms, atom_tol::<T>())
}

/// Evaluates the Herglotz function of `h` at non-real `z`.
pub fn herglotz_eval<T: Real>(h: &HerglotzData<T>, z: Complex<T>) -> Result<CMatrix<T>> {
    if z.im == T::zero() {
        return Err(Error::real_point(z));
    }
    h.value(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cx;

    fn w(x: f64) -> CMatrix<f64> {
        CMatrix::from_element(1, 1, cx(x, 0.0))
    }

    pub(crate) fn fdeg_sigma() -> AtomicMatrixMeasure<f64> {
        AtomicMatrixMeasure::new(
            Domain::Circle,
            1,
            vec![
                Atom {
                    point: cx(1.0, 0.0),
                    weight: w(4.0 / 9.0),
                },
                Atom {
                    point: cx(-0.8, 0.6),
                    weight: w(5.0 / 18.0),
                },
                Atom {
                    point: cx(-0.8, -0.6),
                    weight: w(5.0 / 18.0),
                },
            ],
            1e-12,
        )
        .unwrap()
    }

    #[test]
    fn fdeg_transform_and_normalisation() {
        let h = measure_transform(&fdeg_sigma()).unwrap();
        assert!((h.p()[(0, 0)] - cx(4.0 / 9.0, 0.0)).norm() < 1e-15);
        for t in [1.0 / 3.0, -1.0 / 3.0] {
            let wt = h.measure().weight_at(cx(t, 0.0), 1e-12).unwrap();
            let want = std::f64::consts::PI * (1.0 + t * t) * 5.0 / 18.0;
            assert!((wt[(0, 0)].re - want).abs() < 1e-14);
        }
        let g = herglotz_eval(&h, cx(0.0, 1.0)).unwrap();
        assert!((g[(0, 0)] - cx(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn fdeg_closed_form_at_2i() {
        let h = measure_transform(&fdeg_sigma()).unwrap();
        let z: Complex<f64> = cx(0.0, 2.0);
        let i: Complex<f64> = cx(0.0, 1.0);
        let third: Complex<f64> = cx(1.0 / 3.0, 0.0);
        let one: Complex<f64> = cx(1.0, 0.0);
        // Closed form including the 1/i of the Herglotz integrand.
        let closed = -i * z * (4.0 / 9.0)
            + (z * third + one) / (i * (third - z)) * (5.0 / 18.0)
            + (z * third - one) / (i * (third + z)) * (5.0 / 18.0);
        assert!((herglotz_eval(&h, z).unwrap()[(0, 0)] - closed).norm() < 1e-12);
    }

    #[test]
    fn pure_linear_term() {
        let m = AtomicMatrixMeasure::new(
            Domain::Circle,
            1,
            vec![Atom {
                point: cx(1.0, 0.0),
                weight: w(1.0),
            }],
            1e-12,
        )
        .unwrap();
        let h = measure_transform(&m).unwrap();
        assert!(h.measure().is_empty());
        let z: Complex<f64> = cx(0.3, 0.8);
        assert!((herglotz_eval(&h, z).unwrap()[(0, 0)] + cx::<f64>(0.0, 1.0) * z).norm() < 1e-15);
    }

    #[test]
    fn extension_convention() {
        let h = measure_transform(&fdeg_sigma()).unwrap();
        let z = cx(0.7, 1.3);
        let a = herglotz_eval(&h, z.conj()).unwrap().adjoint();
        let c = herglotz_eval(&h, z).unwrap();
        assert!((a + c).norm() < 1e-13);
    }

    #[test]
    fn real_point_rejected() {
        let h = measure_transform(&fdeg_sigma()).unwrap();
        assert!(matches!(
            herglotz_eval(&h, cx(0.5, 0.0)),
            Err(Error::RealPoint { .. })
        ));
    }

    #[test]
    fn round_trip() {
        let s = fdeg_sigma();
        let back = inverse_measure_transform(&measure_transform(&s).unwrap()).unwrap();
        assert!(back.approx_eq(&s, 1e-12, 1e-12));
    }
}
