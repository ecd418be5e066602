//! Cauchy (de Branges) transform of vector functions on a line measure.

use nalgebra::ComplexField;
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numeric::CVector;
use crate::scalar::{imag_unit, re, Real};

use super::measure::{AtomicMatrixMeasure, Domain};

/// `(1/(iπ))·Σ_t Σ(t)h(t)/(t − z)` for values `h[k]` at the atoms of `measure`.
pub fn cauchy_transform<T: Real>(
    measure: &AtomicMatrixMeasure<T>,
    h: &[CVector<T>],
    z: Complex<T>,
) -> Result<CVector<T>> {
    if measure.domain() != Domain::Line {
        return Err(Error::InvalidInput(
            "Cauchy transform needs a line measure".into(),
        ));
    }
    if z.im == T::zero() {
        return Err(Error::real_point(z));
    }
    if h.len() != measure.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} values for {} atoms",
            h.len(),
            measure.len()
        )));
    }
    let mut out = CVector::zeros(measure.dim());
    for (a, v) in measure.atoms().iter().zip(h) {
        if v.len() != measure.dim() {
            return Err(Error::DimensionMismatch(
                "value length differs from measure size".into(),
            ));
        }
        out += &a.weight * v / (a.point - z);
    }
    let scale = imag_unit::<T>() * re(T::pi());
    debug_assert!(scale.modulus() > T::zero());
    Ok(out / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::herglotz::Atom;
    use crate::numeric::CMatrix;
    use crate::scalar::cx;

    #[test]
    fn single_atom() {
        let wt = CMatrix::from_row_iterator(
            2,
            2,
            [cx(2.0, 0.0), cx(0.0, 1.0), cx(0.0, -1.0), cx(1.0, 0.0)],
        );
        let m = AtomicMatrixMeasure::new(
            Domain::Line,
            2,
            vec![Atom {
                point: cx(0.5, 0.0),
                weight: wt.clone(),
            }],
            1e-9,
        )
        .unwrap();
        let e1 = CVector::from_column_slice(&[cx(1.0, 0.0), cx(0.0, 0.0)]);
        let z: Complex<f64> = cx(0.2, 1.1);
        let got: CVector<f64> = cauchy_transform(&m, std::slice::from_ref(&e1), z).unwrap();
        let want: CVector<f64> =
            &wt * &e1 / ((cx::<f64>(0.5, 0.0) - z) * cx::<f64>(0.0, std::f64::consts::PI));
        assert!((got - want).norm() < 1e-15);
    }
}
