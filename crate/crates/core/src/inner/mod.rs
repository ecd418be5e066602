//! Rational inner and contractive functions on the upper half-plane: Livsic
//! characteristic functions, Blaschke arithmetic, the divisibility order,
//! Frostman shifts and the Herglotz correspondence.

mod fit;
mod functions;
mod livsic;
mod ops;
mod scalar_inner;

pub use fit::recover_scalar_inner;
pub use functions::{eval_inner, CharacteristicFn, Evaluator, HerglotzFn, MatrixContractive};
pub use livsic::{livsic_char, livsic_matrix, livsic_value};
pub use ops::{
    coincide, coincide_matrix, divides, divides_matrix, frostman_shift, herglotz_link_to_g,
    herglotz_link_to_theta, is_inner, pseudo_hyperbolic, CoincideReport, DivisibilityVerdict,
};
pub use scalar_inner::ScalarInner;

use num_complex::Complex;

use crate::scalar::Real;

/// Twelve fixed sample points in C₊ ∪ C₋ away from ±i.
pub fn default_grid<T: Real>() -> Vec<Complex<T>> {
    const PTS: [(f64, f64); 12] = [
        (0.5, 0.5),
        (-1.3, 0.8),
        (2.1, 1.7),
        (-0.4, 2.6),
        (0.9, 3.5),
        (-2.7, 0.35),
        (0.2, 0.25),
        (1.6, -0.6),
        (-0.8, -1.4),
        (3.0, -2.2),
        (-1.9, -0.3),
        (0.35, -3.1),
    ];
    PTS.iter().map(|&(a, b)| crate::scalar::cx(a, b)).collect()
}

/// The upper-half-plane points of [`default_grid`].
pub fn default_upper_grid<T: Real>() -> Vec<Complex<T>> {
    default_grid::<T>()
        .into_iter()
        .filter(|z| z.im > T::zero())
        .collect()
}
