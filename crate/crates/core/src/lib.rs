//! Computable extension theory of finite-dimensional symmetric operators.
//!
//! A symmetric operator `B` with equal deficiency indices is carried by its
//! Cayley transform, a partial isometry `V`. From `V` and a unitary extension
//! `U` the crate computes Livsic characteristic functions, Clark and Herglotz
//! measures, characteristic functions `Φ[A;B]` of extensions, model kernels,
//! and checks the divisibility order between them.
//!
//! Every algorithm is generic over the real scalar type (`f32` or `f64`) via
//! [`Real`]; the aliases at the crate root fix `f64` for convenience.

pub mod error;
pub mod extension;
pub mod golden;
pub mod herglotz;
pub mod inner;
pub mod numeric;
pub mod operator;
pub mod scalar;

pub use error::{Error, Result};
pub use num_complex::Complex;
pub use scalar::Real;

/// Double-precision complex scalar.
pub type C64 = Complex<f64>;
/// Double-precision dense complex matrix.
pub type Matrix = numeric::CMatrix<f64>;
/// Double-precision dense complex vector.
pub type Vector = numeric::CVector<f64>;
/// Double-precision partial isometry system.
pub type System = operator::PartialIsometrySystem<f64>;
/// Double-precision deficiency frame.
pub type Frame = operator::DeficiencyFrame<f64>;
/// Double-precision scalar inner function.
pub type Inner = inner::ScalarInner<f64>;
/// Double-precision matrix-valued contractive function.
pub type Contractive = inner::MatrixContractive<f64>;
/// Double-precision characteristic function (scalar or matrix).
pub type CharFn = inner::CharacteristicFn<f64>;
/// Double-precision atomic matrix measure.
pub type Measure = herglotz::AtomicMatrixMeasure<f64>;
/// Double-precision Herglotz data.
pub type Herglotz = herglotz::HerglotzData<f64>;
/// Double-precision extension data.
pub type Extension = extension::ExtensionData<f64>;
