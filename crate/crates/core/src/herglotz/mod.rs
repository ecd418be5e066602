//! Atomic matrix-valued measures on the circle and the line, the
//! disk↔half-plane Herglotz dictionary, Herglotz-space reproducing kernels and
//! Cauchy transforms.
//!
//! Normalisation: circle measures are stored as `J*P_U(Ω)J` with no factor π,
//! so a unital measure has total mass `I`. Line measures carry the factor
//! `π(1 + t²)` of the half-plane Herglotz representation. Every other π is
//! applied at the formula that needs it.

mod cauchy;
mod kernel;
mod measure;
mod transform;

pub use cauchy::cauchy_transform;
pub use kernel::{herglotz_kernel, KernelGram};
pub use measure::{atom_tol, Atom, AtomicMatrixMeasure, Domain, ATOM_TOL};
pub use transform::{herglotz_eval, inverse_measure_transform, measure_transform, HerglotzData};
