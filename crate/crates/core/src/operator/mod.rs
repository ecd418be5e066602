//! Partial isometries, Cayley transforms, deficiency subspaces and canonical
//! unitary extensions.
//!
//! The symmetric operator `B` is never materialised: every formula involving
//! `B` is routed through its Cayley transform `V = b(B)` using
//! `dom B = (1 − V)·ker(V)^⊥`, `B(1 − V)g = i(1 + V)g` and
//! `ran(B − z̄) = ((i − z̄) + (i + z̄)V)·ker(V)^⊥`.

mod extend;
mod mobius;
mod system;

pub use extend::{
    canonical_extension, canonical_parameter, coupled_extension, krylov_reducing_dim,
    verify_extension,
};
pub use mobius::{b, b_inv, mobius_eval, MobiusMap};
pub use system::{defect_vector, deficiency_data, DeficiencyFrame, PartialIsometrySystem};
