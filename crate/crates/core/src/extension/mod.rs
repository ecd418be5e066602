//! Unitary extensions of a partial isometry: Clark measures and the
//! characteristic function Φ[A;B], model maps and reproducing kernels,
//! cyclic expansions, the Alexandrov–Clark family, synthesis of an extension
//! with prescribed characteristic function, and the partial-order verifier.
//!
//! Throughout, `U` acts on C^M and the base space H = C^N is embedded as the
//! first `N` coordinates. Every unbounded object (the self-adjoint `A`,
//! resolvents of `A`) is handled through Cayley transforms, so extensions
//! with eigenvalue 1 need no special treatment.

mod checks;
mod cyclic;
mod data;
mod model;
mod order;
mod synth;

pub use checks::{ac_check, equivalence_invariance, AgreementReport};
pub use cyclic::{cyclic_expansion, CyclicExpansion};
pub use data::{clark_measure, ext_char, ext_char_matrix, herglotz_data, ExtensionData};
pub use model::{
    big_kernel, big_kernel_from_measure, lambda_identity, model_maps, small_kernel,
    small_kernel_from_livsic, LambdaReport, ModelMaps,
};
pub use order::{domain_images, pochar_verify, tabulated, LineFn, OrderWitness, PocharReport};
pub use synth::{synthesize_extension, tm_compressed_shift, Synthesis};
