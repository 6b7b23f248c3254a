//! Finite-dimensional modules for group algebras over finite fields.

pub mod construct;
pub mod decompose;
pub mod hom;
pub mod rep;
pub mod vertex;

pub use construct::{dual, direct_sum, embed, induce, inflate, perm_module, regular_module, restrict, tensor, tensor_induce};
pub use rep::{left_inverse, Provenance, Representation, DEFAULT_DIM_CAP};
pub use hom::{end_space, hom_space, is_hom, perm_hom_basis};
pub use decompose::{decompose, iso, Decomposition, Indecomposable, LocalCertificate, Summand, DEFAULT_SEED};
pub use vertex::{has_trivial_source, higman_projective, is_projective, relative_trace, vertex, HigmanResult, VertexReport};
