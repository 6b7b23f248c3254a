//! The trivial-source Green ring `a(kG, triv)` as a free ℤ-module.

pub mod basis;
pub mod ring;
pub mod species;

pub use basis::{ts_basis, ClassVector, TSBasis, TsElement};
pub use ring::MultTable;
pub use species::SpeciesTable;
