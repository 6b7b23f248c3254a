//! Exact linear algebra over finite fields and the integers.

pub mod ffmat;
pub mod gf;
pub mod intmat;
pub mod poly;

pub use ffmat::{axpy, ff_solve, FFMatrix, RowEchelon, Solution};
pub use gf::{Fe, GaloisField};
pub use intmat::{hnf, lattice_contains, lattice_equals_full, snf, Hnf, IntMatrix, Snf};
