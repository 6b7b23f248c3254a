pub mod classify;
pub mod error;
pub mod green;
pub mod group;
pub mod numtheory;
pub mod primordial;

pub use error::{Error, Result};
pub mod field;
pub mod linalg;
pub mod modrep;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/modules.md")]
    struct Modules;
    #[doc = include_str!("../../../book/src/green-ring.md")]
    struct GreenRing;
    #[doc = include_str!("../../../book/src/primordial.md")]
    struct Primordial;
    #[doc = include_str!("../../../book/src/outputs.md")]
    struct Outputs;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
