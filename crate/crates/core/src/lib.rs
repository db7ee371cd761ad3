//! Exact computation in the coordinate rings of arc spaces of determinantal
//! varieties: derived minors, standard products, straightening, and
//! executable checks of the fundamental theorems for jet groups of `GL_h`.

pub mod error;
pub mod int;
pub mod linalg;
pub mod ring;

pub use error::{Error, Result};
pub use int::Int;
pub mod minors;
pub mod morphism;
pub mod tableaux;
pub mod straighten;
pub mod verify;

#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/ring.md")]
    mod ring {}
    #[doc = include_str!("../../../book/src/minors.md")]
    mod minors {}
    #[doc = include_str!("../../../book/src/factorization.md")]
    mod factorization {}
    #[doc = include_str!("../../../book/src/standard.md")]
    mod standard {}
    #[doc = include_str!("../../../book/src/straightening.md")]
    mod straightening {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
