//! Homology generated by a cochain complex, computed exactly.
//!
//! The homology H̄ₙ(C*; G) of a bounded cochain complex of finitely generated
//! abelian groups is the homology of the cone of
//! β#: Hom(C*, G′) → Hom(C*, G″) for an injective resolution
//! 0 → G → G′ → G″ → 0. This crate computes it with arbitrary-precision
//! arithmetic and checks the universal coefficient sequence
//! 0 → Ext(Hⁿ⁺¹; G) → H̄ₙ → Hom(Hⁿ; G) → 0, the comparison with the homology
//! of Hom(C*; G), and the lim/lim¹ sequences for towers of complexes.

pub mod error;
pub mod lattice;
pub mod qz;
pub mod complex;
pub mod cone;
pub mod limits;
pub mod simplicial;
pub mod document;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/cone.md")]
    mod cone {}
    #[doc = include_str!("../../../book/src/classical.md")]
    mod classical {}
    #[doc = include_str!("../../../book/src/limits.md")]
    mod limits {}
    #[doc = include_str!("../../../book/src/systems.md")]
    mod systems {}
    #[doc = include_str!("../../../book/src/simplicial.md")]
    mod simplicial {}
    #[doc = include_str!("../../../book/src/documents.md")]
    mod documents {}
}
