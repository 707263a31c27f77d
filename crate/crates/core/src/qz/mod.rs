//! Groups built from Q, Q/Z, Z and finite cyclic summands, with exact
//! kernels, images, quotients and homology.

mod group;
mod hom;
mod lattice;
mod presentation;

pub use group::{block_morphism, QZElement, QZGroup, QZMorphism, Summand};
pub use hom::{extend_to_divisible, hom_into, induced, postcompose, HomSpace};
pub use lattice::{mixed_kernel, mixed_solve, MixedLattice};
pub use presentation::{
    homology_qz, image_qz, is_injective, is_isomorphism, is_surjective, kernel_qz, quotient_qz,
    rational_lattice_basis, Presented, QZPresentation,
};

