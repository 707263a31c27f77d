//! The cone of Hom(C*, G′) → Hom(C*, G″) and its universal coefficient sequence.

mod classical;
mod complex;
mod kerxi;
mod naturality;
mod resolution;
mod ucf;

pub use classical::{
    alpha_star, alpha_star_chain, chi_classical, classical_boundary, classical_homology, classical_homology_fg, verify_classical,
    xi_classical, ClassicalReport,
};
pub use complex::{ConeComplex, ConeGroup, ConeHomology, ConeMap};
pub use kerxi::{ker_xi, omega, sigma, verify_ker_xi, KerXiReport};
pub use naturality::{functoriality_check, induced_on_quotient, naturality_check, NaturalityReport};
pub use resolution::InjectiveResolution;
pub use ucf::{verify_ucf, KernelWitness, UcfMaps, UcfReport};
