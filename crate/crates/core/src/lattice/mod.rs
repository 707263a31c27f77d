//! Exact integer and rational linear algebra, and finitely generated abelian groups.

mod group;
mod hom;
mod matrix;
mod smith;

pub use group::{
    cokernel, compose, direct_sum, direct_sum_all, group_from_presentation, image, is_isomorphic, kernel,
    kernel_lattice, quotient_by, solve_preimage, spans_contain, Cokernel, DirectSum, FgAbGroup, FgMorphism, GroupWith,
    Image, Subquotient,
};
pub(crate) use group::prime_factor_count;
pub use hom::{ext_group, hom_group, HomGroup};
pub use matrix::{frac, int, mod_floor, rat, Echelon, IntMatrix, RatMatrix};
pub use smith::{
    column_lattice_basis, integer_kernel, integer_solve, integer_solve_with, smith_normal_form, SmithDecomposition,
};
