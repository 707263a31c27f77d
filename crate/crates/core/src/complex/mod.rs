//! Bounded cochain complexes, their cohomology, cochain maps and direct systems.

mod cochain;
mod map;
mod tower;

pub use cochain::{CochainComplex, CohomologyData, ValidationReport};
pub use map::CochainMap;
pub use tower::{Colimit, TowerOfComplexes};
