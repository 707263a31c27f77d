//! Inverse limits and lim¹ of towers, and checks of their interaction with the cone.

mod lim;
mod systems;
mod tower;

pub use lim::{lim1_qz, lim1_tower, lim_qz, lim_tower, stabilization_bound, FgLim, Lim, Lim1Certificate, Lim1Evidence, Lim1Verdict};
pub use tower::{QZTower, TowerOfGroups};
pub use systems::{
    combine, cone_homology_tower, degree_p_circle_system, hom_tower, triangle_circle, verify_cor2, verify_cor3, verify_cor5,
    verify_lemma2, verify_lemma4, verify_main_sequence, verify_theorem3, Cor2Report, Cor3Report, Cor5Report, Lemma2Report,
    Lemma4Report, MilnorReport, SystemMode, Theorem3Report,
};
