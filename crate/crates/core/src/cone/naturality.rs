use super::complex::ConeComplex;
use super::kerxi::{omega, sigma};
use crate::complex::CochainMap;
use crate::error::Result;
use crate::lattice::{FgMorphism, IntMatrix};
use crate::qz::{block_morphism, induced};

/// Which squares commute for a cochain map f: C → C′ in degree n.
#[derive(Clone, Debug)]
pub struct NaturalityReport {
    pub degree: i32,
    pub cone_map_commutes: bool,
    /// σ ∘ f̃^# = (f^#, f̃^#) ∘ σ′
    pub sigma_square: bool,
    /// ω ∘ (f^#, f̃^#) = f̄ ∘ ω′
    pub omega_square: bool,
    /// ξ̄ ∘ f̄_* = Hom(f^*, G) ∘ ξ̄′
    pub xi_square: bool,
    /// χ ∘ Hom(f^*, G″) = f̄_* ∘ χ′
    pub chi_square: bool,
    /// χ̄ ∘ Ext(f^*) = f̄_* ∘ χ̄′
    pub chi_bar_square: bool,
}

impl NaturalityReport {
    pub fn all_pass(&self) -> bool {
        self.cone_map_commutes && self.sigma_square && self.omega_square && self.xi_square && self.chi_square && self.chi_bar_square
    }
}

/// The map C^{n+1}/B^{n+1} → C′^{n+1}/B′^{n+1} induced by f.
pub fn induced_on_quotient(f: &CochainMap, n: i32) -> Result<FgMorphism> {
    let q = f.source().cohomology(n).q;
    let q2 = f.target().cohomology(n).q;
    let section = crate::lattice::cokernel(&f.source().differential(n)).section;
    let fm = f.component(n + 1);
    let cols: Vec<_> = (0..q.codomain().num_gens()).map(|k| q2.apply(&fm.apply(&section.col(k)))).collect();
    FgMorphism::new(q.codomain().clone(), q2.codomain().clone(), IntMatrix::from_cols(q2.codomain().num_gens(), &cols))
}

/// `cone` is the cone of C and `cone2` the cone of C′ (same resolution).
pub fn naturality_check(f: &CochainMap, cone: &ConeComplex, cone2: &ConeComplex, n: i32) -> Result<NaturalityReport> {
    let res = cone.resolution();
    let fbar = ConeComplex::induced_map(f, cone2, cone)?;
    let cone_map_commutes = fbar.commutes();

    let ft = induced_on_quotient(f, n)?;
    let ft_first = induced(&ft, res.first())?;
    let ft_second = induced(&ft, res.second())?;
    let f_first = induced(&f.component(n + 1), res.first())?;
    let pair = block_morphism(
        &[f_first.domain().clone(), ft_second.domain().clone()],
        &[f_first.codomain().clone(), ft_second.codomain().clone()],
        &[vec![Some(&f_first), None], vec![None, Some(&ft_second)]],
    )?;
    let (s, s2) = (sigma(cone, n)?, sigma(cone2, n)?);
    let sigma_square = s.compose(&ft_first)? == pair.compose(&s2)?;
    let (w, w2) = (omega(cone, n)?, omega(cone2, n)?);
    let omega_square = w.compose(&pair)? == fbar.component(n).compose(&w2)?;

    let maps = cone.ucf_maps(n)?;
    let maps2 = cone2.ucf_maps(n)?;
    let on_h = fbar.on_homology(n)?;
    let hom_f = induced(&f.induced_on_cohomology(n), res.coefficients())?;
    let xi_square = maps.xi_bar.compose(&on_h)? == hom_f.compose(&maps2.xi_bar)?;
    let hom2_f = induced(&f.induced_on_cohomology(n + 1), res.second())?;
    let chi_square = maps.chi.compose(&hom2_f)? == on_h.compose(&maps2.chi)?;
    let ext_f = maps.ext.presentation.morphism_from(maps2.ext.group(), &hom2_f.matrix().mul(maps2.ext.presentation.lift_matrix()))?;
    let chi_bar_square = maps.chi_bar.compose(&ext_f)? == on_h.compose(&maps2.chi_bar)?;

    Ok(NaturalityReport { degree: n, cone_map_commutes, sigma_square, omega_square, xi_square, chi_square, chi_bar_square })
}

/// f̄ for a composite agrees with the composite of the f̄'s, on H̄_n.
pub fn functoriality_check(f: &CochainMap, g: &CochainMap, cones: [&ConeComplex; 3], n: i32) -> Result<bool> {
    // f: C0 → C1, g: C1 → C2; cones[k] is the cone of C_k
    let gf = g.compose(f)?;
    let a = ConeComplex::induced_map(&gf, cones[2], cones[0])?.on_homology(n)?;
    let fb = ConeComplex::induced_map(f, cones[1], cones[0])?.on_homology(n)?;
    let gb = ConeComplex::induced_map(g, cones[2], cones[1])?.on_homology(n)?;
    Ok(a == fb.compose(&gb)?)
}

