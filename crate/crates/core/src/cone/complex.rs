use num_rational::BigRational;

use super::resolution::InjectiveResolution;
use crate::complex::{CochainComplex, CochainMap};
use crate::error::{Error, Result};
use crate::lattice::{FgAbGroup, RatMatrix};
use crate::qz::{block_morphism, homology_qz, induced, postcompose, HomSpace, QZElement, QZGroup, QZMorphism, QZPresentation};

/// One group of the cone: Hom(C^n, G′) ⊕ Hom(C^{n+1}, G″).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeGroup {
    degree: i32,
    first: HomSpace,
    second: HomSpace,
    group: QZGroup,
}

impl ConeGroup {
    fn new(c: &CochainComplex, res: &InjectiveResolution, n: i32) -> Self {
        let first = HomSpace::new(&c.group(n), res.first());
        let second = HomSpace::new(&c.group(n + 1), res.second());
        let group = first.group().direct_sum(second.group());
        ConeGroup { degree: n, first, second, group }
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn group(&self) -> &QZGroup {
        &self.group
    }

    /// Hom(C^n, G′)
    pub fn first(&self) -> &HomSpace {
        &self.first
    }

    /// Hom(C^{n+1}, G″)
    pub fn second(&self) -> &HomSpace {
        &self.second
    }

    pub fn split(&self, x: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let k = self.first.group().dim();
        (x[..k].to_vec(), x[k..].to_vec())
    }

    pub fn join(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        a.iter().chain(b).cloned().collect()
    }

    /// The pair (φ′, φ″) of matrices for an element.
    pub fn matrices(&self, x: &[BigRational]) -> (RatMatrix, RatMatrix) {
        let (a, b) = self.split(x);
        (self.first.to_matrix(&a), self.second.to_matrix(&b))
    }

    /// Unreduced coordinates of the element (φ′, φ″).
    pub fn from_matrices(&self, phi1: &RatMatrix, phi2: &RatMatrix) -> Result<Vec<BigRational>> {
        Ok(self.join(&self.first.coords_raw(phi1)?, &self.second.coords_raw(phi2)?))
    }
}

/// The cone of the cochain map Hom(C*, G′) → Hom(C*, G″) induced by β, as a
/// chain complex of [`QZGroup`]s with ∂(φ′, φ″) = (φ′δ, βφ′ − φ″δ).
#[derive(Clone, Debug)]
pub struct ConeComplex {
    complex: CochainComplex,
    resolution: InjectiveResolution,
    /// groups for degrees lo − 1 ..= hi
    groups: Vec<ConeGroup>,
    /// ∂_n for degrees lo − 1 ..= hi + 1
    boundaries: Vec<QZMorphism>,
}

impl ConeComplex {
    pub fn new(complex: &CochainComplex, resolution: &InjectiveResolution) -> Result<Self> {
        let report = complex.validate();
        if !report.valid {
            return Err(Error::InvalidInput(format!(
                "δ ∘ δ ≠ 0 in degree {}",
                report.offending_degree.expect("invalid complex has a degree")
            )));
        }
        let mut cone = ConeComplex { complex: complex.clone(), resolution: resolution.clone(), groups: vec![], boundaries: vec![] };
        cone.groups = cone.span().map(|n| ConeGroup::new(complex, resolution, n)).collect();
        cone.boundaries = (cone.lo()..=cone.hi() + 1).map(|n| cone.compute_boundary(n)).collect::<Result<_>>()?;
        Ok(cone)
    }

    pub fn from_fg(complex: &CochainComplex, g: &FgAbGroup) -> Result<Self> {
        Self::new(complex, &InjectiveResolution::from_fg(g))
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn resolution(&self) -> &InjectiveResolution {
        &self.resolution
    }

    /// Lowest degree with a possibly nonzero group.
    pub fn lo(&self) -> i32 {
        self.complex.lo() - 1
    }

    pub fn hi(&self) -> i32 {
        self.complex.hi()
    }

    fn span(&self) -> std::ops::RangeInclusive<i32> {
        self.lo()..=self.hi()
    }

    pub fn group(&self, n: i32) -> ConeGroup {
        if self.span().contains(&n) {
            self.groups[(n - self.lo()) as usize].clone()
        } else {
            ConeGroup::new(&self.complex, &self.resolution, n)
        }
    }

    /// ∂_n: Cone_n → Cone_{n−1}.
    pub fn boundary(&self, n: i32) -> QZMorphism {
        let k = n - self.lo();
        if k >= 0 && (k as usize) < self.boundaries.len() {
            self.boundaries[k as usize].clone()
        } else {
            QZMorphism::zero(self.group(n).group(), self.group(n - 1).group())
        }
    }

    fn compute_boundary(&self, n: i32) -> Result<QZMorphism> {
        let (src, dst) = (self.group(n), self.group(n - 1));
        let c = &self.complex;
        let pre1 = induced(&c.differential(n - 1), self.resolution.first())?;
        let beta = postcompose(self.resolution.beta(), &c.group(n))?;
        let pre2 = induced(&c.differential(n), self.resolution.second())?.neg();
        block_morphism(
            &[src.first.group().clone(), src.second.group().clone()],
            &[dst.first.group().clone(), dst.second.group().clone()],
            &[vec![Some(&pre1), None], vec![Some(&beta), Some(&pre2)]],
        )
    }

    /// H̄_n = ker ∂_n / im ∂_{n+1}.
    pub fn homology(&self, n: i32) -> Result<ConeHomology> {
        let presentation = homology_qz(&self.boundary(n + 1), &self.boundary(n))?;
        Ok(ConeHomology { degree: n, presentation })
    }

    /// Whether x ∈ Cone_n is a cycle; `exact` asks for ∂x = 0 on the nose,
    /// as needed for a whole rational line of cycles.
    pub fn is_cycle(&self, n: i32, x: &[BigRational], exact: bool) -> bool {
        let d = self.boundary(n);
        let y = d.matrix().mul_vec(x);
        if exact {
            y.iter().all(num_traits::Zero::is_zero)
        } else {
            d.codomain().is_zero_element(&y)
        }
    }

    /// The chain map Cone(C′) → Cone(C) induced by a cochain map f: C → C′,
    /// (φ′, φ″) ↦ (φ′ ∘ f, φ″ ∘ f); `source` is the cone of C′.
    pub fn induced_map(f: &CochainMap, source: &ConeComplex, target: &ConeComplex) -> Result<ConeMap> {
        if f.target() != &source.complex || f.source() != &target.complex || source.resolution != target.resolution {
            return Err(Error::InvalidInput("cochain map does not match the cones".into()));
        }
        let lo = source.lo().min(target.lo());
        let hi = source.hi().max(target.hi());
        let res = &target.resolution;
        let components = (lo..=hi)
            .map(|n| {
                let a = induced(&f.component(n), res.first())?;
                let b = induced(&f.component(n + 1), res.second())?;
                let (s, t) = (source.group(n), target.group(n));
                block_morphism(
                    &[s.first.group().clone(), s.second.group().clone()],
                    &[t.first.group().clone(), t.second.group().clone()],
                    &[vec![Some(&a), None], vec![None, Some(&b)]],
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ConeMap { source: source.clone(), target: target.clone(), lo, components })
    }
}

/// H̄_n of a cone, presented inside Cone_n.
#[derive(Clone, Debug)]
pub struct ConeHomology {
    pub degree: i32,
    pub presentation: QZPresentation,
}

impl ConeHomology {
    pub fn group(&self) -> &QZGroup {
        self.presentation.group()
    }

    /// The group as a finitely generated abelian group, when it is one.
    pub fn fg(&self) -> Result<FgAbGroup> {
        self.group()
            .to_fg()
            .ok_or_else(|| Error::NotFinitelyGenerated(format!("H̄_{} = {} has divisible summands", self.degree, self.group())))
    }

    /// A cycle of Cone_n representing the k-th standard generator.
    pub fn representative(&self, k: usize) -> Vec<BigRational> {
        self.presentation.lift_matrix().col(k)
    }

    /// Standard coordinates of the class of a cycle; `exact` keeps them
    /// unreduced and linear (for cycles whose rational multiples are cycles).
    pub fn class_of(&self, x: &[BigRational], exact: bool) -> Result<QZElement> {
        if exact {
            self.presentation.coords_exact(x)
        } else {
            self.presentation.coords(x).map_err(|_| Error::NotACycle)
        }
    }
}

/// A chain map between cones, induced by a cochain map.
#[derive(Clone, Debug)]
pub struct ConeMap {
    source: ConeComplex,
    target: ConeComplex,
    lo: i32,
    components: Vec<QZMorphism>,
}

impl ConeMap {
    pub fn component(&self, n: i32) -> QZMorphism {
        let k = n - self.lo;
        if k >= 0 && (k as usize) < self.components.len() {
            self.components[k as usize].clone()
        } else {
            QZMorphism::zero(self.source.group(n).group(), self.target.group(n).group())
        }
    }

    /// Whether ∂ ∘ f̄_n = f̄_{n−1} ∘ ∂′ in every degree.
    pub fn commutes(&self) -> bool {
        let lo = self.lo.min(self.source.lo()).min(self.target.lo());
        let hi = self.source.hi().max(self.target.hi()) + 1;
        (lo..=hi).all(|n| {
            let a = self.target.boundary(n).compose(&self.component(n));
            let b = self.component(n - 1).compose(&self.source.boundary(n));
            matches!((a, b), (Ok(a), Ok(b)) if a == b)
        })
    }

    /// The induced map H̄_n(source) → H̄_n(target).
    pub fn on_homology(&self, n: i32) -> Result<QZMorphism> {
        let hs = self.source.homology(n)?;
        let ht = self.target.homology(n)?;
        let f = self.component(n).matrix().mul(hs.presentation.lift_matrix());
        ht.presentation.morphism_from(hs.group(), &f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{int, FgMorphism};
    use crate::qz::Summand;

    fn doubling() -> CochainComplex {
        let z = FgAbGroup::free(1);
        CochainComplex::new(0, vec![z.clone(), z.clone()], vec![FgMorphism::scalar(&z, 2)]).unwrap()
    }

    #[test]
    fn boundary_squares_to_zero() {
        let cone = ConeComplex::from_fg(&doubling(), &FgAbGroup::new(1, vec![int(6)]).unwrap()).unwrap();
        for n in cone.lo() - 1..=cone.hi() + 2 {
            assert!(cone.boundary(n - 1).compose(&cone.boundary(n)).unwrap().is_zero(), "degree {n}");
        }
    }

    #[test]
    fn doubling_with_integer_coefficients() {
        let cone = ConeComplex::from_fg(&doubling(), &FgAbGroup::free(1)).unwrap();
        assert_eq!(cone.homology(0).unwrap().fg().unwrap(), FgAbGroup::cyclic(2));
        assert!(cone.homology(1).unwrap().group().is_zero());
        assert!(cone.homology(-1).unwrap().group().is_zero());
    }

    #[test]
    fn cyclic_cochains_shift_down() {
        let c = CochainComplex::concentrated(2, FgAbGroup::cyclic(4));
        let cone = ConeComplex::from_fg(&c, &FgAbGroup::free(1)).unwrap();
        assert_eq!(cone.homology(1).unwrap().fg().unwrap(), FgAbGroup::cyclic(4));
        assert!(cone.homology(2).unwrap().group().is_zero());
    }

    #[test]
    fn rational_coefficients_stay_divisible() {
        let c = CochainComplex::concentrated(0, FgAbGroup::free(2));
        let g = QZGroup::rationals(1);
        let cone = ConeComplex::new(&c, &InjectiveResolution::standard(&g)).unwrap();
        let h = cone.homology(0).unwrap();
        assert_eq!(h.group(), &QZGroup::rationals(2));
        assert!(h.fg().is_err());
        let circle = QZGroup::new(vec![Summand::QZ]).unwrap();
        let cone = ConeComplex::new(&c, &InjectiveResolution::standard(&circle)).unwrap();
        assert!(matches!(cone.homology(0).unwrap().fg(), Err(Error::NotFinitelyGenerated(_))));
    }

    #[test]
    fn invalid_complex_rejected() {
        let z = FgAbGroup::free(1);
        let c = CochainComplex::new(0, vec![z.clone(), z.clone(), z.clone()], vec![FgMorphism::identity(&z), FgMorphism::identity(&z)])
            .unwrap();
        assert!(ConeComplex::from_fg(&c, &z).is_err());
    }

    #[test]
    fn identity_induces_identity_on_cone_homology() {
        let c = doubling();
        let cone = ConeComplex::from_fg(&c, &FgAbGroup::free(1)).unwrap();
        let f = ConeComplex::induced_map(&CochainMap::identity(&c), &cone, &cone).unwrap();
        assert!(f.commutes());
        let h = f.on_homology(0).unwrap();
        assert_eq!(h, QZMorphism::identity(h.domain()));
    }
}
