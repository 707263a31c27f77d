use num_bigint::BigInt;
use num_traits::One;

use super::cochain::CochainComplex;
use crate::error::{Error, Result};
use crate::lattice::{solve_preimage, FgMorphism, IntMatrix};

/// A cochain map f: C → C′, one component per degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CochainMap {
    source: CochainComplex,
    target: CochainComplex,
    lo: i32,
    components: Vec<FgMorphism>,
}

impl CochainMap {
    /// Components f_lo, f_{lo+1}, …; degrees not listed are zero maps.
    ///
    /// Checks shapes and that δ′ ∘ f_n = f_{n+1} ∘ δ in every degree.
    pub fn new(source: CochainComplex, target: CochainComplex, lo: i32, components: Vec<FgMorphism>) -> Result<Self> {
        for (k, f) in components.iter().enumerate() {
            let n = lo + k as i32;
            if f.domain() != &source.group(n) || f.codomain() != &target.group(n) {
                return Err(Error::InvalidInput(format!("component in degree {n} has the wrong shape")));
            }
        }
        let map = CochainMap { source, target, lo, components };
        if let Some(n) = map.non_commuting_degree() {
            return Err(Error::InvalidInput(format!("map does not commute with the differentials in degree {n}")));
        }
        Ok(map)
    }

    pub fn from_matrices(source: CochainComplex, target: CochainComplex, lo: i32, matrices: Vec<IntMatrix>) -> Result<Self> {
        let comps = matrices
            .into_iter()
            .enumerate()
            .map(|(k, m)| {
                let n = lo + k as i32;
                FgMorphism::new(source.group(n), target.group(n), m)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, lo, comps)
    }

    pub fn identity(c: &CochainComplex) -> Self {
        let comps = c.degrees().map(|n| FgMorphism::identity(&c.group(n))).collect();
        CochainMap { source: c.clone(), target: c.clone(), lo: c.lo(), components: comps }
    }

    pub fn zero(source: &CochainComplex, target: &CochainComplex) -> Self {
        CochainMap { source: source.clone(), target: target.clone(), lo: 0, components: vec![] }
    }

    pub fn source(&self) -> &CochainComplex {
        &self.source
    }

    pub fn target(&self) -> &CochainComplex {
        &self.target
    }

    pub fn component(&self, n: i32) -> FgMorphism {
        let k = n - self.lo;
        if k >= 0 && (k as usize) < self.components.len() {
            self.components[k as usize].clone()
        } else {
            FgMorphism::zero(&self.source.group(n), &self.target.group(n))
        }
    }

    /// Degrees where either complex is nonzero.
    pub fn support(&self) -> std::ops::RangeInclusive<i32> {
        let lo = self.source.lo().min(self.target.lo());
        let hi = self.source.hi().max(self.target.hi());
        lo..=hi
    }

    fn non_commuting_degree(&self) -> Option<i32> {
        let r = self.support();
        (r.start() - 1..=*r.end()).find(|&n| {
            let a = self.target.differential(n).compose(&self.component(n)).expect("shapes");
            let b = self.component(n + 1).compose(&self.source.differential(n)).expect("shapes");
            a != b
        })
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &CochainMap) -> Result<CochainMap> {
        if g.target != self.source {
            return Err(Error::InvalidInput("cochain maps do not compose".into()));
        }
        let r = g.support();
        let lo = *r.start().min(self.support().start());
        let hi = *r.end().max(self.support().end());
        let comps = (lo..=hi).map(|n| self.component(n).compose(&g.component(n))).collect::<Result<Vec<_>>>()?;
        Ok(CochainMap { source: g.source.clone(), target: self.target.clone(), lo, components: comps })
    }

    /// Component inverse when every component is an isomorphism.
    pub fn inverse(&self) -> Option<CochainMap> {
        let r = self.support();
        let mut comps = Vec::new();
        for n in r.clone() {
            let f = self.component(n);
            if !f.is_isomorphism() {
                return None;
            }
            let cols: Vec<Vec<BigInt>> = (0..f.codomain().num_gens())
                .map(|k| {
                    let mut e = f.codomain().zero_element();
                    e[k] = BigInt::one();
                    solve_preimage(&f, &e).expect("surjective")
                })
                .collect();
            comps.push(FgMorphism::new(
                f.codomain().clone(),
                f.domain().clone(),
                IntMatrix::from_cols(f.domain().num_gens(), &cols),
            )
            .expect("inverse of an isomorphism"));
        }
        Some(CochainMap { source: self.target.clone(), target: self.source.clone(), lo: *r.start(), components: comps })
    }

    /// The first degree where the component is not an isomorphism.
    pub fn non_iso_degree(&self) -> Option<i32> {
        self.support().find(|&n| !self.component(n).is_isomorphism())
    }

    /// The induced map H^n(source) → H^n(target).
    pub fn induced_on_cohomology(&self, n: i32) -> FgMorphism {
        let src = self.source.cohomology(n);
        let tgt = self.target.cohomology(n);
        let f = self.component(n);
        let cocycles = src.cocycles();
        let cols: Vec<Vec<BigInt>> = (0..src.h.num_gens())
            .map(|k| {
                let image = f.apply(&cocycles.col(k));
                let z = solve_preimage(&tgt.j, &image).expect("cocycles map to cocycles");
                tgt.p.apply(&z)
            })
            .collect();
        FgMorphism::new(src.h.clone(), tgt.h.clone(), IntMatrix::from_cols(tgt.h.num_gens(), &cols))
            .expect("induced map on cohomology")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::FgAbGroup;

    fn circle() -> CochainComplex {
        // triangle: vertices 0,1,2; edges 01, 02, 12
        let d0 = IntMatrix::from_rows(&[vec![-1, 1, 0], vec![-1, 0, 1], vec![0, -1, 1]]);
        CochainComplex::from_matrices(0, vec![FgAbGroup::free(3), FgAbGroup::free(3)], vec![d0]).unwrap()
    }

    #[test]
    fn identity_induces_identity() {
        let c = circle();
        let id = CochainMap::identity(&c);
        for n in 0..=1 {
            let h = id.induced_on_cohomology(n);
            assert_eq!(h, FgMorphism::identity(h.domain()));
        }
    }

    #[test]
    fn null_homotopic_map_is_zero_on_cohomology() {
        // f = δ s + s δ with s: C^1 → C^0 arbitrary
        let c = circle();
        let s = IntMatrix::from_rows(&[vec![1, 0, 2], vec![0, -1, 1], vec![3, 0, 0]]);
        let d = c.differential(0).matrix().clone();
        let f0 = s.mul(&d);
        let f1 = d.mul(&s);
        let f = CochainMap::from_matrices(c.clone(), c.clone(), 0, vec![f0, f1]).unwrap();
        assert!(f.induced_on_cohomology(0).is_zero());
        assert!(f.induced_on_cohomology(1).is_zero());
    }

    #[test]
    fn non_chain_map_rejected() {
        let c = circle();
        let f1 = IntMatrix::identity(3).scale(&BigInt::from(2));
        assert!(CochainMap::from_matrices(c.clone(), c, 0, vec![IntMatrix::identity(3), f1]).is_err());
    }
}
