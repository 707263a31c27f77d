use super::cochain::CochainComplex;
use super::map::CochainMap;
use crate::error::{Error, Result};

/// A direct system C_0 → C_1 → … of cochain complexes: a finite prefix,
/// optionally followed by one complex repeated forever under a self-map.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TowerOfComplexes {
    prefix: Vec<CochainComplex>,
    bonds: Vec<CochainMap>,
    tail: Option<(CochainComplex, CochainMap)>,
}

impl TowerOfComplexes {
    /// `bonds[k]` maps level k to level k + 1. With a tail, the last bond lands
    /// in the tail complex (or there is no prefix at all).
    pub fn new(prefix: Vec<CochainComplex>, bonds: Vec<CochainMap>, tail: Option<(CochainComplex, CochainMap)>) -> Result<Self> {
        let expected = if tail.is_some() { prefix.len() } else { prefix.len().saturating_sub(1) };
        if bonds.len() != expected {
            return Err(Error::InvalidInput(format!("expected {expected} bonding maps, got {}", bonds.len())));
        }
        if prefix.is_empty() && tail.is_none() {
            return Err(Error::InvalidInput("a system needs at least one complex".into()));
        }
        let t = TowerOfComplexes { prefix, bonds, tail };
        if let Some((c, s)) = &t.tail {
            if s.source() != c || s.target() != c {
                return Err(Error::InvalidInput("tail map must be a self-map of the tail complex".into()));
            }
        }
        for (k, b) in t.bonds.iter().enumerate() {
            if b.source() != &t.level(k) || b.target() != &t.level(k + 1) {
                return Err(Error::InvalidInput(format!("bonding map {k} does not connect levels {k} and {}", k + 1)));
            }
        }
        Ok(t)
    }

    /// A single complex repeated under its identity.
    pub fn constant(c: &CochainComplex) -> Self {
        TowerOfComplexes { prefix: vec![], bonds: vec![], tail: Some((c.clone(), CochainMap::identity(c))) }
    }

    /// A single complex repeated under a self-map.
    pub fn periodic(c: &CochainComplex, s: &CochainMap) -> Result<Self> {
        Self::new(vec![], vec![], Some((c.clone(), s.clone())))
    }

    pub fn prefix(&self) -> &[CochainComplex] {
        &self.prefix
    }

    pub fn bonds(&self) -> &[CochainMap] {
        &self.bonds
    }

    pub fn tail(&self) -> Option<&(CochainComplex, CochainMap)> {
        self.tail.as_ref()
    }

    pub fn is_finite(&self) -> bool {
        self.tail.is_none()
    }

    /// Number of levels for a finite system; `None` when infinite.
    pub fn len(&self) -> Option<usize> {
        self.is_finite().then_some(self.prefix.len())
    }

    /// Index of the first tail level (the prefix length).
    pub fn seam(&self) -> usize {
        self.prefix.len()
    }

    pub fn level(&self, k: usize) -> CochainComplex {
        if k < self.prefix.len() {
            self.prefix[k].clone()
        } else {
            match &self.tail {
                Some((c, _)) => c.clone(),
                None => panic!("level {k} past the end of a finite system"),
            }
        }
    }

    /// Bonding map from level k to level k + 1.
    pub fn bond(&self, k: usize) -> CochainMap {
        if k < self.bonds.len() {
            self.bonds[k].clone()
        } else {
            match &self.tail {
                Some((_, s)) => s.clone(),
                None => panic!("bond {k} past the end of a finite system"),
            }
        }
    }

    /// Number of levels worth looking at: all of a finite system, or the
    /// prefix plus `depth` tail levels.
    pub fn levels_to(&self, depth: usize) -> usize {
        match self.tail {
            None => self.prefix.len(),
            Some(_) => self.prefix.len() + depth,
        }
    }

    /// The first `n` levels as a finite system.
    pub fn truncate(&self, n: usize) -> Result<TowerOfComplexes> {
        if n == 0 || (self.is_finite() && n > self.prefix.len()) {
            return Err(Error::InvalidInput(format!("cannot truncate to {n} levels")));
        }
        let prefix = (0..n).map(|k| self.level(k)).collect();
        let bonds = (0..n - 1).map(|k| self.bond(k)).collect();
        TowerOfComplexes::new(prefix, bonds, None)
    }

    /// Composite bonding map from level k to level l ≥ k.
    pub fn transition(&self, k: usize, l: usize) -> CochainMap {
        let mut f = CochainMap::identity(&self.level(k));
        for m in k..l {
            f = self.bond(m).compose(&f).expect("consecutive bonds compose");
        }
        f
    }

    /// The colimit, computable when the system is finite or the tail map is
    /// an isomorphism in every degree.
    pub fn colimit(&self) -> Result<Colimit> {
        match &self.tail {
            None => Ok(Colimit { complex: self.prefix.last().expect("nonempty").clone(), tower: self.clone(), tail_inverse: None }),
            Some((c, s)) => {
                if let Some(degree) = s.non_iso_degree() {
                    return Err(Error::NotFinitelyGeneratedColimit { degree });
                }
                let inv = s.inverse().expect("isomorphism in every degree");
                Ok(Colimit { complex: c.clone(), tower: self.clone(), tail_inverse: Some(inv) })
            }
        }
    }
}

/// A computed colimit with its canonical maps from every level.
#[derive(Clone, Debug)]
pub struct Colimit {
    pub complex: CochainComplex,
    tower: TowerOfComplexes,
    tail_inverse: Option<CochainMap>,
}

impl Colimit {
    /// The canonical map i_k: C_k → colim.
    pub fn inclusion(&self, k: usize) -> CochainMap {
        match &self.tail_inverse {
            None => {
                let last = self.tower.prefix.len() - 1;
                self.tower.transition(k, last)
            }
            Some(inv) => {
                let seam = self.tower.seam();
                if k <= seam {
                    self.tower.transition(k, seam)
                } else {
                    let mut f = CochainMap::identity(&self.complex);
                    for _ in seam..k {
                        f = inv.compose(&f).expect("self-map");
                    }
                    f
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{FgAbGroup, FgMorphism, IntMatrix};

    fn z_complex() -> CochainComplex {
        CochainComplex::concentrated(1, FgAbGroup::free(1))
    }

    fn scalar_map(c: &CochainComplex, k: i64) -> CochainMap {
        CochainMap::new(c.clone(), c.clone(), 1, vec![FgMorphism::scalar(&FgAbGroup::free(1), k)]).unwrap()
    }

    #[test]
    fn constant_colimit_is_the_complex() {
        let c = z_complex();
        let col = TowerOfComplexes::constant(&c).colimit().unwrap();
        assert_eq!(col.complex, c);
        assert_eq!(col.inclusion(3), CochainMap::identity(&c));
    }

    #[test]
    fn prefix_only_colimit_is_last() {
        let a = CochainComplex::zero();
        let c = z_complex();
        let t = TowerOfComplexes::new(vec![a.clone(), c.clone()], vec![CochainMap::zero(&a, &c)], None).unwrap();
        assert_eq!(t.colimit().unwrap().complex, c);
    }

    #[test]
    fn non_iso_tail_has_no_finite_colimit() {
        let c = z_complex();
        let t = TowerOfComplexes::periodic(&c, &scalar_map(&c, 2)).unwrap();
        assert_eq!(t.colimit().unwrap_err(), Error::NotFinitelyGeneratedColimit { degree: 1 });
    }

    #[test]
    fn iso_tail_inclusions_are_compatible() {
        let c = z_complex();
        let t = TowerOfComplexes::periodic(&c, &scalar_map(&c, -1)).unwrap();
        let col = t.colimit().unwrap();
        for k in 0..4 {
            assert_eq!(col.inclusion(k + 1).compose(&t.bond(k)).unwrap(), col.inclusion(k));
        }
        assert_eq!(col.inclusion(1).component(1).matrix(), &IntMatrix::from_rows(&[vec![-1]]));
    }
}
