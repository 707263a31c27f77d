//! Finite simplicial complexes and their cochain complexes.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::complex::{CochainComplex, CochainMap};
use crate::error::{Error, Result};
use crate::lattice::{FgAbGroup, IntMatrix};

/// A simplicial complex given by its facets. Faces are generated.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialComplex {
    vertices: usize,
    facets: Vec<Vec<usize>>,
    simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Facets are sorted and deduplicated; a facet contained in another is
    /// kept, since faces are closed under subsets anyway.
    pub fn new(vertices: usize, facets: Vec<Vec<usize>>) -> Result<Self> {
        let mut clean: Vec<Vec<usize>> = Vec::with_capacity(facets.len());
        for f in facets {
            let mut s = f.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != f.len() {
                return Err(Error::InvalidInput(format!("facet {f:?} repeats a vertex")));
            }
            if s.is_empty() {
                return Err(Error::InvalidInput("empty facet".into()));
            }
            if let Some(v) = s.iter().find(|&&v| v >= vertices) {
                return Err(Error::InvalidInput(format!("vertex {v} out of range (vertex count {vertices})")));
            }
            if clean.contains(&s) {
                return Err(Error::InvalidInput(format!("facet {s:?} listed twice")));
            }
            clean.push(s);
        }
        let simplices = generate(&clean);
        Ok(SimplicialComplex { vertices, facets: clean, simplices })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// -1 for the empty complex.
    pub fn dimension(&self) -> i32 {
        self.simplices.len() as i32 - 1
    }

    /// The n-simplices as sorted vertex tuples, in lexicographic order.
    pub fn simplices(&self, n: usize) -> &[Vec<usize>] {
        self.simplices.get(n).map_or(&[], |v| v.as_slice())
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        !s.is_empty() && self.simplices(s.len() - 1).binary_search(&s.to_vec()).is_ok()
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..self.simplices.len()).map(|n| if n % 2 == 0 { 1 } else { -1 } * self.simplices[n].len() as i64).sum()
    }

    /// The boundary of the standard 2-simplex.
    pub fn triangle_circle() -> Self {
        Self::new(3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).expect("triangle")
    }

    /// The n-gon as a circle.
    pub fn cycle(n: usize) -> Self {
        Self::new(n, (0..n).map(|i| vec![i, (i + 1) % n]).collect()).expect("cycle")
    }

    /// The six-vertex projective plane.
    pub fn projective_plane() -> Self {
        let facets = [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 1, 5], [1, 2, 4], [2, 3, 5], [1, 3, 4], [2, 4, 5], [1, 3, 5]];
        Self::new(6, facets.iter().map(|f| f.to_vec()).collect()).expect("projective plane")
    }

    fn index(&self, n: usize) -> BTreeMap<&[usize], usize> {
        self.simplices(n).iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect()
    }
}

/// The on-disk form of a [`SimplicialComplex`].
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialComplexDoc {
    pub vertices: usize,
    pub facets: Vec<Vec<usize>>,
}

impl From<&SimplicialComplex> for SimplicialComplexDoc {
    fn from(k: &SimplicialComplex) -> Self {
        SimplicialComplexDoc { vertices: k.vertices, facets: k.facets.clone() }
    }
}

impl TryFrom<SimplicialComplexDoc> for SimplicialComplex {
    type Error = Error;

    fn try_from(d: SimplicialComplexDoc) -> Result<Self> {
        SimplicialComplex::new(d.vertices, d.facets)
    }
}

fn generate(facets: &[Vec<usize>]) -> Vec<Vec<Vec<usize>>> {
    let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
    for f in facets {
        for mask in 1u64..(1u64 << f.len()) {
            let s: Vec<usize> = f.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
            let n = s.len() - 1;
            if by_dim.len() <= n {
                by_dim.resize(n + 1, BTreeSet::new());
            }
            by_dim[n].insert(s);
        }
    }
    by_dim.into_iter().map(|s| s.into_iter().collect()).collect()
}

/// δ^n on the simplices of `k` passing `keep`: (δφ)(τ) = Σ (−1)^i φ(τ without vertex i).
fn coboundary(k: &SimplicialComplex, n: usize, keep: &dyn Fn(&[usize]) -> bool) -> IntMatrix {
    let cols: Vec<Vec<usize>> = k.simplices(n).iter().filter(|s| keep(s)).cloned().collect();
    let rows: Vec<Vec<usize>> = k.simplices(n + 1).iter().filter(|s| keep(s)).cloned().collect();
    let col_index: BTreeMap<&[usize], usize> = cols.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let mut m = IntMatrix::zeros(rows.len(), cols.len());
    for (r, t) in rows.iter().enumerate() {
        for i in 0..t.len() {
            let mut face = t.clone();
            face.remove(i);
            if let Some(&c) = col_index.get(face.as_slice()) {
                m[(r, c)] = if i % 2 == 0 { 1.into() } else { (-1).into() };
            }
        }
    }
    m
}

fn cochains(k: &SimplicialComplex, keep: &dyn Fn(&[usize]) -> bool) -> CochainComplex {
    let top = k.dimension();
    if top < 0 {
        return CochainComplex::zero();
    }
    let groups: Vec<FgAbGroup> =
        (0..=top as usize).map(|n| FgAbGroup::free(k.simplices(n).iter().filter(|s| keep(s)).count())).collect();
    let diffs: Vec<IntMatrix> = (0..top as usize).map(|n| coboundary(k, n, keep)).collect();
    let c = CochainComplex::from_matrices(0, groups, diffs).expect("incidence matrices have matching shapes");
    debug_assert!(c.validate().valid);
    c
}

/// Cⁿ free on the n-simplices in lexicographic order, δ the signed incidence matrix.
pub fn cochain_of(k: &SimplicialComplex) -> CochainComplex {
    cochains(k, &|_| true)
}

/// Relative cochains: those vanishing on the subcomplex `l`.
pub fn cochain_of_pair(k: &SimplicialComplex, l: &SimplicialComplex) -> Result<CochainComplex> {
    if l.vertex_count() > k.vertex_count() {
        return Err(Error::InvalidSubcomplex(format!("{} vertices in a complex with {}", l.vertex_count(), k.vertex_count())));
    }
    if let Some(f) = l.facets().iter().find(|f| !k.contains(f)) {
        return Err(Error::InvalidSubcomplex(format!("{f:?} is not a simplex of the ambient complex")));
    }
    Ok(cochains(k, &|s| !l.contains(s)))
}

/// A vertex map sending every simplex onto a simplex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    vertex_map: Vec<usize>,
}

impl SimplicialMap {
    pub fn new(source: SimplicialComplex, target: SimplicialComplex, vertex_map: Vec<usize>) -> Result<Self> {
        if vertex_map.len() != source.vertex_count() {
            return Err(Error::NotSimplicial(format!("{} vertex images for {} vertices", vertex_map.len(), source.vertex_count())));
        }
        if let Some(v) = vertex_map.iter().find(|&&v| v >= target.vertex_count()) {
            return Err(Error::NotSimplicial(format!("vertex {v} out of range")));
        }
        for f in source.facets() {
            let mut img: Vec<usize> = f.iter().map(|&v| vertex_map[v]).collect();
            img.sort_unstable();
            img.dedup();
            if !target.contains(&img) {
                return Err(Error::NotSimplicial(format!("{f:?} maps to {img:?}, which is not a simplex")));
            }
        }
        Ok(SimplicialMap { source, target, vertex_map })
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &SimplicialMap) -> Result<SimplicialMap> {
        if g.target != self.source {
            return Err(Error::InvalidInput("simplicial maps do not compose".into()));
        }
        let vm = g.vertex_map.iter().map(|&v| self.vertex_map[v]).collect();
        SimplicialMap::new(g.source.clone(), self.target.clone(), vm)
    }
}

/// The pullback f^#: C*(target) → C*(source). A simplex whose image is
/// degenerate goes to zero; otherwise the sign is that of the sorting permutation.
pub fn cochain_map_of(f: &SimplicialMap) -> CochainMap {
    let (src, tgt) = (cochain_of(&f.source), cochain_of(&f.target));
    let top = f.source.dimension().max(-1);
    let mut comps = Vec::new();
    for n in 0..=top {
        let n = n as usize;
        let index = f.target.index(n);
        let rows = f.source.simplices(n);
        let mut m = IntMatrix::zeros(rows.len(), f.target.simplices(n).len());
        for (r, s) in rows.iter().enumerate() {
            let img: Vec<usize> = s.iter().map(|&v| f.vertex_map[v]).collect();
            if let Some((sorted, sign)) = sort_with_sign(&img) {
                if let Some(&c) = index.get(sorted.as_slice()) {
                    m[(r, c)] = sign.into();
                }
            }
        }
        comps.push(m);
    }
    CochainMap::from_matrices(tgt, src, 0, comps).expect("simplicial maps induce cochain maps")
}

fn sort_with_sign(v: &[usize]) -> Option<(Vec<usize>, i64)> {
    let inversions = (0..v.len()).flat_map(|i| (i + 1..v.len()).map(move |j| (i, j))).filter(|&(i, j)| v[i] > v[j]).count();
    let mut s = v.to_vec();
    s.sort_unstable();
    if s.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((s, if inversions % 2 == 0 { 1 } else { -1 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::int;

    #[test]
    fn point() {
        let c = cochain_of(&SimplicialComplex::new(1, vec![vec![0]]).unwrap());
        assert_eq!(c.cohomology(0).h, FgAbGroup::free(1));
    }

    #[test]
    fn circle_cohomology() {
        let c = cochain_of(&SimplicialComplex::triangle_circle());
        assert_eq!(c.cohomology(0).h, FgAbGroup::free(1));
        assert_eq!(c.cohomology(1).h, FgAbGroup::free(1));
        assert_eq!(c.differential(0).matrix(), &IntMatrix::from_rows(&[vec![-1, 1, 0], vec![-1, 0, 1], vec![0, -1, 1]]));
    }

    #[test]
    fn projective_plane_cohomology() {
        let k = SimplicialComplex::projective_plane();
        assert_eq!((k.simplices(0).len(), k.simplices(1).len(), k.simplices(2).len()), (6, 15, 10));
        let c = cochain_of(&k);
        assert!(c.validate().valid);
        assert_eq!(c.cohomology(0).h, FgAbGroup::free(1));
        assert!(c.cohomology(1).h.is_zero());
        assert_eq!(c.cohomology(2).h, FgAbGroup::cyclic(2));
        assert_eq!(c.euler_characteristic(), k.euler_characteristic());
    }

    #[test]
    fn pair_of_disk_and_boundary() {
        let disk = SimplicialComplex::new(3, vec![vec![0, 1, 2]]).unwrap();
        let c = cochain_of_pair(&disk, &SimplicialComplex::triangle_circle()).unwrap();
        assert!(c.cohomology(0).h.is_zero());
        assert!(c.cohomology(1).h.is_zero());
        assert_eq!(c.cohomology(2).h, FgAbGroup::free(1));
        let bad = SimplicialComplex::new(4, vec![vec![0, 3]]).unwrap();
        assert!(matches!(cochain_of_pair(&disk, &bad), Err(Error::InvalidSubcomplex(_))));
    }

    #[test]
    fn hexagon_wraps_twice() {
        let f = SimplicialMap::new(SimplicialComplex::cycle(6), SimplicialComplex::triangle_circle(), (0..6).map(|i| i % 3).collect()).unwrap();
        let h = cochain_map_of(&f).induced_on_cohomology(1);
        assert_eq!(h.matrix()[(0, 0)].clone() * h.matrix()[(0, 0)].clone(), int(4));
    }

    #[test]
    fn constant_and_identity_maps() {
        let k = SimplicialComplex::projective_plane();
        let id = SimplicialMap::new(k.clone(), k.clone(), (0..6).collect()).unwrap();
        assert_eq!(cochain_map_of(&id), CochainMap::identity(&cochain_of(&k)));
        let pt = SimplicialMap::new(k.clone(), k.clone(), vec![2; 6]).unwrap();
        let f = cochain_map_of(&pt);
        assert!(f.component(1).is_zero() && f.component(2).is_zero());
        assert!(!f.component(0).is_zero());
    }

    #[test]
    fn non_simplicial_rejected() {
        let r = SimplicialMap::new(SimplicialComplex::new(3, vec![vec![0, 1, 2]]).unwrap(), SimplicialComplex::triangle_circle(), vec![0, 1, 2]);
        assert!(matches!(r, Err(Error::NotSimplicial(_))));
    }

    #[test]
    fn pullback_is_contravariant() {
        let hex = SimplicialComplex::cycle(6);
        let tri = SimplicialComplex::triangle_circle();
        let rot = SimplicialMap::new(hex.clone(), hex.clone(), (0..6).map(|i| (i + 1) % 6).collect()).unwrap();
        let wrap = SimplicialMap::new(hex, tri, (0..6).map(|i| i % 3).collect()).unwrap();
        let lhs = cochain_map_of(&wrap.compose(&rot).unwrap());
        let rhs = cochain_map_of(&rot).compose(&cochain_map_of(&wrap)).unwrap();
        for n in 0..=1 {
            assert_eq!(lhs.component(n), rhs.component(n));
        }
    }
}
