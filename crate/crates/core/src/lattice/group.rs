use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{mod_floor, IntMatrix};
use super::smith::{integer_kernel, integer_solve, integer_solve_with, smith_normal_form, SmithDecomposition};
use crate::error::{Error, Result};

/// A finitely generated abelian group Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_t in
/// invariant-factor form: every d_i ≥ 2 and d_i | d_{i+1}.
///
/// Generator order is fixed: the r free generators first, then the cyclic
/// ones in chain order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    /// Checks the chain condition; use [`group_from_presentation`] for arbitrary data.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for (k, d) in torsion.iter().enumerate() {
            if d < &BigInt::from(2) {
                return Err(Error::InvalidInput(format!("torsion factor {d} must be at least 2")));
            }
            if k > 0 && !d.is_multiple_of(&torsion[k - 1]) {
                return Err(Error::InvalidInput(format!(
                    "torsion factors must form a divisibility chain, {} does not divide {d}",
                    torsion[k - 1]
                )));
            }
        }
        Ok(FgAbGroup { free_rank, torsion })
    }

    pub fn zero() -> Self {
        FgAbGroup { free_rank: 0, torsion: vec![] }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup { free_rank: rank, torsion: vec![] }
    }

    /// Z/d, or the zero group when d = 1.
    pub fn cyclic(d: impl Into<BigInt>) -> Self {
        let d = d.into().abs();
        if d.is_zero() {
            Self::free(1)
        } else if d.is_one() {
            Self::zero()
        } else {
            FgAbGroup { free_rank: 0, torsion: vec![d] }
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn num_gens(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_zero(&self) -> bool {
        self.num_gens() == 0
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group, `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Order of generator `k`: 0 for a free generator.
    pub fn gen_order(&self, k: usize) -> BigInt {
        if k < self.free_rank {
            BigInt::zero()
        } else {
            self.torsion[k - self.free_rank].clone()
        }
    }

    /// Relation lattice of the generators, as columns of an n × t matrix.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.num_gens();
        let mut r = IntMatrix::zeros(n, self.torsion.len());
        for (k, d) in self.torsion.iter().enumerate() {
            r[(self.free_rank + k, k)] = d.clone();
        }
        r
    }

    /// Reduces torsion coordinates into [0, d).
    pub fn normalize(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.num_gens(), "element has wrong number of coordinates");
        x.iter()
            .enumerate()
            .map(|(k, v)| if k < self.free_rank { v.clone() } else { mod_floor(v, &self.torsion[k - self.free_rank]) })
            .collect()
    }

    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        self.normalize(x).iter().all(Zero::is_zero)
    }

    pub fn zero_element(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.num_gens()]
    }

    /// Every element, for finite groups only.
    pub fn elements(&self) -> Option<Vec<Vec<BigInt>>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![vec![]];
        for d in &self.torsion {
            let mut next = Vec::new();
            for prefix in &out {
                let mut v = BigInt::zero();
                while &v < d {
                    let mut e = prefix.clone();
                    e.push(v.clone());
                    next.push(e);
                    v += 1;
                }
            }
            out = next;
        }
        Some(out)
    }

    /// Number of prime factors of the torsion order, counted with multiplicity.
    pub fn torsion_length(&self) -> usize {
        self.torsion.iter().map(prime_factor_count).sum()
    }
}

pub(crate) fn prime_factor_count(n: &BigInt) -> usize {
    let mut n = n.abs();
    let mut count = 0;
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        while n.is_multiple_of(&p) {
            n /= &p;
            count += 1;
        }
        p += 1;
    }
    if n > BigInt::one() {
        count += 1;
    }
    count
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A homomorphism given by its integer matrix on canonical generators
/// (codomain generators × domain generators), torsion rows reduced.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FgMorphism {
    domain: FgAbGroup,
    codomain: FgAbGroup,
    matrix: IntMatrix,
}

impl FgMorphism {
    /// Validates well-definedness: a generator of order d must go to an element killed by d.
    pub fn new(domain: FgAbGroup, codomain: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != codomain.num_gens() || matrix.cols() != domain.num_gens() {
            return Err(Error::InvalidInput(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                codomain.num_gens(),
                domain.num_gens()
            )));
        }
        for j in 0..domain.num_gens() {
            let d = domain.gen_order(j);
            for i in 0..codomain.num_gens() {
                let e = codomain.gen_order(i);
                let x = &matrix[(i, j)];
                let ok = if e.is_zero() {
                    // free target coordinate: torsion generators must vanish there
                    d.is_zero() || x.is_zero()
                } else {
                    (x * &d).is_multiple_of(&e)
                };
                if !ok {
                    return Err(Error::NotWellDefined(format!(
                        "generator {j} of order {d} sent to entry {x} in coordinate {i} of order {e}"
                    )));
                }
            }
        }
        Ok(Self::new_unchecked(domain, codomain, matrix))
    }

    pub(crate) fn new_unchecked(domain: FgAbGroup, codomain: FgAbGroup, matrix: IntMatrix) -> Self {
        let mut m = matrix;
        for i in codomain.free_rank..codomain.num_gens() {
            let e = codomain.gen_order(i);
            for j in 0..m.cols() {
                m[(i, j)] = mod_floor(&m[(i, j)], &e);
            }
        }
        FgMorphism { domain, codomain, matrix: m }
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        Self::new_unchecked(g.clone(), g.clone(), IntMatrix::identity(g.num_gens()))
    }

    pub fn zero(domain: &FgAbGroup, codomain: &FgAbGroup) -> Self {
        Self::new_unchecked(domain.clone(), codomain.clone(), IntMatrix::zeros(codomain.num_gens(), domain.num_gens()))
    }

    /// Multiplication by k on a group.
    pub fn scalar(g: &FgAbGroup, k: impl Into<BigInt>) -> Self {
        Self::new_unchecked(g.clone(), g.clone(), IntMatrix::identity(g.num_gens()).scale(&k.into()))
    }

    pub fn domain(&self) -> &FgAbGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgAbGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.codomain.normalize(&self.matrix.mul_vec(x))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &FgMorphism) -> Result<FgMorphism> {
        if g.codomain != self.domain {
            return Err(Error::InvalidInput(format!("cannot compose: {} is not {}", g.codomain, self.domain)));
        }
        Ok(Self::new_unchecked(g.domain.clone(), self.codomain.clone(), self.matrix.mul(&g.matrix)))
    }

    pub fn add(&self, other: &FgMorphism) -> FgMorphism {
        assert_eq!((&self.domain, &self.codomain), (&other.domain, &other.codomain));
        Self::new_unchecked(self.domain.clone(), self.codomain.clone(), self.matrix.add(&other.matrix))
    }

    pub fn neg(&self) -> FgMorphism {
        Self::new_unchecked(self.domain.clone(), self.codomain.clone(), self.matrix.neg())
    }

    pub fn is_injective(&self) -> bool {
        kernel(self).group.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        cokernel(self).group.is_zero()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

impl fmt::Debug for FgMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {:?}", self.domain, self.codomain, self.matrix)
    }
}

/// A subquotient S / R of Z^n, put in canonical form.
///
/// `lift` sends canonical coordinates to ambient vectors; `to_canonical`
/// sends ambient vectors of S to canonical coordinates.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub group: FgAbGroup,
    /// n × k, the columns represent the canonical generators.
    pub lift: IntMatrix,
    gens: IntMatrix,
    gens_snf: SmithDecomposition,
    /// k × g, from S-generator coordinates to canonical coordinates.
    transform: IntMatrix,
}

impl Subquotient {
    /// `gens` and `rels` are n × g and n × h; R must lie inside S.
    pub fn new(gens: &IntMatrix, rels: &IntMatrix) -> Subquotient {
        let n = gens.rows();
        assert_eq!(rels.rows(), n);
        let g = gens.cols();
        // Relations among the S-generators: c with S c ∈ R.
        let stacked = gens.hstack(&rels.neg());
        let rel_vectors: Vec<Vec<BigInt>> =
            integer_kernel(&stacked).into_iter().map(|v| v[..g].to_vec()).filter(|v| v.iter().any(|x| !x.is_zero())).collect();
        let rel = if rel_vectors.is_empty() {
            IntMatrix::zeros(0, g)
        } else {
            IntMatrix::from_cols(g, &rel_vectors).transpose()
        };
        let s = smith_normal_form(&rel);
        // Relations in coordinates y = V^T c are generated by d_i e_i.
        let mut free_idx = Vec::new();
        let mut tors_idx = Vec::new();
        for i in 0..g {
            let d = s.diag(i);
            if d.is_zero() {
                free_idx.push(i);
            } else if !d.is_one() {
                tors_idx.push(i);
            }
        }
        let torsion: Vec<BigInt> = tors_idx.iter().map(|&i| s.diag(i)).collect();
        let kept: Vec<usize> = free_idx.iter().chain(&tors_idx).copied().collect();
        let group = FgAbGroup { free_rank: free_idx.len(), torsion };
        let gen_coords = s.v_inv.transpose().select_cols(&kept);
        let lift = gens.mul(&gen_coords);
        let transform = s.v.transpose().select_rows(&kept);
        Subquotient { group, lift, gens: gens.clone(), gens_snf: smith_normal_form(gens), transform }
    }

    /// Canonical coordinates of an ambient vector in S, `None` if outside S.
    pub fn to_canonical(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = integer_solve_with(&self.gens_snf, self.gens.cols(), x)?;
        Some(self.group.normalize(&self.transform.mul_vec(&c)))
    }

    pub fn gens(&self) -> &IntMatrix {
        &self.gens
    }
}

/// Canonical form of the cokernel of a relation matrix whose rows are relations.
pub fn group_from_presentation(gens: usize, relations: &IntMatrix) -> Result<FgAbGroup> {
    if relations.cols() != gens {
        return Err(Error::InvalidInput(format!(
            "relation matrix has {} columns but there are {gens} generators",
            relations.cols()
        )));
    }
    Ok(Subquotient::new(&IntMatrix::identity(gens), &relations.transpose()).group)
}

/// A group with a witness morphism.
#[derive(Clone, Debug)]
pub struct GroupWith {
    pub group: FgAbGroup,
    pub map: FgMorphism,
}

/// Generators (as ambient columns) of {x : f x ∈ R_codomain}.
pub fn kernel_lattice(f: &FgMorphism) -> Vec<Vec<BigInt>> {
    let n = f.domain.num_gens();
    let stacked = f.matrix.hstack(&f.codomain.relation_matrix().neg());
    integer_kernel(&stacked).into_iter().map(|v| v[..n].to_vec()).collect()
}

/// Kernel with its inclusion into the domain.
pub fn kernel(f: &FgMorphism) -> GroupWith {
    let n = f.domain.num_gens();
    let k = kernel_lattice(f);
    let sq = Subquotient::new(&IntMatrix::from_cols(n, &k), &f.domain.relation_matrix());
    let map = FgMorphism::new_unchecked(sq.group.clone(), f.domain.clone(), sq.lift.clone());
    GroupWith { group: sq.group, map }
}

/// Image with its inclusion into the codomain; `factor` is the corestriction A → im f.
#[derive(Clone, Debug)]
pub struct Image {
    pub group: FgAbGroup,
    pub inclusion: FgMorphism,
    pub factor: FgMorphism,
}

pub fn image(f: &FgMorphism) -> Image {
    let n = f.domain.num_gens();
    let k = IntMatrix::from_cols(n, &kernel_lattice(f));
    let rels = f.domain.relation_matrix().hstack(&k);
    let sq = Subquotient::new(&IntMatrix::identity(n), &rels);
    let inclusion = FgMorphism::new_unchecked(sq.group.clone(), f.codomain.clone(), f.matrix.mul(&sq.lift));
    let factor = FgMorphism::new_unchecked(f.domain.clone(), sq.group.clone(), sq.transform.clone());
    Image { group: sq.group, inclusion, factor }
}

/// Cokernel with its projection from the codomain. `section` lifts canonical
/// generators of the cokernel back to the codomain.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub group: FgAbGroup,
    pub projection: FgMorphism,
    pub section: IntMatrix,
}

pub fn cokernel(f: &FgMorphism) -> Cokernel {
    let n = f.codomain.num_gens();
    let rels = f.codomain.relation_matrix().hstack(&f.matrix);
    let sq = Subquotient::new(&IntMatrix::identity(n), &rels);
    let projection = FgMorphism::new_unchecked(f.codomain.clone(), sq.group.clone(), sq.transform.clone());
    Cokernel { group: sq.group, projection, section: sq.lift }
}

/// Quotient of `g` by the subgroup generated by the given elements.
pub fn quotient_by(g: &FgAbGroup, elements: &[Vec<BigInt>]) -> Cokernel {
    let sub = FgAbGroup::free(elements.len());
    let m = IntMatrix::from_cols(g.num_gens(), elements);
    cokernel(&FgMorphism::new_unchecked(sub, g.clone(), m))
}

/// `f ∘ g`.
pub fn compose(f: &FgMorphism, g: &FgMorphism) -> Result<FgMorphism> {
    f.compose(g)
}

#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: FgAbGroup,
    pub injections: [FgMorphism; 2],
    pub projections: [FgMorphism; 2],
}

pub fn direct_sum(a: &FgAbGroup, b: &FgAbGroup) -> DirectSum {
    let (na, nb) = (a.num_gens(), b.num_gens());
    let rels = a.relation_matrix().block_diag(&b.relation_matrix());
    let sq = Subquotient::new(&IntMatrix::identity(na + nb), &rels);
    let s = sq.group.clone();
    let inj_a = FgMorphism::new_unchecked(a.clone(), s.clone(), sq.transform.select_cols(&(0..na).collect::<Vec<_>>()));
    let inj_b =
        FgMorphism::new_unchecked(b.clone(), s.clone(), sq.transform.select_cols(&(na..na + nb).collect::<Vec<_>>()));
    let proj_a = FgMorphism::new_unchecked(s.clone(), a.clone(), sq.lift.submatrix(0..na, 0..s.num_gens()));
    let proj_b = FgMorphism::new_unchecked(s.clone(), b.clone(), sq.lift.submatrix(na..na + nb, 0..s.num_gens()));
    DirectSum { group: s, injections: [inj_a, inj_b], projections: [proj_a, proj_b] }
}

/// Canonical form of a direct sum of several groups.
pub fn direct_sum_all(groups: &[FgAbGroup]) -> FgAbGroup {
    groups.iter().fold(FgAbGroup::zero(), |acc, g| direct_sum(&acc, g).group)
}

pub fn is_isomorphic(a: &FgAbGroup, b: &FgAbGroup) -> bool {
    a == b
}

/// Some x with f(x) = b.
pub fn solve_preimage(f: &FgMorphism, b: &[BigInt]) -> Result<Vec<BigInt>> {
    let n = f.domain.num_gens();
    let stacked = f.matrix.hstack(&f.codomain.relation_matrix());
    match integer_solve(&stacked, b) {
        Some(x) => Ok(f.domain.normalize(&x[..n])),
        None => Err(Error::NoPreimage),
    }
}

/// Subgroup test in an ambient group: is every element of `xs` in the span of `ys`?
pub fn spans_contain(g: &FgAbGroup, ys: &[Vec<BigInt>], xs: &[Vec<BigInt>]) -> bool {
    let m = IntMatrix::from_cols(g.num_gens(), ys).hstack(&g.relation_matrix());
    let s = smith_normal_form(&m);
    xs.iter().all(|x| integer_solve_with(&s, m.cols(), x).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::matrix::int;

    fn z() -> FgAbGroup {
        FgAbGroup::free(1)
    }

    #[test]
    fn presentations() {
        assert_eq!(group_from_presentation(1, &IntMatrix::from_rows(&[vec![6]])).unwrap(), FgAbGroup::cyclic(6));
        let g = group_from_presentation(2, &IntMatrix::from_rows(&[vec![2, 0], vec![0, 0]])).unwrap();
        assert_eq!(g, FgAbGroup::new(1, vec![int(2)]).unwrap());
        let g = group_from_presentation(2, &IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]])).unwrap();
        assert_eq!(g, FgAbGroup::new(0, vec![int(2), int(4)]).unwrap());
        assert!(group_from_presentation(3, &IntMatrix::zeros(1, 2)).is_err());
    }

    #[test]
    fn kernel_image_cokernel_of_doubling() {
        let f = FgMorphism::scalar(&z(), 2);
        assert!(kernel(&f).group.is_zero());
        assert_eq!(image(&f).group, z());
        assert_eq!(cokernel(&f).group, FgAbGroup::cyclic(2));
    }

    #[test]
    fn kernel_cokernel_of_identity_and_zero() {
        let z4 = FgAbGroup::cyclic(4);
        let id = FgMorphism::identity(&z4);
        assert!(kernel(&id).group.is_zero());
        assert!(cokernel(&id).group.is_zero());
        let zero = FgMorphism::zero(&z4, &z4);
        assert_eq!(kernel(&zero).group, z4);
        assert_eq!(cokernel(&zero).group, z4);
    }

    #[test]
    fn ill_defined_morphism_rejected() {
        // Z/4 -> Z/6 sending 1 to 1 is not a homomorphism.
        assert!(FgMorphism::new(FgAbGroup::cyclic(4), FgAbGroup::cyclic(6), IntMatrix::from_rows(&[vec![1]])).is_err());
        assert!(FgMorphism::new(FgAbGroup::cyclic(4), FgAbGroup::cyclic(6), IntMatrix::from_rows(&[vec![3]])).is_ok());
        assert!(FgMorphism::new(FgAbGroup::cyclic(4), z(), IntMatrix::from_rows(&[vec![1]])).is_err());
    }

    #[test]
    fn preimages() {
        let f = FgMorphism::scalar(&z(), 2);
        assert_eq!(solve_preimage(&f, &[int(6)]).unwrap(), vec![int(3)]);
        assert!(matches!(solve_preimage(&f, &[int(5)]), Err(Error::NoPreimage)));
    }

    #[test]
    fn direct_sums_and_isomorphism() {
        let s = direct_sum(&FgAbGroup::cyclic(2), &FgAbGroup::cyclic(3));
        assert_eq!(s.group, FgAbGroup::cyclic(6));
        for k in 0..2 {
            let round = s.projections[k].compose(&s.injections[k]).unwrap();
            assert_eq!(round, FgMorphism::identity(round.domain()));
        }
        let a = direct_sum(&FgAbGroup::cyclic(2), &FgAbGroup::cyclic(4)).group;
        assert!(!is_isomorphic(&a, &FgAbGroup::cyclic(8)));
    }

    #[test]
    fn torsion_length_counts_primes() {
        assert_eq!(FgAbGroup::new(0, vec![int(2), int(12)]).unwrap().torsion_length(), 4);
    }
}
