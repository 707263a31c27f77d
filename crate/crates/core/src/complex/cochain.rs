use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::lattice::{cokernel, image, kernel, solve_preimage, Cokernel, FgAbGroup, FgMorphism, IntMatrix};

/// A bounded cochain complex C^lo → … → C^hi of finitely generated abelian groups.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CochainComplex {
    lo: i32,
    groups: Vec<FgAbGroup>,
    /// `diffs[k]` goes from degree lo + k to lo + k + 1.
    diffs: Vec<FgMorphism>,
}

/// Outcome of [`CochainComplex::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    /// First degree n with δ^{n+1} ∘ δ^n ≠ 0.
    pub offending_degree: Option<i32>,
}

impl CochainComplex {
    /// Groups C^lo, C^{lo+1}, … and the differentials between consecutive ones.
    ///
    /// Only shapes and well-definedness are checked here; use
    /// [`validate`](Self::validate) for δ ∘ δ = 0.
    pub fn new(lo: i32, groups: Vec<FgAbGroup>, diffs: Vec<FgMorphism>) -> Result<Self> {
        if diffs.len() + 1 != groups.len() && !(groups.is_empty() && diffs.is_empty()) {
            return Err(Error::InvalidInput(format!(
                "{} groups need {} differentials, got {}",
                groups.len(),
                groups.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.domain() != &groups[k] || d.codomain() != &groups[k + 1] {
                return Err(Error::InvalidInput(format!("differential in degree {} has the wrong shape", lo + k as i32)));
            }
        }
        Ok(CochainComplex { lo, groups, diffs })
    }

    /// Builds a complex from integer matrices, checking well-definedness.
    pub fn from_matrices(lo: i32, groups: Vec<FgAbGroup>, matrices: Vec<IntMatrix>) -> Result<Self> {
        let mut diffs = Vec::with_capacity(matrices.len());
        for (k, m) in matrices.into_iter().enumerate() {
            let (Some(a), Some(b)) = (groups.get(k), groups.get(k + 1)) else {
                return Err(Error::InvalidInput("more differentials than gaps between groups".into()));
            };
            diffs.push(FgMorphism::new(a.clone(), b.clone(), m)?);
        }
        Self::new(lo, groups, diffs)
    }

    pub fn zero() -> Self {
        CochainComplex { lo: 0, groups: vec![], diffs: vec![] }
    }

    /// A single group placed in degree n.
    pub fn concentrated(n: i32, g: FgAbGroup) -> Self {
        CochainComplex { lo: n, groups: vec![g], diffs: vec![] }
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Top degree of the support; lo − 1 for the empty complex.
    pub fn hi(&self) -> i32 {
        self.lo + self.groups.len() as i32 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    pub fn group(&self, n: i32) -> FgAbGroup {
        if n < self.lo || n > self.hi() {
            FgAbGroup::zero()
        } else {
            self.groups[(n - self.lo) as usize].clone()
        }
    }

    /// δ^n: C^n → C^{n+1}, zero outside the support.
    pub fn differential(&self, n: i32) -> FgMorphism {
        if n >= self.lo && n < self.hi() {
            self.diffs[(n - self.lo) as usize].clone()
        } else {
            FgMorphism::zero(&self.group(n), &self.group(n + 1))
        }
    }

    pub fn groups(&self) -> &[FgAbGroup] {
        &self.groups
    }

    pub fn differentials(&self) -> &[FgMorphism] {
        &self.diffs
    }

    pub fn validate(&self) -> ValidationReport {
        for n in self.lo..self.hi() {
            let dd = self.differential(n + 1).compose(&self.differential(n)).expect("consecutive");
            if !dd.is_zero() {
                return ValidationReport { valid: false, offending_degree: Some(n) };
            }
        }
        ValidationReport { valid: true, offending_degree: None }
    }

    pub fn is_free(&self) -> bool {
        self.groups.iter().all(FgAbGroup::is_free)
    }

    /// The first degree whose group has torsion.
    pub fn first_non_free_degree(&self) -> Option<i32> {
        self.degrees().find(|&n| !self.group(n).is_free())
    }

    /// The same complex with every degree moved up by k.
    pub fn shift(&self, k: i32) -> Self {
        CochainComplex { lo: self.lo + k, groups: self.groups.clone(), diffs: self.diffs.clone() }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|n| sign(n) * self.group(n).free_rank() as i64).sum()
    }

    pub fn cohomology(&self, n: i32) -> CohomologyData {
        CohomologyData::compute(self, n)
    }
}

fn sign(n: i32) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Cocycles, coboundaries and cohomology in one degree, with every map of
/// the sequence C^{n-1} → B^n → Z^n → C^n and the quotient C^{n+1} → C^{n+1}/B^{n+1}.
#[derive(Clone, Debug)]
pub struct CohomologyData {
    pub degree: i32,
    pub h: FgAbGroup,
    pub z: FgAbGroup,
    pub b: FgAbGroup,
    /// B^n → Z^n
    pub i: FgMorphism,
    /// Z^n → C^n
    pub j: FgMorphism,
    /// C^{n-1} → B^n
    pub delta_prime: FgMorphism,
    /// Z^n → H^n
    pub p: FgMorphism,
    /// C^{n+1} → C^{n+1}/B^{n+1}
    pub q: FgMorphism,
    /// Z^n-coordinates of a cocycle for each canonical generator of H^n.
    pub representatives: IntMatrix,
}

impl CohomologyData {
    fn compute(c: &CochainComplex, n: i32) -> CohomologyData {
        let zk = kernel(&c.differential(n));
        let im = image(&c.differential(n - 1));
        let j = zk.map;
        let b_in_c = im.inclusion;
        let cols: Vec<Vec<BigInt>> = (0..im.group.num_gens())
            .map(|k| {
                let mut e = im.group.zero_element();
                e[k] = BigInt::one();
                solve_preimage(&j, &b_in_c.apply(&e)).expect("coboundaries are cocycles")
            })
            .collect();
        let i = FgMorphism::new(im.group.clone(), zk.group.clone(), IntMatrix::from_cols(zk.group.num_gens(), &cols))
            .expect("inclusion of coboundaries");
        let Cokernel { group: h, projection: p, section } = cokernel(&i);
        let representatives = section;
        let q = cokernel(&c.differential(n)).projection;
        CohomologyData {
            degree: n,
            h,
            z: zk.group,
            b: im.group,
            i,
            j,
            delta_prime: im.factor,
            p,
            q,
            representatives,
        }
    }

    /// Representative cocycles as vectors of C^n.
    pub fn cocycles(&self) -> IntMatrix {
        self.j.matrix().mul(&self.representatives)
    }

    /// The quotient group C^{n+1}/B^{n+1}.
    pub fn quotient_group(&self) -> &FgAbGroup {
        self.q.codomain()
    }
}
