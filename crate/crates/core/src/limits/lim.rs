use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::tower::{QZTower, TowerOfGroups};
use crate::error::{Error, Result};
use crate::lattice::{column_lattice_basis, integer_solve, mod_floor, prime_factor_count, FgAbGroup, FgMorphism, IntMatrix, RatMatrix};
use crate::qz::{is_injective, MixedLattice, QZGroup, QZMorphism, QZPresentation, Summand};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Lim1Verdict {
    Zero,
    Nonzero,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lim1Evidence {
    /// Finite towers are Mittag-Leffler.
    Finite { levels: usize },
    /// The images of m^depth and m^(depth+1) in the tail group agree.
    Stabilized { depth: usize, stable_image: MixedLattice },
    /// On the lattice L spanned by M̄^rank_depth (M̄ the free block of the tail
    /// map) M̄ acts by L·X, with |det X| = factor > 1: every further image has
    /// index factor in the previous one.
    IndexGrowth { rank_depth: usize, free_coords: Vec<usize>, lattice: IntMatrix, step: IntMatrix, factor: BigInt },
    /// Obtained from another certificate through an exact sequence.
    Transferred { reason: String, source: Box<Lim1Certificate> },
    /// No stabilization within the bound and no growth witness.
    Exhausted { bound: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lim1Certificate {
    pub verdict: Lim1Verdict,
    pub evidence: Lim1Evidence,
}

impl Lim1Certificate {
    pub fn transferred(reason: &str, source: &Lim1Certificate) -> Self {
        Lim1Certificate {
            verdict: source.verdict,
            evidence: Lim1Evidence::Transferred { reason: reason.into(), source: Box::new(source.clone()) },
        }
    }

    /// Recomputes the evidence against the tower it was issued for.
    pub fn recheck(&self, t: &QZTower) -> bool {
        match (&self.evidence, self.verdict) {
            (Lim1Evidence::Finite { levels }, Lim1Verdict::Zero) => t.is_finite() && t.prefix().len() == *levels,
            (Lim1Evidence::Stabilized { depth, stable_image }, Lim1Verdict::Zero) => match t.tail() {
                None => false,
                Some((_, m)) => {
                    let p = power(m, *depth);
                    let a = p.image_lattice();
                    let b = m.compose(&p).expect("endomorphism").image_lattice();
                    a.same_subgroup(stable_image) && b.same_subgroup(stable_image)
                }
            },
            (Lim1Evidence::IndexGrowth { rank_depth, free_coords, lattice, step, factor }, Lim1Verdict::Nonzero) => {
                let Some((a, m)) = t.tail() else { return false };
                recheck_growth(a, m, *rank_depth, free_coords, lattice, step, factor)
            }
            (Lim1Evidence::Transferred { source, .. }, v) => source.verdict == v,
            (Lim1Evidence::Exhausted { .. }, Lim1Verdict::Unknown) => true,
            _ => false,
        }
    }
}

pub(crate) fn power(m: &QZMorphism, k: usize) -> QZMorphism {
    let mut p = QZMorphism::identity(m.domain());
    for _ in 0..k {
        p = m.compose(&p).expect("endomorphism");
    }
    p
}

fn omega(g: &QZGroup) -> usize {
    g.torsion().iter().map(prime_factor_count).sum()
}

/// Depth after which images of an endomorphism must have stabilized if they
/// ever do: the number of Q, Q/Z and Z coordinates plus the prime factors of
/// the torsion.
pub fn stabilization_bound(a: &QZGroup) -> usize {
    a.q_rank() + a.qz_rank() + a.free_rank() + omega(a) + 1
}

/// The first k ≤ bound with im m^k = im m^(k+1), with that image.
fn stabilize(m: &QZMorphism, bound: usize) -> Option<(usize, MixedLattice)> {
    let mut p = QZMorphism::identity(m.domain());
    let mut img = p.image_lattice();
    for k in 0..=bound {
        let next = m.compose(&p).expect("endomorphism");
        let next_img = next.image_lattice();
        if next_img.same_subgroup(&img) {
            return Some((k, img));
        }
        p = next;
        img = next_img;
    }
    None
}

struct FreeAnalysis {
    rank_depth: usize,
    free_coords: Vec<usize>,
    lattice: IntMatrix,
    step: IntMatrix,
    factor: BigInt,
}

fn free_block(a: &QZGroup, m: &QZMorphism) -> (Vec<usize>, IntMatrix) {
    let free: Vec<usize> = (0..a.dim()).filter(|&k| *a.summand(k) == Summand::Z).collect();
    let block = m.matrix().select_rows(&free).select_cols(&free).to_integer().expect("Z → Z entries are integers");
    (free, block)
}

fn int_power(m: &IntMatrix, k: usize) -> IntMatrix {
    let mut p = IntMatrix::identity(m.rows());
    for _ in 0..k {
        p = m.mul(&p);
    }
    p
}

fn lattice_matrix(rows: usize, cols: &[Vec<BigInt>]) -> IntMatrix {
    IntMatrix::from_cols(rows, cols)
}

/// M̄ L = L X for the stable lattice L of the free block.
fn analyze_free(a: &QZGroup, m: &QZMorphism) -> FreeAnalysis {
    let (free_coords, mbar) = free_block(a, m);
    let r = free_coords.len();
    let rank = |k: usize| int_power(&mbar, k).to_rational().rank();
    let rank_depth = (0..=r).find(|&k| rank(k) == rank(k + 1)).unwrap_or(r);
    let lattice = lattice_matrix(r, &column_lattice_basis(&int_power(&mbar, rank_depth)));
    let image = mbar.mul(&lattice);
    let cols: Vec<Vec<BigInt>> = (0..image.cols())
        .map(|j| integer_solve(&lattice, &image.col(j)).expect("the stable lattice is invariant"))
        .collect();
    let step = lattice_matrix(lattice.cols(), &cols);
    let factor = step.determinant().abs();
    FreeAnalysis { rank_depth, free_coords, lattice, step, factor }
}

fn recheck_growth(
    a: &QZGroup,
    m: &QZMorphism,
    rank_depth: usize,
    free_coords: &[usize],
    lattice: &IntMatrix,
    step: &IntMatrix,
    factor: &BigInt,
) -> bool {
    let (coords, mbar) = free_block(a, m);
    if coords != free_coords || factor <= &BigInt::one() || step.determinant().abs() != *factor {
        return false;
    }
    let span = |x: &IntMatrix| MixedLattice { dim: x.rows(), divisible: vec![], lattice: (0..x.cols()).map(|j| x.col(j).into_iter().map(BigRational::from_integer).collect()).collect() };
    if !span(lattice).same_subgroup(&span(&int_power(&mbar, rank_depth))) || mbar.mul(lattice) != lattice.mul(step) {
        return false;
    }
    // indices [L : M̄^j L] = factor^j, and the images in A strictly descend
    let mut expected = BigInt::one();
    let mut p = power(m, rank_depth);
    let mut img = p.image_lattice();
    for j in 1..=3 {
        expected *= factor;
        let mj = int_power(&mbar, j).mul(lattice);
        let coords: Option<Vec<Vec<BigInt>>> = (0..mj.cols()).map(|c| integer_solve(lattice, &mj.col(c))).collect();
        let Some(coords) = coords else { return false };
        if lattice_matrix(lattice.cols(), &coords).determinant().abs() != expected {
            return false;
        }
        p = m.compose(&p).expect("endomorphism");
        let next = p.image_lattice();
        if next.same_subgroup(&img) {
            return false;
        }
        img = next;
    }
    true
}

/// lim¹ of a tower: Zero when the images of the tail map stabilize (the
/// Mittag-Leffler condition), Nonzero with an index-growth witness when the
/// free part keeps shrinking.
pub fn lim1_qz(t: &QZTower) -> Lim1Certificate {
    let Some((a, m)) = t.tail() else {
        return Lim1Certificate { verdict: Lim1Verdict::Zero, evidence: Lim1Evidence::Finite { levels: t.prefix().len() } };
    };
    let bound = stabilization_bound(a);
    if let Some((depth, stable_image)) = stabilize(m, bound) {
        return Lim1Certificate { verdict: Lim1Verdict::Zero, evidence: Lim1Evidence::Stabilized { depth, stable_image } };
    }
    if a.is_finitely_generated() {
        let f = analyze_free(a, m);
        if f.factor > BigInt::one() {
            return Lim1Certificate {
                verdict: Lim1Verdict::Nonzero,
                evidence: Lim1Evidence::IndexGrowth {
                    rank_depth: f.rank_depth,
                    free_coords: f.free_coords,
                    lattice: f.lattice,
                    step: f.step,
                    factor: f.factor,
                },
            };
        }
    }
    Lim1Certificate { verdict: Lim1Verdict::Unknown, evidence: Lim1Evidence::Exhausted { bound } }
}

pub fn lim1_tower(t: &TowerOfGroups) -> Lim1Certificate {
    lim1_qz(t.as_qz())
}

/// The inverse limit, realized as a subgroup of one level of the tower.
#[derive(Clone, Debug)]
pub struct Lim {
    pub presentation: QZPresentation,
    /// Level holding the subgroup: the last level of a finite tower or the seam.
    pub level: usize,
    /// False when the answer is only a lower bound (lim could be larger).
    pub complete: bool,
    tower: QZTower,
    /// The tail map restricted to the subgroup, an automorphism.
    restricted: Option<QZMorphism>,
}

impl Lim {
    pub fn group(&self) -> &QZGroup {
        self.presentation.group()
    }

    fn inclusion(&self) -> QZMorphism {
        QZMorphism::new(self.group().clone(), self.tower.level(self.level), self.presentation.lift_matrix().clone())
            .expect("lim sits inside its level")
    }

    /// The projection lim → level k.
    pub fn projection(&self, k: usize) -> QZMorphism {
        if k <= self.level {
            return self.tower.transition(k, self.level).compose(&self.inclusion()).expect("shapes");
        }
        let r = self.restricted.as_ref().expect("levels past the seam exist only with a tail");
        let inv = inverse(r);
        let mut f = QZMorphism::identity(self.group());
        for _ in self.level..k {
            f = inv.compose(&f).expect("endomorphism");
        }
        self.inclusion().compose(&f).expect("shapes")
    }

    /// lim F for a levelwise map whose component at this lim's level is `f`.
    pub fn map_to(&self, other: &Lim, f: &QZMorphism) -> Result<QZMorphism> {
        if self.level != other.level {
            return Err(Error::InvalidInput("limits live at different levels".into()));
        }
        other.presentation.morphism_from(self.group(), &f.matrix().mul(self.presentation.lift_matrix()))
    }
}

fn inverse(f: &QZMorphism) -> QZMorphism {
    let g = f.domain();
    let mut m = RatMatrix::zeros(g.dim(), g.dim());
    for k in 0..g.dim() {
        let e = g.unit(k);
        let col = if g.summand(k).is_divisible() { f.preimage_exact(&e) } else { f.preimage(&e) }.expect("automorphism");
        for (i, v) in col.into_iter().enumerate() {
            m[(i, k)] = v;
        }
    }
    QZMorphism::new(g.clone(), g.clone(), m).expect("inverse of an automorphism")
}

fn prime_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            out.push(p.clone());
            while n.is_multiple_of(&p) {
                n /= &p;
            }
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

/// Whether X^w ≡ 0 mod p for some prime p, forcing ∩ X^k Z^w = 0.
fn nilpotent_mod_some_prime(x: &IntMatrix, factor: &BigInt) -> bool {
    let w = x.rows();
    let xw = int_power(x, w.max(1));
    prime_divisors(factor).iter().any(|p| xw.entries().iter().all(|e| mod_floor(e, p).is_zero()))
}

/// The inverse limit of a tower.
///
/// Finite towers give their last level. With a tail (A, m), the limit is the
/// stable image ∩ m^k(A) when the images stabilize and m is injective there;
/// when the free part keeps shrinking and is nilpotent modulo a prime, only
/// the stable torsion survives. Other cases return a lower bound with
/// `complete` false.
pub fn lim_qz(t: &QZTower) -> Result<Lim> {
    let Some((a, m)) = t.tail() else {
        let last = t.prefix().len() - 1;
        let g = t.level(last);
        let (s, r) = g.ambient();
        return Ok(Lim { presentation: QZPresentation::new(&s, &r), level: last, complete: true, tower: t.clone(), restricted: None });
    };
    let (_, rels) = a.ambient();
    let bound = stabilization_bound(a);
    let (stable, complete) = match stabilize(m, bound) {
        Some((_, img)) => (img, true),
        None => {
            let torsion_part = torsion_sublattice(a);
            let img = stable_image_within(m, &torsion_part, bound);
            let complete = a.is_finitely_generated() && {
                let f = analyze_free(a, m);
                f.factor > BigInt::one() && nilpotent_mod_some_prime(&f.step, &f.factor)
            };
            (img, complete)
        }
    };
    let presentation = QZPresentation::new(&stable, &rels);
    let restricted = presentation.morphism_from(presentation.group(), &m.matrix().mul(presentation.lift_matrix()))?;
    if !is_injective(&restricted) {
        return Err(Error::NotRepresentable(format!("the tail map is not injective on the stable image in {a}")));
    }
    Ok(Lim { presentation, level: t.seam(), complete, tower: t.clone(), restricted: Some(restricted) })
}

/// Torsion coordinates of a group, with its relations.
fn torsion_sublattice(a: &QZGroup) -> MixedLattice {
    let (_, rels) = a.ambient();
    let mut l = rels;
    for k in 0..a.dim() {
        if matches!(a.summand(k), Summand::Cyclic(_)) {
            l.lattice.push(a.unit(k));
        }
    }
    l
}

fn stable_image_within(m: &QZMorphism, start: &MixedLattice, bound: usize) -> MixedLattice {
    let (_, rels) = m.domain().ambient();
    let mut cur = start.clone();
    for _ in 0..=bound {
        let next = cur.map(m.matrix()).sum(&rels);
        if next.same_subgroup(&cur) {
            break;
        }
        cur = next;
    }
    cur
}

/// lim of a tower of finitely generated groups, with its projections.
#[derive(Clone, Debug)]
pub struct FgLim {
    pub group: FgAbGroup,
    pub complete: bool,
    inner: Lim,
}

impl FgLim {
    pub fn projection(&self, k: usize) -> FgMorphism {
        let p = self.inner.projection(k);
        FgMorphism::new(self.group.clone(), self.inner.tower.level(k).to_fg().expect("f.g. level"), p.matrix().to_integer().expect("integer map"))
            .expect("projection is well defined")
    }

    pub fn as_qz(&self) -> &Lim {
        &self.inner
    }
}

pub fn lim_tower(t: &TowerOfGroups) -> Result<FgLim> {
    let inner = lim_qz(t.as_qz())?;
    let group = inner.group().to_fg().expect("subgroups of f.g. groups are f.g.");
    Ok(FgLim { group, complete: inner.complete, inner })
}
