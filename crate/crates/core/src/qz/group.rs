use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::lattice::{mixed_solve, MixedLattice};
use crate::error::{Error, Result};
use crate::lattice::{frac, mod_floor, FgAbGroup, FgMorphism, IntMatrix, RatMatrix, Subquotient};

/// One cyclic or divisible summand of a [`QZGroup`].
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Summand {
    /// The rationals Q.
    Q,
    /// The circle group Q/Z.
    QZ,
    /// The integers Z.
    Z,
    /// Z/d with d ≥ 2.
    Cyclic(BigInt),
}

impl Summand {
    pub fn is_divisible(&self) -> bool {
        matches!(self, Summand::Q | Summand::QZ)
    }

    fn sort_key(&self) -> u8 {
        match self {
            Summand::Q => 0,
            Summand::QZ => 1,
            Summand::Z => 2,
            Summand::Cyclic(_) => 3,
        }
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::Q => write!(f, "Q"),
            Summand::QZ => write!(f, "Q/Z"),
            Summand::Z => write!(f, "Z"),
            Summand::Cyclic(d) => write!(f, "Z/{d}"),
        }
    }
}

/// A direct sum of copies of Q, Q/Z, Z and finite cyclic groups, one
/// coordinate per summand.
///
/// The summands are kept in the order they were assembled in, so that
/// Hom groups and cone groups keep their block layout. [`QZGroup::canonical`]
/// gives the standard form Q^a ⊕ (Q/Z)^b ⊕ Z^c ⊕ Z/d₁ ⊕ … with d₁ | d₂ | …,
/// and two groups are isomorphic exactly when their canonical forms agree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QZGroup {
    summands: Vec<Summand>,
}

/// A group element: one rational per coordinate, normalized per summand.
pub type QZElement = Vec<BigRational>;

impl QZGroup {
    pub fn new(summands: Vec<Summand>) -> Result<Self> {
        for s in &summands {
            if let Summand::Cyclic(d) = s {
                if d < &BigInt::from(2) {
                    return Err(Error::InvalidInput(format!("cyclic summand Z/{d} needs order at least 2")));
                }
            }
        }
        Ok(QZGroup { summands })
    }

    pub fn zero() -> Self {
        QZGroup::default()
    }

    /// Q^a ⊕ (Q/Z)^b ⊕ Z^c ⊕ ⊕ Z/dᵢ in that order.
    pub fn from_signature(a: usize, b: usize, c: usize, torsion: &[BigInt]) -> Result<Self> {
        let mut s = vec![Summand::Q; a];
        s.extend(std::iter::repeat(Summand::QZ).take(b));
        s.extend(std::iter::repeat(Summand::Z).take(c));
        s.extend(torsion.iter().map(|d| Summand::Cyclic(d.clone())));
        Self::new(s)
    }

    pub fn rationals(k: usize) -> Self {
        QZGroup { summands: vec![Summand::Q; k] }
    }

    pub fn circle(k: usize) -> Self {
        QZGroup { summands: vec![Summand::QZ; k] }
    }

    pub fn from_fg(g: &FgAbGroup) -> Self {
        let mut s = vec![Summand::Z; g.free_rank()];
        s.extend(g.torsion().iter().map(|d| Summand::Cyclic(d.clone())));
        QZGroup { summands: s }
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn summand(&self, k: usize) -> &Summand {
        &self.summands[k]
    }

    pub fn dim(&self) -> usize {
        self.summands.len()
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn q_rank(&self) -> usize {
        self.summands.iter().filter(|s| **s == Summand::Q).count()
    }

    pub fn qz_rank(&self) -> usize {
        self.summands.iter().filter(|s| **s == Summand::QZ).count()
    }

    pub fn free_rank(&self) -> usize {
        self.summands.iter().filter(|s| **s == Summand::Z).count()
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.summands
            .iter()
            .filter_map(|s| match s {
                Summand::Cyclic(d) => Some(d.clone()),
                _ => None,
            })
            .collect()
    }

    /// Only Q and Q/Z summands.
    pub fn is_divisible(&self) -> bool {
        self.summands.iter().all(Summand::is_divisible)
    }

    pub fn is_finitely_generated(&self) -> bool {
        !self.summands.iter().any(Summand::is_divisible)
    }

    pub fn direct_sum(&self, other: &QZGroup) -> QZGroup {
        let mut s = self.summands.clone();
        s.extend(other.summands.iter().cloned());
        QZGroup { summands: s }
    }

    /// Standard form with the torsion rewritten as an invariant-factor chain.
    pub fn canonical(&self) -> QZGroup {
        let fg = self.fg_part();
        let mut out = Self::from_signature(self.q_rank(), self.qz_rank(), 0, &[]).expect("no torsion");
        out.summands.extend(QZGroup::from_fg(&fg).summands);
        out
    }

    /// Whether the summands are already in standard order with a torsion chain.
    pub fn is_standard(&self) -> bool {
        let keys: Vec<u8> = self.summands.iter().map(Summand::sort_key).collect();
        keys.windows(2).all(|w| w[0] <= w[1]) && self.torsion().windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }

    pub fn is_isomorphic(&self, other: &QZGroup) -> bool {
        self.canonical() == other.canonical()
    }

    fn fg_part(&self) -> FgAbGroup {
        let tors: Vec<BigInt> = self.torsion();
        let n = self.free_rank() + tors.len();
        let mut rels = IntMatrix::zeros(n, tors.len());
        for (k, d) in tors.iter().enumerate() {
            rels[(self.free_rank() + k, k)] = d.clone();
        }
        Subquotient::new(&IntMatrix::identity(n), &rels).group
    }

    /// The finitely generated group with the same canonical form, if there is no divisible summand.
    pub fn to_fg(&self) -> Option<FgAbGroup> {
        self.is_finitely_generated().then(|| self.fg_part())
    }

    /// Normalizes an element; fails if a Z or Z/d coordinate is not an integer.
    pub fn element(&self, x: &[BigRational]) -> Result<QZElement> {
        if x.len() != self.dim() {
            return Err(Error::InvalidInput(format!("element has {} coordinates, expected {}", x.len(), self.dim())));
        }
        x.iter()
            .zip(&self.summands)
            .map(|(v, s)| match s {
                Summand::Q => Ok(v.clone()),
                Summand::QZ => Ok(frac(v)),
                Summand::Z if v.is_integer() => Ok(v.clone()),
                Summand::Cyclic(d) if v.is_integer() => {
                    Ok(BigRational::from_integer(mod_floor(&v.to_integer(), d)))
                }
                _ => Err(Error::InvalidInput(format!("coordinate {v} must be an integer in summand {s}"))),
            })
            .collect()
    }

    /// Normalizes an element known to be valid.
    pub fn normalize(&self, x: &[BigRational]) -> QZElement {
        self.element(x).expect("element coordinates fit their summands")
    }

    pub fn zero_element(&self) -> QZElement {
        vec![BigRational::zero(); self.dim()]
    }

    pub fn is_zero_element(&self, x: &[BigRational]) -> bool {
        self.normalize(x).iter().all(Zero::is_zero)
    }

    pub fn unit(&self, k: usize) -> QZElement {
        let mut e = self.zero_element();
        e[k] = BigRational::one();
        e
    }

    /// The group as a subquotient of its own coordinate space: generators S and relations R.
    pub fn ambient(&self) -> (MixedLattice, MixedLattice) {
        let n = self.dim();
        let mut s = MixedLattice::zero(n);
        let mut r = MixedLattice::zero(n);
        for (k, summand) in self.summands.iter().enumerate() {
            let unit = self.unit(k);
            match summand {
                Summand::Q => s.divisible.push(unit),
                Summand::QZ => {
                    s.divisible.push(unit.clone());
                    r.lattice.push(unit);
                }
                Summand::Z => s.lattice.push(unit),
                Summand::Cyclic(d) => {
                    s.lattice.push(unit.clone());
                    r.lattice.push(unit.iter().map(|x| x * BigRational::from_integer(d.clone())).collect());
                }
            }
        }
        (s, r)
    }

    /// Test elements: unit vectors of every coordinate plus a few fractional
    /// multiples on divisible coordinates.
    pub fn sample_elements(&self) -> Vec<QZElement> {
        let mut out = Vec::new();
        for (k, s) in self.summands.iter().enumerate() {
            match s {
                Summand::Q | Summand::QZ => {
                    for (p, q) in [(1, 1), (1, 2), (1, 3), (2, 5)] {
                        let mut e = self.zero_element();
                        e[k] = BigRational::new(p.into(), q.into());
                        out.push(self.normalize(&e));
                    }
                }
                _ => out.push(self.unit(k)),
            }
        }
        out
    }
}

impl fmt::Display for QZGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.summands.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

impl fmt::Debug for QZGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A homomorphism between [`QZGroup`]s, stored as a normalized rational
/// matrix (codomain coordinates × domain coordinates).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QZMorphism {
    domain: QZGroup,
    codomain: QZGroup,
    matrix: RatMatrix,
}

/// Normalizes one matrix entry for a source summand and target summand.
fn normalize_entry(src: &Summand, tgt: &Summand, x: &BigRational) -> std::result::Result<BigRational, String> {
    let zero = BigRational::zero();
    let must_vanish = |x: &BigRational| if x.is_zero() { Ok(zero.clone()) } else { Err(format!("{src} → {tgt} must be zero, got {x}")) };
    let integer = |x: &BigRational| if x.is_integer() { Ok(()) } else { Err(format!("{src} → {tgt} needs an integer, got {x}")) };
    match (src, tgt) {
        (Summand::Q, Summand::Q) | (Summand::Q, Summand::QZ) => Ok(x.clone()),
        (Summand::Q | Summand::QZ, Summand::Z | Summand::Cyclic(_)) => must_vanish(x),
        (Summand::QZ, Summand::Q) => must_vanish(x),
        (Summand::QZ, Summand::QZ) => integer(x).map(|_| x.clone()),
        (Summand::Z, Summand::Q) => Ok(x.clone()),
        (Summand::Z, Summand::QZ) => Ok(frac(x)),
        (Summand::Z, Summand::Z) => integer(x).map(|_| x.clone()),
        (Summand::Z, Summand::Cyclic(e)) => {
            integer(x)?;
            Ok(BigRational::from_integer(mod_floor(&x.to_integer(), e)))
        }
        (Summand::Cyclic(_), Summand::Q | Summand::Z) => must_vanish(x),
        (Summand::Cyclic(d), Summand::QZ) => {
            let dx = x * BigRational::from_integer(d.clone());
            if dx.is_integer() {
                Ok(frac(x))
            } else {
                Err(format!("Z/{d} → Q/Z needs a multiple of 1/{d}, got {x}"))
            }
        }
        (Summand::Cyclic(d), Summand::Cyclic(e)) => {
            integer(x)?;
            let v = x.to_integer();
            if (&v * d).is_multiple_of(e) {
                Ok(BigRational::from_integer(mod_floor(&v, e)))
            } else {
                Err(format!("Z/{d} → Z/{e} needs x·{d} ≡ 0 mod {e}, got {v}"))
            }
        }
    }
}

impl QZMorphism {
    /// Validates every block and normalizes the entries.
    pub fn new(domain: QZGroup, codomain: QZGroup, matrix: RatMatrix) -> Result<Self> {
        if matrix.rows() != codomain.dim() || matrix.cols() != domain.dim() {
            return Err(Error::InvalidInput(format!(
                "morphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                codomain.dim(),
                domain.dim()
            )));
        }
        let mut m = matrix;
        for j in 0..domain.dim() {
            for i in 0..codomain.dim() {
                m[(i, j)] = normalize_entry(domain.summand(j), codomain.summand(i), &m[(i, j)])
                    .map_err(|reason| Error::IllegalBlock { row: i, col: j, reason })?;
            }
        }
        Ok(QZMorphism { domain, codomain, matrix: m })
    }

    pub fn from_fg(f: &FgMorphism) -> Self {
        Self::new(QZGroup::from_fg(f.domain()), QZGroup::from_fg(f.codomain()), f.matrix().to_rational())
            .expect("well-defined integer morphism")
    }

    pub fn identity(g: &QZGroup) -> Self {
        Self::new(g.clone(), g.clone(), RatMatrix::identity(g.dim())).expect("identity is legal")
    }

    pub fn zero(domain: &QZGroup, codomain: &QZGroup) -> Self {
        QZMorphism { domain: domain.clone(), codomain: codomain.clone(), matrix: RatMatrix::zeros(codomain.dim(), domain.dim()) }
    }

    pub fn domain(&self) -> &QZGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &QZGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, x: &[BigRational]) -> QZElement {
        self.codomain.normalize(&self.matrix.mul_vec(x))
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &QZMorphism) -> Result<QZMorphism> {
        if g.codomain != self.domain {
            return Err(Error::InvalidInput(format!("cannot compose: {} is not {}", g.codomain, self.domain)));
        }
        Self::new(g.domain.clone(), self.codomain.clone(), self.matrix.mul(&g.matrix))
    }

    pub fn add(&self, other: &QZMorphism) -> Result<QZMorphism> {
        if (&self.domain, &self.codomain) != (&other.domain, &other.codomain) {
            return Err(Error::InvalidInput("cannot add morphisms between different groups".into()));
        }
        Self::new(self.domain.clone(), self.codomain.clone(), self.matrix.add(&other.matrix))
    }

    pub fn neg(&self) -> QZMorphism {
        Self::new(self.domain.clone(), self.codomain.clone(), self.matrix.neg()).expect("negation stays legal")
    }

    pub fn sub(&self, other: &QZMorphism) -> Result<QZMorphism> {
        self.add(&other.neg())
    }

    /// Some x with f(x) = y, or `None`.
    pub fn preimage(&self, y: &[BigRational]) -> Option<QZElement> {
        let (s, _) = self.domain.ambient();
        let (_, r) = self.codomain.ambient();
        let d = RatMatrix::from_cols(self.domain.dim(), &s.divisible);
        let g = RatMatrix::from_cols(self.domain.dim(), &s.lattice);
        let au = self.matrix.mul(&d);
        let aw = self.matrix.mul(&g).hstack(&RatMatrix::from_cols(self.codomain.dim(), &r.lattice));
        let (u, w) = mixed_solve(&au, &aw, y)?;
        let x = d.mul_vec(&u);
        let xg = g.mul_vec(&w[..s.lattice.len()].iter().map(|v| BigRational::from_integer(v.clone())).collect::<Vec<_>>());
        Some(self.domain.normalize(&x.iter().zip(&xg).map(|(a, b)| a + b).collect::<Vec<_>>()))
    }

    /// Some x supported on divisible coordinates with f(x) = y exactly (no reduction).
    ///
    /// Used when a whole line t·y must be lifted consistently for all rational t.
    pub fn preimage_exact(&self, y: &[BigRational]) -> Option<QZElement> {
        let idx: Vec<usize> = (0..self.domain.dim()).filter(|&k| self.domain.summand(k).is_divisible()).collect();
        let sub = self.matrix.select_cols(&idx);
        let u = sub.solve(y)?;
        let mut x = self.domain.zero_element();
        for (k, v) in idx.iter().zip(u) {
            x[*k] = v;
        }
        Some(x)
    }

    /// Generators of the image inside the codomain's coordinate space (relations included).
    pub fn image_lattice(&self) -> MixedLattice {
        let (s, _) = self.domain.ambient();
        let (_, r) = self.codomain.ambient();
        s.map(&self.matrix).sum(&r)
    }

    /// Generators of the kernel inside the domain's coordinate space (relations included).
    pub fn kernel_lattice(&self) -> MixedLattice {
        let (s, _) = self.domain.ambient();
        let (_, r) = self.codomain.ambient();
        s.preimage(&self.matrix, &r)
    }
}

impl fmt::Debug for QZMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {:?}", self.domain, self.codomain, self.matrix)
    }
}

/// Block matrix of morphisms between direct sums, rows indexed by codomain blocks.
pub fn block_morphism(domains: &[QZGroup], codomains: &[QZGroup], blocks: &[Vec<Option<&QZMorphism>>]) -> Result<QZMorphism> {
    let domain = domains.iter().fold(QZGroup::zero(), |acc, g| acc.direct_sum(g));
    let codomain = codomains.iter().fold(QZGroup::zero(), |acc, g| acc.direct_sum(g));
    let mut m = RatMatrix::zeros(codomain.dim(), domain.dim());
    let mut r0 = 0;
    for (bi, row) in blocks.iter().enumerate() {
        let mut c0 = 0;
        for (bj, block) in row.iter().enumerate() {
            if let Some(b) = block {
                if b.domain() != &domains[bj] || b.codomain() != &codomains[bi] {
                    return Err(Error::InvalidInput(format!("block ({bi}, {bj}) has the wrong shape")));
                }
                m.set_block(r0, c0, b.matrix());
            }
            c0 += domains[bj].dim();
        }
        r0 += codomains[bi].dim();
    }
    QZMorphism::new(domain, codomain, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat;

    #[test]
    fn canonical_form_sorts_and_chains_torsion() {
        let g = QZGroup::new(vec![Summand::Cyclic(2.into()), Summand::QZ, Summand::Z, Summand::Cyclic(3.into()), Summand::Q])
            .unwrap();
        assert_eq!(g.canonical(), QZGroup::from_signature(1, 1, 1, &[6.into()]).unwrap());
        assert!(!g.is_standard());
        assert!(g.canonical().is_standard());
    }

    #[test]
    fn element_normalization() {
        let g = QZGroup::new(vec![Summand::Q, Summand::QZ, Summand::Cyclic(4.into())]).unwrap();
        assert_eq!(g.normalize(&[rat(-3, 2), rat(-1, 3), rat(9, 1)]), vec![rat(-3, 2), rat(2, 3), rat(1, 1)]);
        assert!(g.element(&[rat(0, 1), rat(0, 1), rat(1, 2)]).is_err());
    }

    #[test]
    fn illegal_blocks_rejected() {
        let qz = QZGroup::circle(1);
        assert!(QZMorphism::new(qz.clone(), qz.clone(), RatMatrix::from_cols(1, &[vec![rat(1, 2)]])).is_err());
        let q = QZGroup::rationals(1);
        assert!(QZMorphism::new(qz.clone(), q.clone(), RatMatrix::from_cols(1, &[vec![rat(1, 1)]])).is_err());
        let z4 = QZGroup::from_signature(0, 0, 0, &[4.into()]).unwrap();
        assert!(QZMorphism::new(z4.clone(), qz.clone(), RatMatrix::from_cols(1, &[vec![rat(1, 3)]])).is_err());
        assert!(QZMorphism::new(z4, qz, RatMatrix::from_cols(1, &[vec![rat(5, 4)]])).is_ok());
    }

    #[test]
    fn reduction_mod_one_preimage() {
        let f = QZMorphism::new(QZGroup::rationals(1), QZGroup::circle(1), RatMatrix::identity(1)).unwrap();
        let x = f.preimage(&[rat(1, 3)]).unwrap();
        assert_eq!(f.apply(&x), vec![rat(1, 3)]);
    }
}
