#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use conehom::complex::{CochainComplex, CochainMap, TowerOfComplexes};
use conehom::limits::TowerOfGroups;
use conehom::lattice::{cokernel, image, solve_preimage, FgAbGroup, FgMorphism, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const FACTORS: [i64; 6] = [2, 3, 4, 6, 8, 12];

/// A random group with at most `max_gens` generators; torsion factors from
/// {2, 3, 4, 6, 8, 12} forming a divisibility chain.
pub fn random_group(rng: &mut impl Rng, max_gens: usize, torsion: bool) -> FgAbGroup {
    let total = rng.gen_range(0..=max_gens);
    let t = if torsion { rng.gen_range(0..=total.min(2)) } else { 0 };
    let mut chain: Vec<BigInt> = Vec::new();
    for _ in 0..t {
        let options: Vec<i64> = FACTORS
            .iter()
            .copied()
            .filter(|f| chain.last().map_or(true, |d| BigInt::from(*f).is_multiple_of(d)))
            .collect();
        if options.is_empty() {
            break;
        }
        chain.push(BigInt::from(options[rng.gen_range(0..options.len())]));
    }
    FgAbGroup::new(total - chain.len(), chain).unwrap()
}

/// A random homomorphism with small entries, legal on every block.
pub fn random_hom(rng: &mut impl Rng, a: &FgAbGroup, b: &FgAbGroup, bound: i64) -> FgMorphism {
    let mut m = IntMatrix::zeros(b.num_gens(), a.num_gens());
    for j in 0..a.num_gens() {
        let d = a.gen_order(j);
        for i in 0..b.num_gens() {
            let e = b.gen_order(i);
            let x = BigInt::from(rng.gen_range(-bound..=bound));
            m[(i, j)] = match (d.is_zero(), e.is_zero()) {
                (true, _) => x,
                (false, true) => BigInt::zero(),
                (false, false) => x * (&e / d.gcd(&e)),
            };
        }
    }
    FgMorphism::new(a.clone(), b.clone(), m).unwrap()
}

/// A random complex of length at most `max_len` starting in degree `lo`.
/// Each differential factors through the cokernel of the previous one, so
/// δ ∘ δ = 0 by construction. Entries stay within 9 in absolute value.
pub fn random_complex(rng: &mut impl Rng, max_len: usize, max_gens: usize, torsion: bool, lo: i32) -> CochainComplex {
    let len = rng.gen_range(1..=max_len);
    let groups: Vec<FgAbGroup> = (0..len).map(|_| random_group(rng, max_gens, torsion)).collect();
    let mut diffs: Vec<FgMorphism> = Vec::new();
    for k in 0..len.saturating_sub(1) {
        let d = loop {
            let q = match diffs.last() {
                Some(prev) => cokernel(prev).projection,
                None => FgMorphism::identity(&groups[k]),
            };
            let n = random_hom(rng, q.codomain(), &groups[k + 1], 2);
            let d = n.compose(&q).unwrap();
            if d.matrix().entries().iter().all(|x| x.abs() <= BigInt::from(9)) {
                break d;
            }
        };
        diffs.push(d);
    }
    CochainComplex::new(lo, groups, diffs).unwrap()
}

/// The coefficient groups Z, Z/2, Z/6, Z ⊕ Z/4 and Z².
pub fn coefficient_groups() -> Vec<FgAbGroup> {
    vec![
        FgAbGroup::free(1),
        FgAbGroup::cyclic(2),
        FgAbGroup::cyclic(6),
        FgAbGroup::new(1, vec![BigInt::from(4)]).unwrap(),
        FgAbGroup::free(2),
    ]
}

/// A random self-map of a complex: k·id plus δs + sδ for a random s.
pub fn random_self_map(rng: &mut impl Rng, c: &CochainComplex) -> CochainMap {
    let k = rng.gen_range(-2..=2i64);
    let s: Vec<FgMorphism> = (c.lo()..=c.hi() + 1).map(|n| random_hom(rng, &c.group(n), &c.group(n - 1), 1)).collect();
    let s_at = |n: i32| -> FgMorphism {
        let idx = n - c.lo();
        if idx >= 0 && (idx as usize) < s.len() {
            s[idx as usize].clone()
        } else {
            FgMorphism::zero(&c.group(n), &c.group(n - 1))
        }
    };
    let comps: Vec<FgMorphism> = c
        .degrees()
        .map(|n| {
            let g = c.group(n);
            let a = c.differential(n - 1).compose(&s_at(n)).unwrap();
            let b = s_at(n + 1).compose(&c.differential(n)).unwrap();
            FgMorphism::scalar(&g, k).add(&a).add(&b)
        })
        .collect();
    CochainMap::new(c.clone(), c.clone(), c.lo(), comps).unwrap()
}

/// A finite group (no free part) from the same factor pool.
pub fn random_finite_group(rng: &mut impl Rng, max_gens: usize) -> FgAbGroup {
    loop {
        let g = random_group(rng, max_gens, true);
        if g.is_finite() {
            return g;
        }
    }
}

/// The image of a self-map as a complex, with the corestriction onto it.
pub fn image_complex(f: &CochainMap) -> (CochainComplex, CochainMap) {
    let c = f.source();
    let images: Vec<_> = c.degrees().map(|n| image(&f.component(n))).collect();
    let groups: Vec<FgAbGroup> = images.iter().map(|i| i.group.clone()).collect();
    let diffs: Vec<FgMorphism> = (0..images.len().saturating_sub(1))
        .map(|k| {
            let n = c.lo() + k as i32;
            let (src, dst) = (&images[k], &images[k + 1]);
            let cols: Vec<Vec<BigInt>> = (0..src.group.num_gens())
                .map(|j| {
                    let mut e = src.group.zero_element();
                    e[j] = BigInt::from(1);
                    let y = c.differential(n).apply(&src.inclusion.apply(&e));
                    solve_preimage(&dst.inclusion, &y).unwrap()
                })
                .collect();
            FgMorphism::new(src.group.clone(), dst.group.clone(), IntMatrix::from_cols(dst.group.num_gens(), &cols)).unwrap()
        })
        .collect();
    let im = CochainComplex::new(c.lo(), groups, diffs).unwrap();
    let factor = CochainMap::new(c.clone(), im.clone(), c.lo(), images.iter().map(|i| i.factor.clone()).collect()).unwrap();
    (im, factor)
}

fn sign_map(rng: &mut impl Rng, c: &CochainComplex) -> CochainMap {
    let k = if rng.gen_bool(0.5) { 1 } else { -1 };
    let comps = c.degrees().map(|n| FgMorphism::scalar(&c.group(n), k)).collect();
    CochainMap::new(c.clone(), c.clone(), c.lo(), comps).unwrap()
}

/// C → im f → im g → …, every bond onto, ending in ± the identity.
pub fn surjective_system(rng: &mut impl Rng) -> TowerOfComplexes {
    let mut levels = vec![random_complex(rng, 3, 3, true, 0)];
    let mut bonds = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let c = levels.last().unwrap().clone();
        let (im, factor) = image_complex(&random_self_map(rng, &c));
        levels.push(im);
        bonds.push(factor);
    }
    let tail = levels.pop().unwrap();
    let s = sign_map(rng, &tail);
    TowerOfComplexes::new(levels, bonds, Some((tail, s))).unwrap()
}

/// Arbitrary self-maps in a prefix, then ± the identity.
pub fn eventually_iso_system(rng: &mut impl Rng) -> TowerOfComplexes {
    let c = random_complex(rng, 3, 3, true, 0);
    let len = rng.gen_range(0..=2);
    let bonds = (0..len).map(|_| random_self_map(rng, &c)).collect();
    let s = sign_map(rng, &c);
    TowerOfComplexes::new(vec![c.clone(); len], bonds, Some((c, s))).unwrap()
}

/// A periodic system whose self-map fails to be invertible somewhere.
pub fn non_stabilizing_system(rng: &mut impl Rng) -> TowerOfComplexes {
    loop {
        let c = random_complex(rng, 3, 3, true, 0);
        let f = random_self_map(rng, &c);
        if f.non_iso_degree().is_some() {
            return TowerOfComplexes::periodic(&c, &f).unwrap();
        }
    }
}

pub fn random_finite_tower(rng: &mut impl Rng) -> TowerOfGroups {
    let len = rng.gen_range(0..=2);
    let prefix: Vec<FgAbGroup> = (0..len).map(|_| random_finite_group(rng, 3)).collect();
    let tail = random_finite_group(rng, 3);
    let bonds = (0..len)
        .map(|k| {
            let next = if k + 1 < len { &prefix[k + 1] } else { &tail };
            random_hom(rng, next, &prefix[k], 3)
        })
        .collect();
    let m = random_hom(rng, &tail, &tail, 3);
    TowerOfGroups::new(prefix, bonds, Some((tail.clone(), m))).unwrap()
}

pub fn element_order(g: &FgAbGroup, x: &[BigInt]) -> BigInt {
    g.torsion().iter().zip(x).fold(BigInt::one(), |acc, (d, v)| acc.lcm(&(d / d.gcd(v))))
}

pub fn order_statistics<'a>(g: &FgAbGroup, xs: impl IntoIterator<Item = &'a Vec<BigInt>>) -> BTreeMap<BigInt, usize> {
    let mut stats = BTreeMap::new();
    for x in xs {
        *stats.entry(element_order(g, x)).or_insert(0) += 1;
    }
    stats
}

pub fn apply_set(f: &FgMorphism, xs: &BTreeSet<Vec<BigInt>>) -> BTreeSet<Vec<BigInt>> {
    xs.iter().map(|x| f.codomain().normalize(&f.apply(x))).collect()
}

/// Compatible threads through a finite tower, by enumeration: the stable
/// image in the tail (where the tail map is a bijection) together with its
/// image in level 0.
pub fn enumerated_limit(t: &TowerOfGroups) -> (BTreeMap<BigInt, usize>, BTreeSet<Vec<BigInt>>, usize) {
    let (a, m) = t.tail.clone().unwrap();
    let mut stable: BTreeSet<Vec<BigInt>> = a.elements().unwrap().into_iter().collect();
    let mut steps = 0;
    loop {
        let next = apply_set(&m, &stable);
        if next.len() == stable.len() {
            break;
        }
        stable = next;
        steps += 1;
    }
    let mut down = stable.clone();
    for k in (0..t.seam()).rev() {
        down = apply_set(&t.bond(k), &down);
    }
    (order_statistics(&a, &stable), down, steps)
}
