#![allow(dead_code)]

use conehom::complex::{CochainComplex, CochainMap, TowerOfComplexes};
use conehom::document::{read, write, Document};
use conehom::lattice::{FgAbGroup, RatMatrix};
use conehom::limits::TowerOfGroups;
use conehom::qz::{QZGroup, QZMorphism, Summand};
use conehom::simplicial::SimplicialComplex;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::common::*;

fn random_summands(rng: &mut impl Rng) -> QZGroup {
    let n = rng.gen_range(0..=4);
    let s = (0..n)
        .map(|_| match rng.gen_range(0..5) {
            0 => Summand::Q,
            1 => Summand::QZ,
            2 => Summand::Z,
            3 => Summand::Cyclic(BigInt::from(rng.gen_range(2..=12))),
            _ => Summand::Cyclic(BigInt::from(2).pow(rng.gen_range(60..=90))),
        })
        .collect();
    QZGroup::new(s).unwrap()
}

/// Scalars on the diagonal, and rationals from Z coordinates into divisible ones.
fn random_qz_morphism(rng: &mut impl Rng) -> QZMorphism {
    let g = random_summands(rng);
    let mut m = RatMatrix::zeros(g.dim(), g.dim());
    for i in 0..g.dim() {
        m[(i, i)] = BigRational::from_integer(rng.gen_range(-3..=3).into());
        for j in 0..g.dim() {
            if g.summand(j) == &Summand::Z && g.summand(i).is_divisible() {
                m[(i, j)] = BigRational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=9).into());
            }
        }
    }
    QZMorphism::new(g.clone(), g, m).unwrap()
}

fn random_simplicial(rng: &mut impl Rng) -> SimplicialComplex {
    let n = rng.gen_range(1..=6);
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for _ in 0..rng.gen_range(1..=5) {
        let mut f: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if f.is_empty() {
            f.push(rng.gen_range(0..n));
        }
        if !facets.contains(&f) {
            facets.push(f);
        }
    }
    SimplicialComplex::new(n, facets).unwrap()
}

fn huge_group(rng: &mut impl Rng) -> FgAbGroup {
    let d = BigInt::from(3).pow(rng.gen_range(40..=60));
    FgAbGroup::new(rng.gen_range(0..=2), vec![d.clone(), d * 2]).unwrap()
}

/// serialize → parse → serialize, comparing bytes.
pub fn round_trip<T: Document>(value: &T) -> Result<(), String> {
    let first = write(value);
    let back: T = read(&first).map_err(|e| format!("re-reading failed: {e}\n{first}"))?;
    let second = write(&back);
    if first == second {
        Ok(())
    } else {
        Err(format!("bytes differ:\n{first}\n---\n{second}"))
    }
}

/// One random document of the given kind, round-tripped.
pub fn random_round_trip(rng: &mut impl Rng, kind: usize) -> Result<&'static str, String> {
    Ok(match kind % 9 {
        0 => {
            round_trip(&random_group(rng, 4, true))?;
            "group"
        }
        1 => {
            round_trip(&huge_group(rng))?;
            "group with large torsion"
        }
        2 => {
            round_trip(&random_summands(rng))?;
            "coefficient group"
        }
        3 => {
            let lo = rng.gen_range(-2..=2);
            round_trip(&random_complex(rng, 4, 4, true, lo))?;
            "complex"
        }
        4 => {
            let c: CochainComplex = random_complex(rng, 3, 3, true, 0);
            let f: CochainMap = random_self_map(rng, &c);
            round_trip(&f)?;
            "cochain map"
        }
        5 => {
            let t: TowerOfGroups = random_finite_tower(rng);
            round_trip(&t)?;
            "tower"
        }
        6 => {
            let s: TowerOfComplexes = if rng.gen_bool(0.5) { eventually_iso_system(rng) } else { surjective_system(rng) };
            round_trip(&s)?;
            "system"
        }
        7 => {
            round_trip(&random_simplicial(rng))?;
            "simplicial complex"
        }
        _ => {
            round_trip(&random_qz_morphism(rng))?;
            "morphism"
        }
    })
}
