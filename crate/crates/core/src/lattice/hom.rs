use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::group::{cokernel, direct_sum_all, FgAbGroup, FgMorphism, Subquotient};
use super::matrix::IntMatrix;

/// Hom(A, B) as a finitely generated group, with a morphism for each canonical generator.
#[derive(Clone, Debug)]
pub struct HomGroup {
    pub source: FgAbGroup,
    pub target: FgAbGroup,
    pub group: FgAbGroup,
    pub basis: Vec<FgMorphism>,
    sq: Subquotient,
}

impl HomGroup {
    /// Coordinates of a morphism A → B in the canonical form of Hom(A, B).
    pub fn coords_of(&self, f: &FgMorphism) -> Vec<BigInt> {
        assert_eq!((f.domain(), f.codomain()), (&self.source, &self.target));
        self.sq.to_canonical(&flatten(f.matrix())).expect("every homomorphism lies in the entry lattice")
    }

    pub fn morphism_of(&self, coords: &[BigInt]) -> FgMorphism {
        let v = self.sq.lift.mul_vec(coords);
        FgMorphism::new_unchecked(self.source.clone(), self.target.clone(), unflatten(&v, self.target.num_gens()))
    }
}

// Entries are indexed column-major: coordinate (i, j) lives at j * rows + i.
fn flatten(m: &IntMatrix) -> Vec<BigInt> {
    (0..m.cols()).flat_map(|j| m.col(j)).collect()
}

fn unflatten(v: &[BigInt], rows: usize) -> IntMatrix {
    let cols = if rows == 0 { 0 } else { v.len() / rows };
    let mut m = IntMatrix::zeros(rows, cols);
    for j in 0..cols {
        for i in 0..rows {
            m[(i, j)] = v[j * rows + i].clone();
        }
    }
    m
}

/// Hom(A, B) computed on the lattice of admissible matrix entries.
pub fn hom_group(a: &FgAbGroup, b: &FgAbGroup) -> HomGroup {
    let (na, nb) = (a.num_gens(), b.num_gens());
    let n = na * nb;
    let unit = |i: usize, j: usize, k: BigInt| {
        let mut v = vec![BigInt::zero(); n];
        v[j * nb + i] = k;
        v
    };
    let mut gens = Vec::new();
    let mut rels = Vec::new();
    for j in 0..na {
        let d = a.gen_order(j);
        for i in 0..nb {
            let e = b.gen_order(i);
            if d.is_zero() {
                gens.push(unit(i, j, BigInt::from(1)));
            } else if !e.is_zero() {
                gens.push(unit(i, j, &e / d.gcd(&e)));
            }
            if !e.is_zero() {
                rels.push(unit(i, j, e));
            }
        }
    }
    let sq = Subquotient::new(&IntMatrix::from_cols(n, &gens), &IntMatrix::from_cols(n, &rels));
    let basis = (0..sq.group.num_gens())
        .map(|k| FgMorphism::new_unchecked(a.clone(), b.clone(), unflatten(&sq.lift.col(k), nb)))
        .collect();
    HomGroup { source: a.clone(), target: b.clone(), group: sq.group.clone(), basis, sq }
}

/// Ext(A, B) from the closed form Ext(Z/d, B) = B / dB, additive in A.
pub fn ext_group(a: &FgAbGroup, b: &FgAbGroup) -> FgAbGroup {
    let parts: Vec<FgAbGroup> =
        a.torsion().iter().map(|d| cokernel(&FgMorphism::scalar(b, d.clone())).group).collect();
    direct_sum_all(&parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::matrix::int;

    #[test]
    fn hom_from_z_is_target() {
        let a = FgAbGroup::new(1, vec![int(3)]).unwrap();
        assert_eq!(hom_group(&FgAbGroup::free(1), &a).group, a);
    }

    #[test]
    fn hom_between_cyclics() {
        assert_eq!(hom_group(&FgAbGroup::cyclic(6), &FgAbGroup::cyclic(4)).group, FgAbGroup::cyclic(2));
        assert!(hom_group(&FgAbGroup::cyclic(6), &FgAbGroup::free(1)).group.is_zero());
    }

    #[test]
    fn hom_basis_round_trip() {
        let a = FgAbGroup::new(1, vec![int(2), int(4)]).unwrap();
        let b = FgAbGroup::new(1, vec![int(6)]).unwrap();
        let h = hom_group(&a, &b);
        for (k, f) in h.basis.iter().enumerate() {
            let mut e = h.group.zero_element();
            e[k] = int(1);
            assert_eq!(h.coords_of(f), e);
            assert_eq!(&h.morphism_of(&e), f);
        }
    }

    #[test]
    fn ext_closed_forms() {
        assert!(ext_group(&FgAbGroup::free(1), &FgAbGroup::cyclic(8)).is_zero());
        assert_eq!(ext_group(&FgAbGroup::cyclic(6), &FgAbGroup::free(1)), FgAbGroup::cyclic(6));
        assert_eq!(ext_group(&FgAbGroup::cyclic(4), &FgAbGroup::cyclic(6)), FgAbGroup::cyclic(2));
    }
}
