use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::lattice::{integer_kernel, integer_solve, IntMatrix, RatMatrix};

/// A subgroup of Q^n of the form span_Q(divisible) + span_Z(lattice).
///
/// Every subgroup that occurs while presenting Q/Z-valued Hom groups has this
/// shape, and the class is closed under sums, images and preimages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedLattice {
    pub dim: usize,
    pub divisible: Vec<Vec<BigRational>>,
    pub lattice: Vec<Vec<BigRational>>,
}

impl MixedLattice {
    pub fn zero(dim: usize) -> Self {
        MixedLattice { dim, divisible: vec![], lattice: vec![] }
    }

    pub fn divisible_matrix(&self) -> RatMatrix {
        RatMatrix::from_cols(self.dim, &self.divisible)
    }

    pub fn lattice_matrix(&self) -> RatMatrix {
        RatMatrix::from_cols(self.dim, &self.lattice)
    }

    pub fn sum(&self, other: &MixedLattice) -> MixedLattice {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        out.divisible.extend(other.divisible.iter().cloned());
        out.lattice.extend(other.lattice.iter().cloned());
        out
    }

    /// Image under a linear map (rows = target dimension).
    pub fn map(&self, f: &RatMatrix) -> MixedLattice {
        assert_eq!(f.cols(), self.dim);
        MixedLattice {
            dim: f.rows(),
            divisible: self.divisible.iter().map(|v| f.mul_vec(v)).collect(),
            lattice: self.lattice.iter().map(|v| f.mul_vec(v)).collect(),
        }
    }

    /// {x ∈ self : f x ∈ target}.
    pub fn preimage(&self, f: &RatMatrix, target: &MixedLattice) -> MixedLattice {
        let (nd, ng) = (self.divisible.len(), self.lattice.len());
        let ds = self.divisible_matrix();
        let gs = self.lattice_matrix();
        let au = f.mul(&ds).hstack(&target.divisible_matrix().neg());
        let aw = f.mul(&gs).hstack(&target.lattice_matrix().neg());
        let (div, lat) = mixed_kernel(&au, &aw);
        let nu = au.cols();
        let point = |v: &[BigRational]| {
            let a = &v[..nd];
            let b = &v[nu..nu + ng];
            let x = ds.mul_vec(a);
            let y = gs.mul_vec(b);
            x.iter().zip(&y).map(|(p, q)| p + q).collect::<Vec<_>>()
        };
        MixedLattice {
            dim: self.dim,
            divisible: div.iter().map(|v| point(v)).filter(|v| !is_zero_vec(v)).collect(),
            lattice: lat.iter().map(|v| point(v)).filter(|v| !is_zero_vec(v)).collect(),
        }
    }

    pub fn contains(&self, x: &[BigRational]) -> bool {
        mixed_solve(&self.divisible_matrix(), &self.lattice_matrix(), x).is_some()
    }

    /// Whether the whole line Q·x lies in the subgroup.
    pub fn contains_line(&self, x: &[BigRational]) -> bool {
        is_zero_vec(x) || self.divisible_matrix().solve(x).is_some()
    }

    /// Containment of subgroups.
    pub fn contains_all(&self, other: &MixedLattice) -> bool {
        assert_eq!(self.dim, other.dim);
        let d = self.divisible_matrix();
        let g = self.lattice_matrix();
        other.divisible.iter().all(|x| self.contains_line(x))
            && other.lattice.iter().all(|x| mixed_solve(&d, &g, x).is_some())
    }

    pub fn same_subgroup(&self, other: &MixedLattice) -> bool {
        self.contains_all(other) && other.contains_all(self)
    }
}

pub(crate) fn is_zero_vec(v: &[BigRational]) -> bool {
    v.iter().all(Zero::is_zero)
}

fn row_scaled_integer(b: &RatMatrix) -> (IntMatrix, Vec<BigRational>) {
    let mut scales = Vec::with_capacity(b.rows());
    let mut rows = Vec::with_capacity(b.rows());
    for i in 0..b.rows() {
        let row = RatMatrix::from_rows(b.cols(), &[b.row(i)]);
        let l = BigRational::from_integer(row.common_denominator());
        rows.push(row.scale(&l).to_integer().expect("scaled by common denominator").row(0));
        scales.push(l);
    }
    let m = if rows.is_empty() { IntMatrix::zeros(0, b.cols()) } else { IntMatrix::from_rows(&rows) };
    (m, scales)
}

/// Left annihilator of `au` as a matrix; the identity when `au` has no columns.
fn annihilator(au: &RatMatrix) -> RatMatrix {
    let rows = au.left_nullspace();
    RatMatrix::from_rows(au.rows(), &rows)
}

/// Solutions (u, w) ∈ Q^r × Z^z of au·u + aw·w = 0.
///
/// Returns generators of the divisible part (w = 0) and of a lattice
/// complement, each as a vector of length r + z.
pub fn mixed_kernel(au: &RatMatrix, aw: &RatMatrix) -> (Vec<Vec<BigRational>>, Vec<Vec<BigRational>>) {
    assert_eq!(au.rows(), aw.rows());
    let (r, z) = (au.cols(), aw.cols());
    let divisible: Vec<Vec<BigRational>> = au
        .nullspace()
        .into_iter()
        .map(|mut u| {
            u.extend(std::iter::repeat(BigRational::zero()).take(z));
            u
        })
        .collect();
    let p = annihilator(au);
    let (bi, _) = row_scaled_integer(&p.mul(aw));
    let lattice = integer_kernel(&bi)
        .into_iter()
        .map(|w| {
            let wq: Vec<BigRational> = w.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            let rhs: Vec<BigRational> = aw.mul_vec(&wq).into_iter().map(|x| -x).collect();
            let mut u = if r == 0 { vec![] } else { au.solve(&rhs).expect("annihilated vectors lie in the column space") };
            u.extend(wq);
            u
        })
        .collect();
    (divisible, lattice)
}

/// Some (u, w) ∈ Q^r × Z^z with au·u + aw·w = x.
pub fn mixed_solve(au: &RatMatrix, aw: &RatMatrix, x: &[BigRational]) -> Option<(Vec<BigRational>, Vec<BigInt>)> {
    assert_eq!(au.rows(), x.len());
    let p = annihilator(au);
    let (bi, scales) = row_scaled_integer(&p.mul(aw));
    let c = p.mul_vec(x);
    let mut rhs = Vec::with_capacity(c.len());
    for (ci, l) in c.iter().zip(&scales) {
        let v = ci * l;
        if !v.is_integer() {
            return None;
        }
        rhs.push(v.to_integer());
    }
    let w = if aw.cols() == 0 {
        if rhs.iter().any(|v| !v.is_zero()) {
            return None;
        }
        vec![]
    } else {
        integer_solve(&bi, &rhs)?
    };
    let wq: Vec<BigRational> = w.iter().map(|v| BigRational::from_integer(v.clone())).collect();
    let rest: Vec<BigRational> = x.iter().zip(aw.mul_vec(&wq)).map(|(a, b)| a - b).collect();
    let u = if au.cols() == 0 {
        if !is_zero_vec(&rest) {
            return None;
        }
        vec![]
    } else {
        au.solve(&rest)?
    };
    Some((u, w))
}

pub(crate) fn unit_vec(n: usize, k: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); n];
    v[k] = BigRational::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::rat;

    #[test]
    fn kernel_of_reduction_mod_one() {
        // u ∈ Q, w ∈ Z with u - w = 0: the solutions are the integers.
        let au = RatMatrix::from_cols(1, &[vec![rat(1, 1)]]);
        let aw = RatMatrix::from_cols(1, &[vec![rat(-1, 1)]]);
        let (div, lat) = mixed_kernel(&au, &aw);
        assert!(div.is_empty());
        assert_eq!(lat.len(), 1);
        assert_eq!(lat[0][0], lat[0][1]);
    }

    #[test]
    fn solve_with_fractional_lattice() {
        // w ∈ Z with w/2 = 3/2
        let au = RatMatrix::zeros(1, 0);
        let aw = RatMatrix::from_cols(1, &[vec![rat(1, 2)]]);
        assert_eq!(mixed_solve(&au, &aw, &[rat(3, 2)]).unwrap().1, vec![BigInt::from(3)]);
        assert!(mixed_solve(&au, &aw, &[rat(1, 3)]).is_none());
    }

    #[test]
    fn subgroup_comparison() {
        let a = MixedLattice { dim: 1, divisible: vec![], lattice: vec![vec![rat(2, 1)], vec![rat(3, 1)]] };
        let b = MixedLattice { dim: 1, divisible: vec![], lattice: vec![vec![rat(1, 1)]] };
        assert!(a.same_subgroup(&b));
        let c = MixedLattice { dim: 1, divisible: vec![vec![rat(1, 1)]], lattice: vec![] };
        assert!(c.contains_all(&a));
        assert!(!a.contains_all(&c));
    }
}
