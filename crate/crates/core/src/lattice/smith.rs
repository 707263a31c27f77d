use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal.
///
/// The inverses of `u` and `v` are tracked alongside so callers never have to
/// invert an integer matrix themselves.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// Nonzero diagonal entries d_1 | d_2 | ... | d_rank, all positive.
    pub invariant_factors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Diagonal entry `i`, zero past the rank.
    pub fn diag(&self, i: usize) -> BigInt {
        self.invariant_factors.get(i).cloned().unwrap_or_else(BigInt::zero)
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// row[t] += k row[s]
    fn add_row(&mut self, t: usize, s: usize, k: &BigInt) {
        self.a.add_row_multiple(t, s, k);
        self.u.add_row_multiple(t, s, k);
        self.u_inv.add_col_multiple(s, t, &-k);
    }

    /// col[t] += k col[s]
    fn add_col(&mut self, t: usize, s: usize, k: &BigInt) {
        self.a.add_col_multiple(t, s, k);
        self.v.add_col_multiple(t, s, k);
        self.v_inv.add_row_multiple(s, t, &-k);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Smallest |entry| in the lower-right block starting at (t, t); ties go to
    /// the lowest (row, col).
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[(bi, bj)].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }
}

/// Smith normal form with the smallest-absolute-value pivot rule.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = Reducer {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
        v_inv: IntMatrix::identity(cols),
    };
    let mut factors = Vec::new();
    for t in 0..rows.min(cols) {
        let Some(_) = r.pivot(t) else { break };
        loop {
            let (pi, pj) = r.pivot(t).expect("nonzero block keeps a pivot");
            r.swap_rows(t, pi);
            r.swap_cols(t, pj);
            let p = r.a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if !r.a[(i, t)].is_zero() {
                    let q = r.a[(i, t)].div_floor(&p);
                    r.add_row(i, t, &-q);
                    clean &= r.a[(i, t)].is_zero();
                }
            }
            for j in t + 1..cols {
                if !r.a[(t, j)].is_zero() {
                    let q = r.a[(t, j)].div_floor(&p);
                    r.add_col(j, t, &-q);
                    clean &= r.a[(t, j)].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // Row t and column t are clear; enforce divisibility of the rest.
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !r.a[(i, j)].mod_floor(&p).is_zero()));
            match offender {
                Some(i) => r.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if r.a[(t, t)].is_negative() {
            r.negate_row(t);
        }
        factors.push(r.a[(t, t)].clone());
    }
    SmithDecomposition { u: r.u, u_inv: r.u_inv, d: r.a, v: r.v, v_inv: r.v_inv, invariant_factors: factors }
}

/// Basis of the integer kernel {x in Z^cols : m x = 0}, as columns.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = smith_normal_form(m);
    (s.rank()..m.cols()).map(|j| s.v.col(j)).collect()
}

/// Some integer x with m x = b, or `None`.
pub fn integer_solve(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    integer_solve_with(&smith_normal_form(m), m.cols(), b)
}

/// Integer solve reusing a precomputed decomposition of a matrix with `cols` columns.
pub fn integer_solve_with(s: &SmithDecomposition, cols: usize, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let z = s.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); cols];
    for (i, zi) in z.iter().enumerate() {
        if i < s.rank() {
            let (q, r) = zi.div_mod_floor(&s.invariant_factors[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !zi.is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&y))
}

/// A basis (as columns) of the subgroup of Z^rows spanned by the columns of `m`.
pub fn column_lattice_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = smith_normal_form(m);
    (0..s.rank())
        .map(|i| s.u_inv.col(i).iter().map(|x| x * &s.invariant_factors[i]).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::matrix::int;

    fn check(m: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(m.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.cols()));
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        for w in s.invariant_factors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        s
    }

    #[test]
    fn zero_matrix() {
        let s = check(&IntMatrix::zeros(1, 1));
        assert_eq!(s.d, IntMatrix::zeros(1, 1));
        assert_eq!(s.u, IntMatrix::identity(1));
        assert_eq!(s.v, IntMatrix::identity(1));
    }

    #[test]
    fn two_by_two() {
        // gcd of entries is 2 and |det| = 8, so the factors are 2 and 4.
        let s = check(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.invariant_factors, vec![int(2), int(4)]);
    }

    #[test]
    fn identity() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
    }

    #[test]
    fn rectangular_and_rank_deficient() {
        let s = check(&IntMatrix::from_rows(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]));
        assert_eq!(s.invariant_factors, vec![int(1), int(3)]);
        let s = check(&IntMatrix::from_rows(&[vec![6, 10, 15]]));
        assert_eq!(s.invariant_factors, vec![int(1)]);
    }

    #[test]
    fn kernel_and_solve() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 6]]);
        let k = integer_kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        assert!(integer_solve(&m, &[int(3)]).is_none());
        let x = integer_solve(&m, &[int(8)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![int(8)]);
    }

    #[test]
    fn lattice_basis() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![0, 0]]);
        let b = column_lattice_basis(&m);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0][1], int(0));
        assert_eq!(b[0][0].abs(), int(2));
    }
}
