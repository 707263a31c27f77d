use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::group::{QZElement, QZGroup, QZMorphism, Summand};
use crate::error::{Error, Result};
use crate::lattice::{smith_normal_form, FgAbGroup, FgMorphism, RatMatrix};

/// One coordinate of Hom(A, T): the matrix entry (row, col) equals
/// coordinate × scale.
#[derive(Clone, Debug, PartialEq, Eq)]
struct EntryCoord {
    row: usize,
    col: usize,
    scale: BigRational,
}

/// Hom(A, T) for a finitely generated A and a [`QZGroup`] T, itself a
/// [`QZGroup`] with one summand per admissible matrix entry.
///
/// Hom(Z, T) contributes a copy of T; Hom(Z/d, Q/Z) contributes Z/d through
/// the entries k/d; Hom(Z/d, Z/e) contributes Z/gcd(d, e) through the
/// multiples of e/gcd(d, e); the remaining blocks vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    source: FgAbGroup,
    target: QZGroup,
    group: QZGroup,
    coords: Vec<EntryCoord>,
}

impl HomSpace {
    pub fn new(source: &FgAbGroup, target: &QZGroup) -> HomSpace {
        let mut summands = Vec::new();
        let mut coords = Vec::new();
        for col in 0..source.num_gens() {
            let d = source.gen_order(col);
            for (row, t) in target.summands().iter().enumerate() {
                let found = if d.is_zero() {
                    Some((t.clone(), BigRational::one()))
                } else {
                    match t {
                        Summand::Q | Summand::Z => None,
                        Summand::QZ => Some((Summand::Cyclic(d.clone()), BigRational::new(BigInt::one(), d.clone()))),
                        Summand::Cyclic(e) => {
                            let g = d.gcd(e);
                            (!g.is_one()).then(|| (Summand::Cyclic(g.clone()), BigRational::from_integer(e / &g)))
                        }
                    }
                };
                if let Some((s, scale)) = found {
                    summands.push(s);
                    coords.push(EntryCoord { row, col, scale });
                }
            }
        }
        HomSpace {
            source: source.clone(),
            target: target.clone(),
            group: QZGroup::new(summands).expect("orders at least 2"),
            coords,
        }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &QZGroup {
        &self.target
    }

    pub fn group(&self) -> &QZGroup {
        &self.group
    }

    /// The homomorphism with the given coordinates, as a matrix (target × source).
    pub fn to_matrix(&self, x: &[BigRational]) -> RatMatrix {
        assert_eq!(x.len(), self.coords.len());
        let mut m = RatMatrix::zeros(self.target.dim(), self.source.num_gens());
        for (c, v) in self.coords.iter().zip(x) {
            m[(c.row, c.col)] = v * &c.scale;
        }
        m
    }

    /// Unreduced coordinates of a matrix; linear in the matrix.
    ///
    /// Fails when the matrix is not a homomorphism A → T.
    pub fn coords_raw(&self, m: &RatMatrix) -> Result<Vec<BigRational>> {
        assert_eq!((m.rows(), m.cols()), (self.target.dim(), self.source.num_gens()));
        let mut seen = vec![false; m.rows() * m.cols()];
        let mut out = Vec::with_capacity(self.coords.len());
        for c in &self.coords {
            seen[c.row * m.cols() + c.col] = true;
            let v = &m[(c.row, c.col)] / &c.scale;
            if matches!(self.group.summand(out.len()), Summand::Cyclic(_)) && !v.is_integer() {
                return Err(Error::NotWellDefined(format!(
                    "entry {} at ({}, {}) is not a multiple of {}",
                    m[(c.row, c.col)],
                    c.row,
                    c.col,
                    c.scale
                )));
            }
            out.push(v);
        }
        for row in 0..m.rows() {
            for col in 0..m.cols() {
                if seen[row * m.cols() + col] {
                    continue;
                }
                let x = &m[(row, col)];
                let vanishes = match self.target.summand(row) {
                    Summand::Cyclic(e) => x.is_integer() && x.to_integer().is_multiple_of(e),
                    Summand::QZ => x.is_integer(),
                    _ => x.is_zero(),
                };
                if !vanishes {
                    return Err(Error::NotWellDefined(format!("entry {x} at ({row}, {col}) must vanish")));
                }
            }
        }
        Ok(out)
    }

    /// Normalized coordinates of a homomorphism given by its matrix.
    pub fn element(&self, m: &RatMatrix) -> Result<QZElement> {
        self.group.element(&self.coords_raw(m)?)
    }

    /// The homomorphism as a morphism of structured groups A → T.
    pub fn to_morphism(&self, x: &[BigRational]) -> QZMorphism {
        QZMorphism::new(QZGroup::from_fg(&self.source), self.target.clone(), self.to_matrix(x))
            .expect("coordinates give a homomorphism")
    }

    /// Normalizes a matrix entrywise as a homomorphism A → T.
    pub fn normalize_matrix(&self, m: &RatMatrix) -> RatMatrix {
        self.to_matrix(&self.element(m).expect("matrix is a homomorphism"))
    }

    /// Builds the morphism Hom(A, T) → `dst` whose columns come from applying
    /// `f` to the matrix of each coordinate generator.
    fn linear_map<F>(&self, dst: &HomSpace, f: F) -> Result<QZMorphism>
    where
        F: Fn(&RatMatrix) -> RatMatrix,
    {
        let mut m = RatMatrix::zeros(dst.group.dim(), self.group.dim());
        for k in 0..self.group.dim() {
            let image = f(&self.to_matrix(&self.group.unit(k)));
            for (i, v) in dst.coords_raw(&image)?.into_iter().enumerate() {
                m[(i, k)] = v;
            }
        }
        QZMorphism::new(self.group.clone(), dst.group.clone(), m)
    }
}

/// Hom(A, T).
pub fn hom_into(a: &FgAbGroup, t: &QZGroup) -> HomSpace {
    HomSpace::new(a, t)
}

/// Precomposition with u: A → B, as Hom(B, T) → Hom(A, T).
pub fn induced(u: &FgMorphism, t: &QZGroup) -> Result<QZMorphism> {
    let src = HomSpace::new(u.codomain(), t);
    let dst = HomSpace::new(u.domain(), t);
    let um = u.matrix().to_rational();
    src.linear_map(&dst, |phi| phi.mul(&um))
}

/// Postcomposition with b: T → T′, as Hom(A, T) → Hom(A, T′).
pub fn postcompose(b: &QZMorphism, a: &FgAbGroup) -> Result<QZMorphism> {
    let src = HomSpace::new(a, b.domain());
    let dst = HomSpace::new(a, b.codomain());
    src.linear_map(&dst, |phi| b.matrix().mul(phi))
}

/// Extends a homomorphism K → D along an injection j: K → C, for D made of Q
/// and Q/Z summands only.
///
/// `phi` is the matrix of K → D. The extension is chosen by dividing on a
/// basis adapted to j and taking zero on the complement. Entries are not
/// reduced mod 1, so the result is linear in `phi`.
pub fn extend_to_divisible(j: &FgMorphism, phi: &RatMatrix, target: &QZGroup) -> Result<RatMatrix> {
    if !target.is_divisible() {
        return Err(Error::NotDivisibleTarget);
    }
    let c = j.codomain();
    let (nk, nc) = (j.domain().num_gens(), c.num_gens());
    assert_eq!((phi.rows(), phi.cols()), (target.dim(), nk));
    let m = j.matrix().hstack(&c.relation_matrix());
    let snf = smith_normal_form(&m);
    let psi = phi.hstack(&RatMatrix::zeros(target.dim(), c.relation_matrix().cols()));
    let psi_v = psi.mul(&snf.v.to_rational());
    let rank = snf.rank();
    let mut w = RatMatrix::zeros(target.dim(), nc);
    for i in 0..m.cols() {
        let col = psi_v.col(i);
        if i < rank {
            let dk = BigRational::from_integer(snf.invariant_factors[i].clone());
            for (r, v) in col.iter().enumerate() {
                w[(r, i)] = v / &dk;
            }
        } else {
            let vanishes = col.iter().zip(target.summands()).all(|(v, s)| match s {
                Summand::Q => v.is_zero(),
                _ => v.is_integer(),
            });
            if !vanishes {
                return Err(Error::NotWellDefined(
                    "map does not vanish on the relations of its domain, or the inclusion is not injective".into(),
                ));
            }
        }
    }
    Ok(w.mul(&snf.u.to_rational()))
}
