use num_rational::BigRational;
use num_traits::{One, Zero};

use super::group::{QZElement, QZGroup, QZMorphism, Summand};
use super::lattice::{is_zero_vec, mixed_kernel, mixed_solve, unit_vec, MixedLattice};
use crate::error::{Error, Result};
use crate::lattice::{column_lattice_basis, smith_normal_form, IntMatrix, RatMatrix};

/// A subquotient S / R of Q^n (S, R mixed lattices, R ⊆ S) brought into
/// standard form Q^a ⊕ (Q/Z)^b ⊕ Z^c ⊕ Z/d₁ ⊕ … with d₁ | d₂ | ….
///
/// Elements of S are parametrized by P = Q^d ⊕ Z^g through the generators of
/// S; `to_std` is a linear map P → standard coordinates and `lift` a linear
/// map from standard coordinates back to Q^n.
#[derive(Clone, Debug)]
pub struct QZPresentation {
    group: QZGroup,
    gens: MixedLattice,
    rels: MixedLattice,
    to_std: RatMatrix,
    lift: RatMatrix,
}

impl QZPresentation {
    pub fn new(gens: &MixedLattice, rels: &MixedLattice) -> QZPresentation {
        assert_eq!(gens.dim, rels.dim);
        let n = gens.dim;
        let (d, g) = (gens.divisible.len(), gens.lattice.len());
        let dmat = gens.divisible_matrix();
        let gmat = gens.lattice_matrix();

        // Relations among the generators: π^{-1}(R) inside P.
        let au = dmat.hstack(&rels.divisible_matrix().neg());
        let aw = gmat.hstack(&rels.lattice_matrix().neg());
        let (rel_div, rel_lat) = mixed_kernel(&au, &aw);
        let nu = au.cols();

        // Divide the Q-part by the divisible relations.
        let w_rows: Vec<Vec<BigRational>> =
            rel_div.iter().map(|v| v[..d].to_vec()).filter(|v| !is_zero_vec(v)).collect();
        let ech = RatMatrix::from_rows(d, &w_rows).echelon();
        let pivots = ech.pivots.clone();
        let nonpivots: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
        let dq = nonpivots.len();
        let mut proj = RatMatrix::zeros(dq, d);
        let mut sect = RatMatrix::zeros(d, dq);
        for (t, &c) in nonpivots.iter().enumerate() {
            proj[(t, c)] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                proj[(t, p)] = -ech.matrix[(r, c)].clone();
            }
            sect[(c, t)] = BigRational::one();
        }

        // Lattice relations (a, b) with a projected; Smith form on the Z-parts.
        let h = rel_lat.len();
        let mut umat = RatMatrix::zeros(dq, h);
        let mut wmat = IntMatrix::zeros(g, h);
        for (k, v) in rel_lat.iter().enumerate() {
            let a = proj.mul_vec(&v[..d]);
            for (i, x) in a.into_iter().enumerate() {
                umat[(i, k)] = x;
            }
            for i in 0..g {
                let x = &v[nu + i];
                debug_assert!(x.is_integer());
                wmat[(i, k)] = x.to_integer();
            }
        }
        let snf = smith_normal_form(&wmat);
        let rank = snf.rank();
        let u_shift = umat.mul(&snf.v.to_rational());
        let mut shear = RatMatrix::zeros(dq, g);
        for k in 0..rank {
            let dk = BigRational::from_integer(snf.invariant_factors[k].clone());
            for i in 0..dq {
                shear[(i, k)] = &u_shift[(i, k)] / &dk;
            }
        }

        // Remaining relations live in the Q-part only: a lattice L ⊆ Q^dq.
        let rest: Vec<Vec<BigRational>> = (rank..h).map(|k| u_shift.col(k)).filter(|v| !is_zero_vec(v)).collect();
        let basis = rational_lattice_basis(dq, &rest);
        let w = basis.len();
        let mut full = basis.clone();
        for i in 0..dq {
            if full.len() == dq {
                break;
            }
            let mut trial = full.clone();
            trial.push(unit_vec(dq, i));
            if RatMatrix::from_cols(dq, &trial).rank() == trial.len() {
                full = trial;
            }
        }
        let bfull = RatMatrix::from_cols(dq, &full);
        let binv = bfull.inverse().expect("completed basis is invertible");

        // Standard coordinates: Q from y[w..], Q/Z from y[..w], then Z and torsion from z' = U_w b.
        let mut summands = vec![Summand::Q; dq - w];
        summands.extend(std::iter::repeat(Summand::QZ).take(w));
        let mut z_rows: Vec<(usize, Summand)> = Vec::new();
        for k in rank..g {
            z_rows.push((k, Summand::Z));
        }
        for k in 0..rank {
            let dk = &snf.invariant_factors[k];
            if !dk.is_one() {
                z_rows.push((k, Summand::Cyclic(dk.clone())));
            }
        }
        z_rows.sort_by_key(|(k, s)| (matches!(s, Summand::Cyclic(_)), *k));
        summands.extend(z_rows.iter().map(|(_, s)| s.clone()));
        let group = QZGroup::new(summands).expect("cyclic orders at least 2");

        let uw = snf.u.to_rational();
        let y_a = binv.mul(&proj);
        let y_b = binv.mul(&shear).mul(&uw).neg();
        let y_rows: Vec<usize> = (w..dq).chain(0..w).collect();
        let nstd = group.dim();
        let mut to_std = RatMatrix::zeros(nstd, d + g);
        for (t, &yr) in y_rows.iter().enumerate() {
            for c in 0..d {
                to_std[(t, c)] = y_a[(yr, c)].clone();
            }
            for c in 0..g {
                to_std[(t, d + c)] = y_b[(yr, c)].clone();
            }
        }
        for (t, (k, _)) in z_rows.iter().enumerate() {
            for c in 0..g {
                to_std[(dq + t, d + c)] = uw[(*k, c)].clone();
            }
        }

        // Inverse direction: standard coordinates → P → Q^n.
        let uw_inv = snf.u_inv.to_rational();
        let mut lift_p = RatMatrix::zeros(d + g, nstd);
        for t in 0..nstd {
            let mut y = vec![BigRational::zero(); dq];
            let mut zp = vec![BigRational::zero(); g];
            if t < dq {
                y[y_rows[t]] = BigRational::one();
            } else {
                zp[z_rows[t - dq].0] = BigRational::one();
            }
            let q2 = bfull.mul_vec(&y);
            let sz = shear.mul_vec(&zp);
            let q: Vec<BigRational> = q2.iter().zip(&sz).map(|(a, b)| a + b).collect();
            let a = sect.mul_vec(&q);
            let b = uw_inv.mul_vec(&zp);
            for (i, x) in a.into_iter().chain(b).enumerate() {
                lift_p[(i, t)] = x;
            }
        }
        let lift = dmat.hstack(&gmat).mul(&lift_p);
        debug_assert_eq!(lift.rows(), n);
        QZPresentation { group, gens: gens.clone(), rels: rels.clone(), to_std, lift }
    }

    pub fn group(&self) -> &QZGroup {
        &self.group
    }

    pub fn generators(&self) -> &MixedLattice {
        &self.gens
    }

    pub fn relations(&self) -> &MixedLattice {
        &self.rels
    }

    /// Ambient representatives of the standard generators (n × dim).
    pub fn lift_matrix(&self) -> &RatMatrix {
        &self.lift
    }

    /// Ambient representative of a standard element.
    pub fn lift(&self, x: &[BigRational]) -> Vec<BigRational> {
        self.lift.mul_vec(x)
    }

    /// Standard coordinates of an ambient vector of S.
    pub fn coords(&self, x: &[BigRational]) -> Result<QZElement> {
        let (u, w) = mixed_solve(&self.gens.divisible_matrix(), &self.gens.lattice_matrix(), x)
            .ok_or_else(|| Error::InvalidInput("vector is not in the generating subgroup".into()))?;
        let p: Vec<BigRational> = u.into_iter().chain(w.into_iter().map(BigRational::from_integer)).collect();
        Ok(self.group.normalize(&self.to_std.mul_vec(&p)))
    }

    /// Unreduced standard coordinates of a vector in the divisible part of S,
    /// linear in the input. Used to build morphisms out of divisible summands.
    pub fn coords_exact(&self, x: &[BigRational]) -> Result<Vec<BigRational>> {
        if is_zero_vec(x) {
            return Ok(vec![BigRational::zero(); self.group.dim()]);
        }
        let a = self
            .gens
            .divisible_matrix()
            .solve(x)
            .ok_or_else(|| Error::InvalidInput("vector is not in the divisible part of the generators".into()))?;
        let mut p = a;
        p.extend(std::iter::repeat(BigRational::zero()).take(self.gens.lattice.len()));
        Ok(self.to_std.mul_vec(&p))
    }

    /// Matrix of the map from a group `src` whose coordinates go to ambient vectors via `f`.
    ///
    /// Divisible coordinates of `src` are pushed through exactly.
    pub fn morphism_from(&self, src: &QZGroup, f: &RatMatrix) -> Result<QZMorphism> {
        let mut m = RatMatrix::zeros(self.group.dim(), src.dim());
        for j in 0..src.dim() {
            let x = f.mul_vec(&src.unit(j));
            let col = if src.summand(j).is_divisible() { self.coords_exact(&x)? } else { self.coords(&x)? };
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        QZMorphism::new(src.clone(), self.group.clone(), m)
    }
}

/// A Z-basis of the subgroup of Q^n spanned by the given vectors.
pub fn rational_lattice_basis(n: usize, vecs: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    if vecs.is_empty() {
        return vec![];
    }
    let m = RatMatrix::from_cols(n, vecs);
    let den = m.common_denominator();
    let dq = BigRational::from_integer(den.clone());
    let mi = m.scale(&dq).to_integer().expect("scaled by common denominator");
    column_lattice_basis(&mi)
        .into_iter()
        .map(|v| v.into_iter().map(|x| BigRational::new(x, den.clone())).collect())
        .collect()
}

/// A subgroup with its inclusion, or a quotient with its projection.
#[derive(Clone, Debug)]
pub struct Presented {
    pub presentation: QZPresentation,
    pub map: QZMorphism,
}

impl Presented {
    pub fn group(&self) -> &QZGroup {
        self.presentation.group()
    }
}

/// Kernel with its inclusion into the domain.
pub fn kernel_qz(f: &QZMorphism) -> Presented {
    let (_, r) = f.domain().ambient();
    let p = QZPresentation::new(&f.kernel_lattice(), &r);
    let map = QZMorphism::new(p.group().clone(), f.domain().clone(), p.lift_matrix().clone())
        .expect("kernel generators lie in the domain");
    Presented { presentation: p, map }
}

/// Image with its inclusion into the codomain.
pub fn image_qz(f: &QZMorphism) -> Presented {
    let (_, r) = f.codomain().ambient();
    let p = QZPresentation::new(&f.image_lattice(), &r);
    let map = QZMorphism::new(p.group().clone(), f.codomain().clone(), p.lift_matrix().clone())
        .expect("image generators lie in the codomain");
    Presented { presentation: p, map }
}

/// Quotient of the codomain of `sub` by its image, with the projection.
pub fn quotient_qz(sub: &QZMorphism) -> Result<Presented> {
    let (s, r) = sub.codomain().ambient();
    let p = QZPresentation::new(&s, &sub.image_lattice().sum(&r));
    let map = p.morphism_from(sub.codomain(), &RatMatrix::identity(sub.codomain().dim()))?;
    Ok(Presented { presentation: p, map })
}

/// Homology ker(outgoing) / im(incoming) at the common middle group.
pub fn homology_qz(incoming: &QZMorphism, outgoing: &QZMorphism) -> Result<QZPresentation> {
    if incoming.codomain() != outgoing.domain() {
        return Err(Error::InvalidInput("differentials do not meet at the same group".into()));
    }
    if !outgoing.compose(incoming)?.is_zero() {
        return Err(Error::InvalidInput("composite of consecutive differentials is not zero".into()));
    }
    let (_, r) = outgoing.domain().ambient();
    Ok(QZPresentation::new(&outgoing.kernel_lattice(), &incoming.image_lattice().sum(&r)))
}

/// Whether a morphism is injective (its kernel is the zero group).
pub fn is_injective(f: &QZMorphism) -> bool {
    kernel_qz(f).group().is_zero()
}

pub fn is_surjective(f: &QZMorphism) -> bool {
    let (s, _) = f.codomain().ambient();
    f.image_lattice().contains_all(&s)
}

pub fn is_isomorphism(f: &QZMorphism) -> bool {
    is_injective(f) && is_surjective(f)
}
