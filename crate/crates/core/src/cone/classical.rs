use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::complex::ConeComplex;
use super::ucf::same_element;
use crate::complex::CochainComplex;
use crate::error::{Error, Result};
use crate::lattice::{hom_group, kernel, quotient_by, solve_preimage, FgAbGroup, FgMorphism, IntMatrix, RatMatrix};
use crate::qz::{homology_qz, induced, is_isomorphism, HomSpace, QZElement, QZGroup, QZMorphism, QZPresentation};

/// ∂_n: Hom(C^n, G) → Hom(C^{n−1}, G), precomposition with δ^{n−1}.
pub fn classical_boundary(c: &CochainComplex, g: &QZGroup, n: i32) -> Result<QZMorphism> {
    induced(&c.differential(n - 1), g)
}

/// H_n(Hom(C*, G)) presented inside Hom(C^n, G).
pub fn classical_homology(c: &CochainComplex, g: &QZGroup, n: i32) -> Result<QZPresentation> {
    homology_qz(&classical_boundary(c, g, n + 1)?, &classical_boundary(c, g, n)?)
}

/// The same homology for finitely generated G, computed with integer
/// lattices only.
pub fn classical_homology_fg(c: &CochainComplex, g: &FgAbGroup, n: i32) -> Result<FgAbGroup> {
    let boundary = |m: i32| -> Result<FgMorphism> {
        let src = hom_group(&c.group(m), g);
        let dst = hom_group(&c.group(m - 1), g);
        let d = c.differential(m - 1);
        let cols = src.basis.iter().map(|f| Ok(dst.coords_of(&f.compose(&d)?))).collect::<Result<Vec<_>>>()?;
        FgMorphism::new(src.group.clone(), dst.group.clone(), IntMatrix::from_cols(dst.group.num_gens(), &cols))
    };
    let out = boundary(n)?;
    let inc = boundary(n + 1)?;
    let z = kernel(&out);
    let b = (0..inc.domain().num_gens())
        .map(|k| {
            let mut e = inc.domain().zero_element();
            e[k] = BigInt::one();
            solve_preimage(&z.map, &inc.apply(&e))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(quotient_by(&z.group, &b).group)
}

/// Outcome of comparing classical homology with the cone for free C.
#[derive(Clone, Debug)]
pub struct ClassicalReport {
    pub degree: i32,
    pub classical: QZGroup,
    pub hbar: QZGroup,
    /// The lattice-only computation, for finitely generated G.
    pub classical_lattice: Option<FgAbGroup>,
    pub routes_agree: Option<bool>,
    pub alpha_star_iso: bool,
    /// ξ̄ ∘ ᾱ* = ξ̃
    pub xi_triangle: bool,
    /// ᾱ* ∘ χ₀ = χ
    pub chi_triangle: bool,
    /// The connecting map does not depend on the lift through β.
    pub lift_independent: bool,
}

impl ClassicalReport {
    pub fn all_pass(&self) -> bool {
        self.routes_agree != Some(false) && self.alpha_star_iso && self.xi_triangle && self.chi_triangle && self.lift_independent
    }
}

/// The chain map Hom(C*, G) → Cone, φ ↦ (α ∘ φ, 0).
pub fn alpha_star_chain(cone: &ConeComplex, n: i32) -> Result<QZMorphism> {
    let res = cone.resolution();
    let src = HomSpace::new(&cone.complex().group(n), res.coefficients());
    let dst = cone.group(n);
    let zero2 = RatMatrix::zeros(res.second().dim(), cone.complex().group(n + 1).num_gens());
    let mut m = RatMatrix::zeros(dst.group().dim(), src.group().dim());
    for k in 0..src.group().dim() {
        let phi = res.alpha().matrix().mul(&src.to_matrix(&src.group().unit(k)));
        for (i, v) in dst.from_matrices(&phi, &zero2)?.into_iter().enumerate() {
            m[(i, k)] = v;
        }
    }
    QZMorphism::new(src.group().clone(), dst.group().clone(), m)
}

/// ᾱ*: H_n(Hom(C*, G)) → H̄_n.
pub fn alpha_star(cone: &ConeComplex, n: i32) -> Result<QZMorphism> {
    let cl = classical_homology(cone.complex(), cone.resolution().coefficients(), n)?;
    let h = cone.homology(n)?;
    let f = alpha_star_chain(cone, n)?.matrix().mul(cl.lift_matrix());
    h.presentation.morphism_from(cl.group(), &f)
}

/// ξ̃: H_n(Hom(C*, G)) → Hom(H^n, G), restriction to cocycles.
pub fn xi_classical(cone: &ConeComplex, n: i32) -> Result<QZMorphism> {
    let g = cone.resolution().coefficients();
    let cl = classical_homology(cone.complex(), g, n)?;
    let cochains = HomSpace::new(&cone.complex().group(n), g);
    let coh = cone.complex().cohomology(n);
    let hom = HomSpace::new(&coh.h, g);
    let mut m = RatMatrix::zeros(hom.group().dim(), cl.group().dim());
    for k in 0..cl.group().dim() {
        let phi = cochains.to_matrix(&cl.lift_matrix().col(k));
        let on_h = phi.mul(&coh.cocycles().to_rational());
        let col = if cl.group().summand(k).is_divisible() { hom.coords_raw(&on_h)? } else { hom.element(&on_h)? };
        for (i, v) in col.into_iter().enumerate() {
            m[(i, k)] = v;
        }
    }
    QZMorphism::new(cl.group().clone(), hom.group().clone(), m)
}

fn require_free(c: &CochainComplex) -> Result<()> {
    match c.first_non_free_degree() {
        Some(n) => Err(Error::NotFree(n)),
        None => Ok(()),
    }
}

/// The connecting map of 0 → Hom(C*, G) → Hom(C*, G′) → Hom(C*, G″) → 0 on
/// a cycle φ″ of Hom(C^{n+1}, G″); `shift` is added to the lift through β.
fn connecting(cone: &ConeComplex, cl: &QZPresentation, n: i32, phi2: &RatMatrix, shift: &RatMatrix, exact: bool) -> Result<QZElement> {
    let res = cone.resolution();
    let beta = res.beta();
    let cols = (0..phi2.cols())
        .map(|k| {
            let col = phi2.col(k);
            let lift = if exact { beta.preimage_exact(&col) } else { beta.preimage(&col) };
            lift.ok_or_else(|| Error::LiftFailure(format!("column {k} does not lift through β")))
        })
        .collect::<Result<Vec<_>>>()?;
    let psi1 = RatMatrix::from_cols(res.first().dim(), &cols).add(shift);
    let phi1 = psi1.mul(&cone.complex().differential(n).matrix().to_rational());
    let alpha = res.alpha();
    let cols = (0..phi1.cols())
        .map(|k| {
            let col = phi1.col(k);
            let lift = if exact { alpha.matrix().solve(&col) } else { alpha.preimage(&col) };
            lift.ok_or_else(|| Error::LiftFailure(format!("column {k} does not lie in the image of α")))
        })
        .collect::<Result<Vec<_>>>()?;
    let phi = RatMatrix::from_cols(res.coefficients().dim(), &cols);
    let cochains = HomSpace::new(&cone.complex().group(n), res.coefficients());
    if exact {
        cl.coords_exact(&cochains.coords_raw(&phi)?)
    } else {
        cl.coords(&cochains.element(&phi)?)
    }
}

/// χ₀: Hom(H^{n+1}, G″) → H_n(Hom(C*, G)), extension followed by the
/// connecting map. Needs C free.
pub fn chi_classical(cone: &ConeComplex, n: i32) -> Result<QZMorphism> {
    chi_classical_shifted(cone, n, None)
}

fn chi_classical_shifted(cone: &ConeComplex, n: i32, shift: Option<&RatMatrix>) -> Result<QZMorphism> {
    require_free(cone.complex())?;
    let res = cone.resolution();
    let cl = classical_homology(cone.complex(), res.coefficients(), n)?;
    let coh_next = cone.complex().cohomology(n + 1);
    let hom2 = HomSpace::new(&coh_next.h, res.second());
    let ncn = cone.complex().group(n + 1).num_gens();
    let zero = RatMatrix::zeros(res.first().dim(), ncn);
    let shift = shift.unwrap_or(&zero);
    let mut m = RatMatrix::zeros(cl.group().dim(), hom2.group().dim());
    for k in 0..hom2.group().dim() {
        let exact = hom2.group().summand(k).is_divisible();
        let psi = hom2.to_matrix(&hom2.group().unit(k)).mul(&coh_next.p.matrix().to_rational());
        let phi2 = crate::qz::extend_to_divisible(&coh_next.j, &psi, res.second())?;
        // a shifted lift is only meaningful on the reduced group
        let col = connecting(cone, &cl, n, &phi2, shift, exact && shift.is_zero())?;
        for (i, v) in col.into_iter().enumerate() {
            m[(i, k)] = v;
        }
    }
    if !shift.is_zero() {
        for k in 0..hom2.group().dim() {
            if hom2.group().summand(k).is_divisible() {
                for i in 0..m.rows() {
                    m[(i, k)] = BigRational::from_integer(0.into());
                }
            }
        }
    }
    QZMorphism::new(hom2.group().clone(), cl.group().clone(), m)
}

/// Compares the classical homology of Hom(C*, G) with H̄_n for free C.
pub fn verify_classical(cone: &ConeComplex, n: i32) -> Result<ClassicalReport> {
    require_free(cone.complex())?;
    let res = cone.resolution();
    let cl = classical_homology(cone.complex(), res.coefficients(), n)?;
    let maps = cone.ucf_maps(n)?;
    let classical_lattice = res.coefficients_fg().map(|g| classical_homology_fg(cone.complex(), &g, n)).transpose()?;
    let routes_agree = classical_lattice.as_ref().map(|g| cl.group().is_isomorphic(&QZGroup::from_fg(g)));
    let a = alpha_star(cone, n)?;
    let alpha_star_iso = is_isomorphism(&a);
    let xi_triangle = maps.xi_bar.compose(&a)? == xi_classical(cone, n)?;
    let chi0 = chi_classical(cone, n)?;
    let chi_triangle = a.compose(&chi0)? == maps.chi;

    // shift the lift through β by α ∘ g for a fixed g: C^{n+1} → G
    let cn1 = cone.complex().group(n + 1);
    let gspace = HomSpace::new(&cn1, res.coefficients());
    let g_el: Vec<BigRational> = (0..gspace.group().dim())
        .map(|k| {
            if gspace.group().summand(k).is_divisible() {
                BigRational::new(BigInt::one(), BigInt::from(k as i64 + 2))
            } else {
                BigRational::one()
            }
        })
        .collect();
    let shift = res.alpha().matrix().mul(&gspace.to_matrix(&g_el));
    let shifted = chi_classical_shifted(cone, n, Some(&shift))?;
    let lift_independent = (0..shifted.domain().dim()).all(|k| {
        let exact = shifted.domain().summand(k).is_divisible();
        exact || same_element(cl.group(), &shifted.matrix().col(k), &chi0.matrix().col(k), false)
    });

    Ok(ClassicalReport {
        degree: n,
        classical: cl.group().clone(),
        hbar: maps.homology.group().clone(),
        classical_lattice,
        routes_agree,
        alpha_star_iso,
        xi_triangle,
        chi_triangle,
        lift_independent,
    })
}
