use super::complex::ConeComplex;
use crate::error::Result;
use crate::qz::{block_morphism, induced, is_injective, kernel_qz, postcompose, HomSpace, QZGroup, QZMorphism};
use crate::lattice::RatMatrix;

/// σ: Hom(Q, G′) → Hom(C^{n+1}, G′) ⊕ Hom(Q, G″), φ ↦ (φ ∘ q, β ∘ φ), where
/// Q = C^{n+1}/B^{n+1} and q is the quotient map.
pub fn sigma(cone: &ConeComplex, n: i32) -> Result<QZMorphism> {
    let res = cone.resolution();
    let q = cone.complex().cohomology(n).q;
    let top = induced(&q, res.first())?;
    let bottom = postcompose(res.beta(), q.codomain())?;
    block_morphism(
        &[top.domain().clone()],
        &[top.codomain().clone(), bottom.codomain().clone()],
        &[vec![Some(&top)], vec![Some(&bottom)]],
    )
}

/// ω: Hom(C^{n+1}, G′) ⊕ Hom(Q, G″) → Cone_n, (ψ′, ψ″) ↦ (ψ′ ∘ δ, β ∘ ψ′ − ψ″ ∘ q).
pub fn omega(cone: &ConeComplex, n: i32) -> Result<QZMorphism> {
    let res = cone.resolution();
    let c = cone.complex();
    let q = c.cohomology(n).q;
    let a = induced(&c.differential(n), res.first())?;
    let b = postcompose(res.beta(), &c.group(n + 1))?;
    let d = induced(&q, res.second())?.neg();
    let target = cone.group(n);
    block_morphism(
        &[a.domain().clone(), d.domain().clone()],
        &[target.first().group().clone(), target.second().group().clone()],
        &[vec![Some(&a), None], vec![Some(&b), Some(&d)]],
    )
}

#[derive(Clone, Debug)]
pub struct KerXiReport {
    pub degree: i32,
    /// Hom(C^{n+1}, G′) ⊕ Hom(Q, G″)
    pub middle: QZGroup,
    pub ker_xi: QZGroup,
    pub sigma_injective: bool,
    pub composite_zero: bool,
    /// ker ω = im σ
    pub exact_in_middle: bool,
    /// im ω = ker(ξ: Z̄_n → Hom(H^n, G))
    pub image_is_ker_xi: bool,
}

impl KerXiReport {
    pub fn all_pass(&self) -> bool {
        self.sigma_injective && self.composite_zero && self.exact_in_middle && self.image_is_ker_xi
    }
}

/// The kernel of ξ on the cycles of Cone_n, with its inclusion into Cone_n.
pub fn ker_xi(cone: &ConeComplex, n: i32) -> Result<QZMorphism> {
    let cycles = kernel_qz(&cone.boundary(n));
    let coh = cone.complex().cohomology(n);
    let hom = HomSpace::new(&coh.h, cone.resolution().coefficients());
    let zg = cycles.group();
    let mut m = RatMatrix::zeros(hom.group().dim(), zg.dim());
    for k in 0..zg.dim() {
        let col = cone.xi_on_cycle(&coh, &hom, &cycles.map.matrix().col(k), zg.summand(k).is_divisible())?;
        for (i, v) in col.into_iter().enumerate() {
            m[(i, k)] = v;
        }
    }
    let xi = QZMorphism::new(zg.clone(), hom.group().clone(), m)?;
    cycles.map.compose(&kernel_qz(&xi).map)
}

pub fn verify_ker_xi(cone: &ConeComplex, n: i32) -> Result<KerXiReport> {
    let s = sigma(cone, n)?;
    let w = omega(cone, n)?;
    let k = ker_xi(cone, n)?;
    Ok(KerXiReport {
        degree: n,
        middle: s.codomain().clone(),
        ker_xi: k.domain().clone(),
        sigma_injective: is_injective(&s),
        composite_zero: w.compose(&s)?.is_zero(),
        exact_in_middle: s.image_lattice().same_subgroup(&w.kernel_lattice()),
        image_is_ker_xi: w.image_lattice().same_subgroup(&k.image_lattice()),
    })
}
