use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::lattice::{FgAbGroup, RatMatrix};
use crate::qz::{is_injective, is_surjective, QZGroup, QZMorphism, Summand};

/// A short exact sequence 0 → G → G′ → G″ → 0 with G′ and G″ divisible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectiveResolution {
    g: QZGroup,
    g1: QZGroup,
    g2: QZGroup,
    alpha: QZMorphism,
    beta: QZMorphism,
}

impl InjectiveResolution {
    /// Checks exactness and divisibility.
    pub fn new(alpha: QZMorphism, beta: QZMorphism) -> Result<Self> {
        if alpha.codomain() != beta.domain() {
            return Err(Error::InvalidInput("α and β do not compose".into()));
        }
        let r = InjectiveResolution {
            g: alpha.domain().clone(),
            g1: alpha.codomain().clone(),
            g2: beta.codomain().clone(),
            alpha,
            beta,
        };
        if !r.g1.is_divisible() || !r.g2.is_divisible() {
            return Err(Error::NotDivisibleTarget);
        }
        if !r.is_exact() {
            return Err(Error::InvalidInput("0 → G → G′ → G″ → 0 is not exact".into()));
        }
        Ok(r)
    }

    /// Summand by summand: Q and Q/Z resolve by themselves, Z by Q → Q/Z and
    /// Z/d by Q/Z --×d--> Q/Z with Z/d embedded as multiples of 1/d.
    pub fn standard(g: &QZGroup) -> Self {
        let mut g1 = Vec::new();
        let mut g2 = Vec::new();
        let mut alpha = Vec::new();
        // (row of G′, row of G″, multiplier) for every column of β
        let mut beta = Vec::new();
        for (k, s) in g.summands().iter().enumerate() {
            match s {
                Summand::Q | Summand::QZ => {
                    g1.push(s.clone());
                    alpha.push((k, BigRational::one()));
                    beta.push(None);
                }
                Summand::Z => {
                    g1.push(Summand::Q);
                    alpha.push((k, BigRational::one()));
                    beta.push(Some((g2.len(), BigInt::one())));
                    g2.push(Summand::QZ);
                }
                Summand::Cyclic(d) => {
                    g1.push(Summand::QZ);
                    alpha.push((k, BigRational::new(BigInt::one(), d.clone())));
                    beta.push(Some((g2.len(), d.clone())));
                    g2.push(Summand::QZ);
                }
            }
        }
        let g1 = QZGroup::new(g1).expect("divisible summands");
        let g2 = QZGroup::new(g2).expect("divisible summands");
        let mut a = RatMatrix::zeros(g1.dim(), g.dim());
        for (row, (col, v)) in alpha.into_iter().enumerate() {
            a[(row, col)] = v;
        }
        let mut b = RatMatrix::zeros(g2.dim(), g1.dim());
        for (col, entry) in beta.into_iter().enumerate() {
            if let Some((row, m)) = entry {
                b[(row, col)] = BigRational::from_integer(m);
            }
        }
        let alpha = QZMorphism::new(g.clone(), g1.clone(), a).expect("standard α is legal");
        let beta = QZMorphism::new(g1.clone(), g2.clone(), b).expect("standard β is legal");
        InjectiveResolution { g: g.clone(), g1, g2, alpha, beta }
    }

    pub fn from_fg(g: &FgAbGroup) -> Self {
        Self::standard(&QZGroup::from_fg(g))
    }

    /// The coefficient group G.
    pub fn coefficients(&self) -> &QZGroup {
        &self.g
    }

    /// G′
    pub fn first(&self) -> &QZGroup {
        &self.g1
    }

    /// G″
    pub fn second(&self) -> &QZGroup {
        &self.g2
    }

    pub fn alpha(&self) -> &QZMorphism {
        &self.alpha
    }

    pub fn beta(&self) -> &QZMorphism {
        &self.beta
    }

    /// G as a finitely generated group, when it is one.
    pub fn coefficients_fg(&self) -> Option<FgAbGroup> {
        self.g.to_fg()
    }

    /// Whether G is itself divisible, so that G″ may be taken to be zero.
    pub fn is_injective_coefficient(&self) -> bool {
        self.g.is_divisible()
    }

    pub fn is_exact(&self) -> bool {
        let composite_zero = self.beta.compose(&self.alpha).map(|c| c.is_zero()).unwrap_or(false);
        composite_zero
            && is_injective(&self.alpha)
            && is_surjective(&self.beta)
            && self.alpha.image_lattice().same_subgroup(&self.beta.kernel_lattice())
    }
}
