use crate::error::{Error, Result};
use crate::lattice::{FgAbGroup, FgMorphism};
use crate::qz::{QZGroup, QZMorphism};

/// An inverse system A_0 ← A_1 ← … of [`QZGroup`]s: a finite prefix,
/// optionally followed by one group repeated forever under an endomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QZTower {
    prefix: Vec<QZGroup>,
    /// `bonds[k]`: level k + 1 → level k
    bonds: Vec<QZMorphism>,
    tail: Option<(QZGroup, QZMorphism)>,
}

impl QZTower {
    /// With a tail, `bonds` has one map per prefix level (the last one leaves
    /// the first tail level); without, one fewer.
    pub fn new(prefix: Vec<QZGroup>, bonds: Vec<QZMorphism>, tail: Option<(QZGroup, QZMorphism)>) -> Result<Self> {
        let expected = if tail.is_some() { prefix.len() } else { prefix.len().saturating_sub(1) };
        if bonds.len() != expected {
            return Err(Error::InvalidInput(format!("expected {expected} bonding maps, got {}", bonds.len())));
        }
        if prefix.is_empty() && tail.is_none() {
            return Err(Error::InvalidInput("a tower needs at least one group".into()));
        }
        if let Some((a, m)) = &tail {
            if m.domain() != a || m.codomain() != a {
                return Err(Error::InvalidInput("tail map must be an endomorphism of the tail group".into()));
            }
        }
        let t = QZTower { prefix, bonds, tail };
        for (k, b) in t.bonds.iter().enumerate() {
            if b.domain() != &t.level(k + 1) || b.codomain() != &t.level(k) {
                return Err(Error::InvalidInput(format!("bonding map {k} does not go from level {} to level {k}", k + 1)));
            }
        }
        Ok(t)
    }

    pub fn periodic(a: &QZGroup, m: &QZMorphism) -> Result<Self> {
        Self::new(vec![], vec![], Some((a.clone(), m.clone())))
    }

    pub fn prefix(&self) -> &[QZGroup] {
        &self.prefix
    }

    pub fn tail(&self) -> Option<&(QZGroup, QZMorphism)> {
        self.tail.as_ref()
    }

    pub fn is_finite(&self) -> bool {
        self.tail.is_none()
    }

    pub fn seam(&self) -> usize {
        self.prefix.len()
    }

    pub fn level(&self, k: usize) -> QZGroup {
        if k < self.prefix.len() {
            self.prefix[k].clone()
        } else {
            self.tail.as_ref().expect("level past the end of a finite tower").0.clone()
        }
    }

    /// Bonding map level k + 1 → level k.
    pub fn bond(&self, k: usize) -> QZMorphism {
        if k < self.bonds.len() {
            self.bonds[k].clone()
        } else {
            self.tail.as_ref().expect("bond past the end of a finite tower").1.clone()
        }
    }

    /// Composite level l → level k for k ≤ l.
    pub fn transition(&self, k: usize, l: usize) -> QZMorphism {
        let mut f = QZMorphism::identity(&self.level(l));
        for m in (k..l).rev() {
            f = self.bond(m).compose(&f).expect("consecutive bonds compose");
        }
        f
    }

    /// The first `n` levels as a finite tower.
    pub fn truncate(&self, n: usize) -> Result<QZTower> {
        if n == 0 || (self.is_finite() && n > self.prefix.len()) {
            return Err(Error::InvalidInput(format!("cannot truncate to {n} levels")));
        }
        QZTower::new((0..n).map(|k| self.level(k)).collect(), (0..n - 1).map(|k| self.bond(k)).collect(), None)
    }

    /// Number of levels of a finite tower, or the prefix plus `depth` tail levels.
    pub fn levels_to(&self, depth: usize) -> usize {
        if self.is_finite() {
            self.prefix.len()
        } else {
            self.prefix.len() + depth
        }
    }
}

/// A tower of finitely generated groups, arrows toward index 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerOfGroups {
    pub prefix: Vec<FgAbGroup>,
    pub bonds: Vec<FgMorphism>,
    pub tail: Option<(FgAbGroup, FgMorphism)>,
    inner: QZTower,
}

impl TowerOfGroups {
    pub fn new(prefix: Vec<FgAbGroup>, bonds: Vec<FgMorphism>, tail: Option<(FgAbGroup, FgMorphism)>) -> Result<Self> {
        let inner = QZTower::new(
            prefix.iter().map(QZGroup::from_fg).collect(),
            bonds.iter().map(QZMorphism::from_fg).collect(),
            tail.as_ref().map(|(a, m)| (QZGroup::from_fg(a), QZMorphism::from_fg(m))),
        )?;
        Ok(TowerOfGroups { prefix, bonds, tail, inner })
    }

    pub fn periodic(a: &FgAbGroup, m: &FgMorphism) -> Result<Self> {
        Self::new(vec![], vec![], Some((a.clone(), m.clone())))
    }

    pub fn constant(a: &FgAbGroup) -> Self {
        Self::periodic(a, &FgMorphism::identity(a)).expect("identity tower")
    }

    pub fn finite(levels: Vec<FgAbGroup>, bonds: Vec<FgMorphism>) -> Result<Self> {
        Self::new(levels, bonds, None)
    }

    pub fn level(&self, k: usize) -> FgAbGroup {
        if k < self.prefix.len() {
            self.prefix[k].clone()
        } else {
            self.tail.as_ref().expect("level past the end of a finite tower").0.clone()
        }
    }

    pub fn bond(&self, k: usize) -> FgMorphism {
        if k < self.bonds.len() {
            self.bonds[k].clone()
        } else {
            self.tail.as_ref().expect("bond past the end of a finite tower").1.clone()
        }
    }

    pub fn is_finite(&self) -> bool {
        self.tail.is_none()
    }

    pub fn seam(&self) -> usize {
        self.prefix.len()
    }

    /// The same tower with every group viewed as a [`QZGroup`].
    pub fn as_qz(&self) -> &QZTower {
        &self.inner
    }

    /// The tower as finitely generated groups, if every level is.
    pub fn from_qz(t: &QZTower) -> Option<Self> {
        let fg = |g: &QZGroup| -> Option<FgAbGroup> { (g.is_finitely_generated() && g.is_standard()).then(|| g.to_fg()).flatten() };
        let hom = |f: &QZMorphism| -> Option<FgMorphism> {
            FgMorphism::new(fg(f.domain())?, fg(f.codomain())?, f.matrix().to_integer()?).ok()
        };
        let prefix = t.prefix.iter().map(fg).collect::<Option<Vec<_>>>()?;
        let bonds = t.bonds.iter().map(hom).collect::<Option<Vec<_>>>()?;
        let tail = match &t.tail {
            Some((a, m)) => Some((fg(a)?, hom(m)?)),
            None => None,
        };
        Self::new(prefix, bonds, tail).ok()
    }
}
