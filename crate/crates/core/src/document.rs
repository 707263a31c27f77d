//! JSON documents for groups, complexes, maps, towers and systems.
//!
//! Integers are JSON numbers (decimal strings once they leave the i64 range),
//! matrices are arrays of rows, rationals are `"p/q"` strings and Q/Z
//! coordinates are written `"p/q mod 1"`. Writing is canonical: reading a
//! written document and writing it again gives the same bytes.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::complex::{CochainComplex, CochainMap, TowerOfComplexes};
use crate::error::{Error, Result};
use crate::lattice::{frac, FgAbGroup, FgMorphism, IntMatrix, RatMatrix};
use crate::limits::TowerOfGroups;
use crate::qz::{QZGroup, QZMorphism, Summand};
use crate::simplicial::{SimplicialComplex, SimplicialComplexDoc, SimplicialMap};

/// A value with a JSON document form.
pub trait Document: Sized {
    type Doc: Serialize + DeserializeOwned;

    fn to_doc(&self) -> Self::Doc;
    fn from_doc(doc: Self::Doc) -> Result<Self>;
}

/// Parses a document, reporting the JSON path and position of the first problem.
pub fn read<T: Document>(text: &str) -> Result<T> {
    T::from_doc(parse_json(text)?)
}

pub fn parse_json<D: DeserializeOwned>(text: &str) -> Result<D> {
    let mut de = serde_json::Deserializer::from_str(text);
    let doc: D = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        Error::Document(format!("{path}: {inner}"))
    })?;
    de.end().map_err(|e| Error::Document(format!("trailing input: {e}")))?;
    Ok(doc)
}

pub fn write<T: Document>(value: &T) -> String {
    to_json(&value.to_doc())
}

pub fn to_json<D: Serialize>(doc: &D) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

/// An integer that is a JSON number when it fits in i64.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Small(i64),
            Big(u64),
            Text(String),
        }
        match Raw::deserialize(d).map_err(|_| serde::de::Error::custom("expected an integer"))? {
            Raw::Small(v) => Ok(Int(v.into())),
            Raw::Big(v) => Ok(Int(v.into())),
            Raw::Text(t) => BigInt::from_str(&t).map(Int).map_err(|_| serde::de::Error::custom(format!("`{t}` is not an integer"))),
        }
    }
}

fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

fn unints(v: Vec<Int>) -> Vec<BigInt> {
    v.into_iter().map(|i| i.0).collect()
}

pub type MatrixDoc = Vec<Vec<Int>>;

pub fn matrix_doc(m: &IntMatrix) -> MatrixDoc {
    m.to_rows().iter().map(|r| ints(r)).collect()
}

/// Reads a matrix whose shape is fixed by the surrounding document.
pub fn matrix_from_doc(doc: MatrixDoc, rows: usize, cols: usize, what: &str) -> Result<IntMatrix> {
    if doc.len() != rows || doc.iter().any(|r| r.len() != cols) {
        let got = doc.first().map_or(0, Vec::len);
        return Err(Error::Document(format!("{what}: expected a {rows}×{cols} matrix, got {}×{got}", doc.len())));
    }
    let data = doc.into_iter().flat_map(unints).collect();
    Ok(IntMatrix::from_vec(rows, cols, data))
}

pub fn rational_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = || Error::Document(format!("`{s}` is not a rational number"));
    match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(BigInt::from_str(t).map_err(|_| bad())?)),
    }
}

/// One coordinate of an element of the given summand.
pub fn coordinate_string(s: &Summand, x: &BigRational) -> String {
    match s {
        Summand::QZ => format!("{} mod 1", rational_string(&frac(x))),
        _ => rational_string(x),
    }
}

pub fn parse_coordinate(s: &Summand, text: &str) -> Result<BigRational> {
    match (s, text.trim().strip_suffix("mod 1")) {
        (Summand::QZ, Some(r)) => Ok(frac(&parse_rational(r)?)),
        (Summand::QZ, None) => Err(Error::Document(format!("Q/Z coordinate `{text}` must end in `mod 1`"))),
        (_, Some(_)) => Err(Error::Document(format!("`{text}`: only Q/Z coordinates are taken mod 1"))),
        (_, None) => parse_rational(text),
    }
}

pub fn element_doc(g: &QZGroup, x: &[BigRational]) -> Vec<String> {
    g.summands().iter().zip(x).map(|(s, v)| coordinate_string(s, v)).collect()
}

pub fn element_from_doc(g: &QZGroup, doc: &[String]) -> Result<Vec<BigRational>> {
    if doc.len() != g.dim() {
        return Err(Error::Document(format!("element has {} coordinates, group has {}", doc.len(), g.dim())));
    }
    let x = g.summands().iter().zip(doc).map(|(s, t)| parse_coordinate(s, t)).collect::<Result<Vec<_>>>()?;
    g.element(&x)
}

/// Matrix rows written as elements of the codomain summands.
pub fn rational_matrix_doc(codomain: &QZGroup, m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| coordinate_string(codomain.summand(i), x)).collect()).collect()
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub free_rank: usize,
    pub torsion: Vec<Int>,
}

impl Document for FgAbGroup {
    type Doc = GroupDoc;

    fn to_doc(&self) -> GroupDoc {
        GroupDoc { free_rank: self.free_rank(), torsion: ints(self.torsion()) }
    }

    fn from_doc(d: GroupDoc) -> Result<Self> {
        FgAbGroup::new(d.free_rank, unints(d.torsion))
    }
}

/// A coefficient group as a list of summands: `"Q"`, `"Q/Z"`, `"Z"`, `"Z/d"`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientDoc {
    pub summands: Vec<String>,
}

pub fn parse_summand(s: &str) -> Result<Summand> {
    match s.trim() {
        "Q" => Ok(Summand::Q),
        "Q/Z" => Ok(Summand::QZ),
        "Z" => Ok(Summand::Z),
        t => t
            .strip_prefix("Z/")
            .and_then(|d| BigInt::from_str(d).ok())
            .map(Summand::Cyclic)
            .ok_or_else(|| Error::Document(format!("unknown summand `{s}` (expected Q, Q/Z, Z or Z/d)"))),
    }
}

impl Document for QZGroup {
    type Doc = CoefficientDoc;

    fn to_doc(&self) -> CoefficientDoc {
        CoefficientDoc { summands: self.summands().iter().map(ToString::to_string).collect() }
    }

    fn from_doc(d: CoefficientDoc) -> Result<Self> {
        QZGroup::new(d.summands.iter().map(|s| parse_summand(s)).collect::<Result<Vec<_>>>()?)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub domain: CoefficientDoc,
    pub codomain: CoefficientDoc,
    pub matrix: Vec<Vec<String>>,
}

impl Document for QZMorphism {
    type Doc = MorphismDoc;

    fn to_doc(&self) -> MorphismDoc {
        MorphismDoc {
            domain: self.domain().to_doc(),
            codomain: self.codomain().to_doc(),
            matrix: rational_matrix_doc(self.codomain(), self.matrix()),
        }
    }

    fn from_doc(d: MorphismDoc) -> Result<Self> {
        let (src, tgt) = (QZGroup::from_doc(d.domain)?, QZGroup::from_doc(d.codomain)?);
        if d.matrix.len() != tgt.dim() || d.matrix.iter().any(|r| r.len() != src.dim()) {
            return Err(Error::Document(format!("matrix must be {}×{}", tgt.dim(), src.dim())));
        }
        let rows = d
            .matrix
            .iter()
            .enumerate()
            .map(|(i, r)| r.iter().map(|t| parse_coordinate(tgt.summand(i), t)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        QZMorphism::new(src.clone(), tgt, RatMatrix::from_rows(src.dim(), &rows))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub lo: i32,
    pub groups: Vec<GroupDoc>,
    pub differentials: Vec<MatrixDoc>,
}

impl Document for CochainComplex {
    type Doc = ComplexDoc;

    fn to_doc(&self) -> ComplexDoc {
        ComplexDoc {
            lo: self.lo(),
            groups: self.groups().iter().map(Document::to_doc).collect(),
            differentials: self.differentials().iter().map(|d| matrix_doc(d.matrix())).collect(),
        }
    }

    fn from_doc(d: ComplexDoc) -> Result<Self> {
        let groups = d.groups.into_iter().map(FgAbGroup::from_doc).collect::<Result<Vec<_>>>()?;
        if d.differentials.len() + 1 != groups.len() && !(groups.is_empty() && d.differentials.is_empty()) {
            return Err(Error::Document(format!("{} groups need {} differentials", groups.len(), groups.len().saturating_sub(1))));
        }
        let mats = d
            .differentials
            .into_iter()
            .enumerate()
            .map(|(k, m)| matrix_from_doc(m, groups[k + 1].num_gens(), groups[k].num_gens(), &format!("differentials[{k}]")))
            .collect::<Result<Vec<_>>>()?;
        let c = CochainComplex::from_matrices(d.lo, groups, mats)?;
        let v = c.validate();
        if let Some(n) = v.offending_degree {
            return Err(Error::InvalidInput(format!("δ∘δ ≠ 0 starting in degree {n}")));
        }
        Ok(c)
    }
}

/// The components of a cochain map between known complexes.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentsDoc {
    pub lo: i32,
    pub components: Vec<MatrixDoc>,
}

fn components_doc(f: &CochainMap) -> ComponentsDoc {
    let r = f.support();
    if r.is_empty() {
        return ComponentsDoc { lo: 0, components: vec![] };
    }
    ComponentsDoc { lo: *r.start(), components: r.map(|n| matrix_doc(f.component(n).matrix())).collect() }
}

fn map_from_components(source: &CochainComplex, target: &CochainComplex, d: ComponentsDoc) -> Result<CochainMap> {
    let mats = d
        .components
        .into_iter()
        .enumerate()
        .map(|(k, m)| {
            let n = d.lo + k as i32;
            matrix_from_doc(m, target.group(n).num_gens(), source.group(n).num_gens(), &format!("components[{k}]"))
        })
        .collect::<Result<Vec<_>>>()?;
    CochainMap::from_matrices(source.clone(), target.clone(), d.lo, mats)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDoc {
    pub source: ComplexDoc,
    pub target: ComplexDoc,
    pub lo: i32,
    pub components: Vec<MatrixDoc>,
}

impl Document for CochainMap {
    type Doc = MapDoc;

    fn to_doc(&self) -> MapDoc {
        let c = components_doc(self);
        MapDoc { source: self.source().to_doc(), target: self.target().to_doc(), lo: c.lo, components: c.components }
    }

    fn from_doc(d: MapDoc) -> Result<Self> {
        let (s, t) = (CochainComplex::from_doc(d.source)?, CochainComplex::from_doc(d.target)?);
        map_from_components(&s, &t, ComponentsDoc { lo: d.lo, components: d.components })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupTailDoc {
    pub group: GroupDoc,
    pub map: MatrixDoc,
}

/// `bonds[k]` maps level k + 1 to level k.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerDoc {
    pub prefix: Vec<GroupDoc>,
    pub bonds: Vec<MatrixDoc>,
    pub tail: Option<GroupTailDoc>,
}

fn fg_map(a: &FgAbGroup, b: &FgAbGroup, m: MatrixDoc, what: &str) -> Result<FgMorphism> {
    FgMorphism::new(a.clone(), b.clone(), matrix_from_doc(m, b.num_gens(), a.num_gens(), what)?)
}

impl Document for TowerOfGroups {
    type Doc = TowerDoc;

    fn to_doc(&self) -> TowerDoc {
        TowerDoc {
            prefix: self.prefix.iter().map(Document::to_doc).collect(),
            bonds: self.bonds.iter().map(|b| matrix_doc(b.matrix())).collect(),
            tail: self.tail.as_ref().map(|(g, m)| GroupTailDoc { group: g.to_doc(), map: matrix_doc(m.matrix()) }),
        }
    }

    fn from_doc(d: TowerDoc) -> Result<Self> {
        let prefix = d.prefix.into_iter().map(FgAbGroup::from_doc).collect::<Result<Vec<_>>>()?;
        let tail = match d.tail {
            Some(t) => {
                let g = FgAbGroup::from_doc(t.group)?;
                let m = fg_map(&g, &g, t.map, "tail.map")?;
                Some((g, m))
            }
            None => None,
        };
        let expected = if tail.is_some() { prefix.len() } else { prefix.len().saturating_sub(1) };
        if d.bonds.len() != expected {
            return Err(Error::Document(format!("expected {expected} bonds, got {}", d.bonds.len())));
        }
        let level = |k: usize| if k < prefix.len() { prefix[k].clone() } else { tail.as_ref().expect("tail").0.clone() };
        let bonds = d
            .bonds
            .into_iter()
            .enumerate()
            .map(|(k, m)| fg_map(&level(k + 1), &level(k), m, &format!("bonds[{k}]")))
            .collect::<Result<Vec<_>>>()?;
        TowerOfGroups::new(prefix, bonds, tail)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexTailDoc {
    pub complex: ComplexDoc,
    pub map: ComponentsDoc,
}

/// A direct system C_0 → C_1 → …; `bonds[k]` maps level k to level k + 1.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDoc {
    pub prefix: Vec<ComplexDoc>,
    pub bonds: Vec<ComponentsDoc>,
    pub tail: Option<ComplexTailDoc>,
}

impl Document for TowerOfComplexes {
    type Doc = SystemDoc;

    fn to_doc(&self) -> SystemDoc {
        SystemDoc {
            prefix: self.prefix().iter().map(Document::to_doc).collect(),
            bonds: self.bonds().iter().map(components_doc).collect(),
            tail: self.tail().map(|(c, m)| ComplexTailDoc { complex: c.to_doc(), map: components_doc(m) }),
        }
    }

    fn from_doc(d: SystemDoc) -> Result<Self> {
        let prefix = d.prefix.into_iter().map(CochainComplex::from_doc).collect::<Result<Vec<_>>>()?;
        let tail = match d.tail {
            Some(t) => {
                let c = CochainComplex::from_doc(t.complex)?;
                let m = map_from_components(&c, &c, t.map)?;
                Some((c, m))
            }
            None => None,
        };
        let expected = if tail.is_some() { prefix.len() } else { prefix.len().saturating_sub(1) };
        if d.bonds.len() != expected {
            return Err(Error::Document(format!("expected {expected} bonds, got {}", d.bonds.len())));
        }
        let level = |k: usize| if k < prefix.len() { prefix[k].clone() } else { tail.as_ref().expect("tail").0.clone() };
        let bonds = d
            .bonds
            .into_iter()
            .enumerate()
            .map(|(k, b)| map_from_components(&level(k), &level(k + 1), b))
            .collect::<Result<Vec<_>>>()?;
        TowerOfComplexes::new(prefix, bonds, tail)
    }
}

impl Document for SimplicialComplex {
    type Doc = SimplicialComplexDoc;

    fn to_doc(&self) -> SimplicialComplexDoc {
        self.into()
    }

    fn from_doc(d: SimplicialComplexDoc) -> Result<Self> {
        d.try_into()
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialMapDoc {
    pub source: SimplicialComplexDoc,
    pub target: SimplicialComplexDoc,
    pub vertex_map: Vec<usize>,
}

impl Document for SimplicialMap {
    type Doc = SimplicialMapDoc;

    fn to_doc(&self) -> SimplicialMapDoc {
        SimplicialMapDoc { source: self.source().into(), target: self.target().into(), vertex_map: self.vertex_map().to_vec() }
    }

    fn from_doc(d: SimplicialMapDoc) -> Result<Self> {
        SimplicialMap::new(d.source.try_into()?, d.target.try_into()?, d.vertex_map)
    }
}
