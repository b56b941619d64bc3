//! JSON file formats for algebras, modules, maps and integer presentations.
//! All scalars travel as strings.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::{catalog, Algebra, Module, ModuleMap, Ring, Side};
use crate::error::{Error, Result};
use crate::linalg::{Domain, IntMatrix, Matrix, Scalar};

pub type Rows = Vec<Vec<String>>;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub field: Domain,
    pub dim: usize,
    pub unit: Vec<String>,
    pub mult: Vec<Vec<Vec<String>>>,
}

/// Either a path, a catalog reference `@name`, or an inline table.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraRef {
    Named(String),
    Inline(AlgebraFile),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleFile {
    pub algebra: AlgebraRef,
    pub side: Side,
    pub dim: usize,
    pub action: Vec<Rows>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapFile {
    pub source: ModuleFile,
    pub target: ModuleFile,
    pub matrix: Rows,
}

/// A matrix with its domain header.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub domain: Domain,
    pub rows: usize,
    pub cols: usize,
    pub entries: Rows,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntEntry {
    Num(i64),
    Text(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZFile {
    pub ring: String,
    pub relations: Vec<Vec<IntEntry>>,
    /// Number of generators; defaults to the number of rows.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<usize>,
}

fn parse_rows(d: Domain, rows: usize, cols: usize, data: &Rows, what: &str) -> Result<Matrix> {
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse(format!("{what}: expected a {rows}x{cols} matrix")));
    }
    let mut m = Matrix::zeros(d, rows, cols);
    for (i, r) in data.iter().enumerate() {
        for (j, s) in r.iter().enumerate() {
            m[(i, j)] = d.parse(s)?;
        }
    }
    Ok(m)
}

pub fn rows_of(m: &Matrix) -> Rows {
    (0..m.rows()).map(|i| m.row(i).iter().map(Scalar::to_string).collect()).collect()
}

pub fn matrix_file(m: &Matrix, d: Domain) -> MatrixFile {
    MatrixFile { domain: d, rows: m.rows(), cols: m.cols(), entries: rows_of(m) }
}

pub fn matrix_from_file(f: &MatrixFile) -> Result<Matrix> {
    parse_rows(f.domain, f.rows, f.cols, &f.entries, "matrix")
}

pub fn algebra_from_file(f: &AlgebraFile) -> Result<Algebra> {
    let d = f.field;
    if let Domain::PrimeField(p) = d {
        Domain::prime_field(p)?;
    }
    let n = f.dim;
    if f.unit.len() != n || f.mult.len() != n || f.mult.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n)) {
        return Err(Error::Parse(format!("algebra: tables must have dimension {n}")));
    }
    let unit = f.unit.iter().map(|s| d.parse(s)).collect::<Result<Vec<_>>>()?;
    let mult = f
        .mult
        .iter()
        .map(|r| r.iter().map(|c| c.iter().map(|s| d.parse(s)).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Algebra::new(d, mult, unit)
}

pub fn algebra_file(a: &Algebra) -> AlgebraFile {
    let c = a.structure_constants();
    AlgebraFile {
        field: a.domain(),
        dim: a.dim(),
        unit: a.unit().iter().map(Scalar::to_string).collect(),
        mult: c.iter().map(|r| r.iter().map(|v| v.iter().map(Scalar::to_string).collect()).collect()).collect(),
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Resolves `@name` against the catalog and anything else as a path
/// relative to `base`.
pub fn load_ring(spec: &str, base: Option<&Path>) -> Result<Arc<Ring>> {
    if let Some(name) = spec.strip_prefix('@') {
        return catalog::ring(name);
    }
    let mut path = PathBuf::from(spec);
    if path.is_relative() {
        if let Some(b) = base {
            path = b.join(path);
        }
    }
    let f: AlgebraFile = read_json(&path)?;
    Ok(Ring::named(algebra_from_file(&f)?, None))
}

fn ring_of(r: &AlgebraRef, base: Option<&Path>) -> Result<Arc<Ring>> {
    match r {
        AlgebraRef::Named(s) => load_ring(s, base),
        AlgebraRef::Inline(f) => Ok(Ring::new(algebra_from_file(f)?)),
    }
}

/// Builds a module; when `ring` is given it must agree with the file's algebra.
pub fn module_from_file(f: &ModuleFile, ring: Option<&Arc<Ring>>, base: Option<&Path>) -> Result<Module> {
    let own = ring_of(&f.algebra, base)?;
    let ring = match ring {
        Some(r) if **r == *own => r.clone(),
        Some(_) => return Err(Error::AlgebraMismatch),
        None => own,
    };
    let n = ring.dim();
    if f.action.len() != n {
        return Err(Error::Parse(format!("module: expected {n} action matrices, found {}", f.action.len())));
    }
    let d = ring.domain();
    let action = f.action.iter().map(|a| parse_rows(d, f.dim, f.dim, a, "action")).collect::<Result<Vec<_>>>()?;
    Module::new(ring, f.side, f.dim, action)
}

pub fn module_file(m: &Module) -> ModuleFile {
    let algebra = match m.ring().name() {
        Some(n) if catalog::ALGEBRA_IDS.contains(&n) => AlgebraRef::Named(format!("@{n}")),
        _ => AlgebraRef::Inline(algebra_file(m.ring().algebra())),
    };
    ModuleFile { algebra, side: m.side(), dim: m.dim(), action: m.actions().iter().map(rows_of).collect() }
}

pub fn map_from_file(f: &MapFile, ring: Option<&Arc<Ring>>, base: Option<&Path>) -> Result<ModuleMap> {
    let s = module_from_file(&f.source, ring, base)?;
    let t = module_from_file(&f.target, Some(s.ring()), base)?;
    let m = parse_rows(s.domain(), t.dim(), s.dim(), &f.matrix, "map")?;
    ModuleMap::new(s, t, m)
}

pub fn map_file(f: &ModuleMap) -> MapFile {
    MapFile { source: module_file(f.source()), target: module_file(f.target()), matrix: rows_of(f.matrix()) }
}

pub fn load_module(path: &Path, ring: Option<&Arc<Ring>>) -> Result<Module> {
    let f: ModuleFile = read_json(path)?;
    module_from_file(&f, ring, path.parent())
}

pub fn load_map(path: &Path, ring: Option<&Arc<Ring>>) -> Result<ModuleMap> {
    let f: MapFile = read_json(path)?;
    map_from_file(&f, ring, path.parent())
}

fn int_of(e: &IntEntry) -> Result<BigInt> {
    match e {
        IntEntry::Num(n) => Ok(BigInt::from(*n)),
        IntEntry::Text(s) => s.trim().parse().map_err(|_| Error::Parse(format!("not an integer: {s}"))),
    }
}

/// Relation matrix of a `Z` presentation: generators are rows, relations columns.
pub fn relations_from_file(f: &ZFile) -> Result<IntMatrix> {
    if f.ring != "Z" {
        return Err(Error::Parse(format!("expected ring \"Z\", found {:?}", f.ring)));
    }
    let rows = f.generators.unwrap_or(f.relations.len());
    if f.relations.len() != rows {
        return Err(Error::Parse(format!("expected {rows} relation rows")));
    }
    let cols = f.relations.first().map_or(0, Vec::len);
    if f.relations.iter().any(|r| r.len() != cols) {
        return Err(Error::Parse("ragged relation matrix".into()));
    }
    let data = f.relations.iter().map(|r| r.iter().map(int_of).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix::from_rows(cols, data))
}

pub fn load_relations(path: &Path) -> Result<IntMatrix> {
    relations_from_file(&read_json(path)?)
}

pub fn z_file(r: &IntMatrix) -> ZFile {
    ZFile {
        ring: "Z".into(),
        relations: (0..r.rows()).map(|i| r.row(i).iter().map(|x| IntEntry::Text(x.to_string())).collect()).collect(),
        generators: Some(r.rows()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_round_trip() {
        for id in catalog::ALGEBRA_IDS {
            let a = catalog::algebra(id).unwrap();
            let json = serde_json::to_string(&algebra_file(&a)).unwrap();
            let back: AlgebraFile = serde_json::from_str(&json).unwrap();
            assert_eq!(algebra_from_file(&back).unwrap(), a, "{id}");
        }
    }

    #[test]
    fn field_header_forms() {
        let f: AlgebraFile =
            serde_json::from_str(r#"{"field": {"Fp": 3}, "dim": 1, "unit": ["1"], "mult": [[["1"]]]}"#).unwrap();
        assert_eq!(algebra_from_file(&f).unwrap().domain(), Domain::PrimeField(3));
        let bad: AlgebraFile =
            serde_json::from_str(r#"{"field": {"Fp": 4}, "dim": 1, "unit": ["1"], "mult": [[["1"]]]}"#).unwrap();
        assert!(algebra_from_file(&bad).is_err());
    }

    #[test]
    fn module_and_map_round_trip() {
        let r = catalog::ring("kA2").unwrap();
        let m = Module::cogenerator(&r, Side::Right);
        let f = module_file(&m);
        let json = serde_json::to_string(&f).unwrap();
        assert!(json.contains("\"@kA2\""));
        let back = module_from_file(&serde_json::from_str(&json).unwrap(), None, None).unwrap();
        assert_eq!(back.actions(), m.actions());
        let id = m.identity_map();
        let mf: MapFile = serde_json::from_str(&serde_json::to_string(&map_file(&id)).unwrap()).unwrap();
        assert!(map_from_file(&mf, Some(&r), None).unwrap().is_isomorphism());
    }

    #[test]
    fn bad_action_is_rejected() {
        let json = r#"{"algebra": "@kx2", "side": "left", "dim": 1, "action": [[["1"]], [["1"]]]}"#;
        let f: ModuleFile = serde_json::from_str(json).unwrap();
        assert!(module_from_file(&f, None, None).is_err());
    }

    #[test]
    fn integer_relations_accept_numbers_and_strings() {
        let f: ZFile = serde_json::from_str(r#"{"ring": "Z", "relations": [[6, "0"], [0, 0]]}"#).unwrap();
        let r = relations_from_file(&f).unwrap();
        assert_eq!(r, IntMatrix::from_i64(&[&[6, 0], &[0, 0]]));
    }

    #[test]
    fn matrix_header_round_trip() {
        let m = Matrix::from_i64(Domain::Rational, &[&[1, 2], &[3, 4]]);
        let f = matrix_file(&m, Domain::Rational);
        let json = serde_json::to_string(&f).unwrap();
        assert!(json.contains("\"domain\":\"Q\""));
        assert_eq!(matrix_from_file(&serde_json::from_str(&json).unwrap()).unwrap(), m);
    }
}
