//! Instance files: a TOML description of algebras, bimodules, corings,
//! relative comodules and candidate witnesses, resolved into verified
//! objects. Scalars are strings (`num/den` or residues), tensors are sparse
//! index tuples and omitted entries are zero.
//!
//! ```toml
//! field = "rationals"
//!
//! [algebras.R]
//! dim = 2
//! unit = [[0, "1"]]
//! mult = [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"]]
//!
//! [bimodules.U]
//! catalog = "right-regular"
//! ring = "R"
//!
//! [corings.C]
//! catalog = "trivial"
//! ring = "R"
//! ```
//!
//! Any object may instead name a catalog entry, either self-contained
//! (`catalog = "matrix/2"`) or relative to declared objects
//! (`catalog = "regular"` with `ring = "R"`). The algebra `k`, the base
//! field, is always present.

use std::collections::BTreeMap;
use std::ops::Range;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use toml::Spanned;

use crate::algebra::Algebra;
use crate::analysis::InductionPair;
use crate::bimodule::Bimodule;
use crate::catalog;
use crate::comodule::{induce, RelativeComodule};
use crate::coring::Coring;
use crate::error::{Error, Result};
use crate::linalg::{Field, Mat, Scalar};

type SparseVector = Vec<(usize, String)>;
type SparseMatrix = Vec<(usize, usize, String)>;
type SparseTensor = Vec<(usize, usize, usize, String)>;

/// Name of the base field algebra.
pub const BASE: &str = "k";

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct AlgebraDecl {
    #[serde(skip_serializing_if = "Option::is_none")]
    catalog: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    unit: Option<SparseVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mult: Option<SparseTensor>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct BimoduleDecl {
    #[serde(skip_serializing_if = "Option::is_none")]
    catalog: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ring: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    of: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    left: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    right: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    left_action: Option<SparseTensor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    right_action: Option<SparseTensor>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct CoringDecl {
    #[serde(skip_serializing_if = "Option::is_none")]
    catalog: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ring: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    carrier: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    comult: Option<Spanned<SparseMatrix>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    counit: Option<Spanned<SparseMatrix>>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct ComoduleDecl {
    #[serde(skip_serializing_if = "Option::is_none")]
    catalog: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coring: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    carrier: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    of: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    with: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coaction: Option<SparseMatrix>,
}

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct WitnessDecl {
    kind: String,
    #[serde(rename = "U")]
    u: String,
    #[serde(rename = "V")]
    v: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    e: Option<SparseVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    h: Option<SparseMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<SparseMatrix>,
    #[serde(rename = "E", skip_serializing_if = "Option::is_none")]
    big_e: Option<SparseMatrix>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileDecl {
    field: String,
    #[serde(default)]
    algebras: BTreeMap<String, Spanned<AlgebraDecl>>,
    #[serde(default)]
    bimodules: BTreeMap<String, Spanned<BimoduleDecl>>,
    #[serde(default)]
    corings: BTreeMap<String, Spanned<CoringDecl>>,
    #[serde(default)]
    comodules: BTreeMap<String, Spanned<ComoduleDecl>>,
    #[serde(default)]
    witnesses: BTreeMap<String, Spanned<WitnessDecl>>,
}

#[derive(Debug, Serialize)]
struct FileOut {
    field: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    algebras: BTreeMap<String, AlgebraDecl>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    bimodules: BTreeMap<String, BimoduleDecl>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    corings: BTreeMap<String, CoringDecl>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    comodules: BTreeMap<String, ComoduleDecl>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    witnesses: BTreeMap<String, WitnessDecl>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BimoduleEntry {
    pub left: String,
    pub right: String,
    pub value: Bimodule,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoringEntry {
    pub ring: String,
    pub carrier: String,
    pub value: Arc<Coring>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComoduleEntry {
    pub coring: String,
    pub carrier: String,
    pub value: RelativeComodule,
}

/// Candidate dual basis data for a named pair `(U, V)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    First { u: String, v: String, e: Mat, h: Mat },
    Second { u: String, v: String, p: Mat, big_e: Mat },
}

impl Witness {
    pub fn names(&self) -> (&str, &str) {
        match self {
            Witness::First { u, v, .. } | Witness::Second { u, v, .. } => (u, v),
        }
    }
}

/// A resolved object graph: every object verified by its constructor,
/// every reference by name.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub field: Field,
    pub algebras: BTreeMap<String, Arc<Algebra>>,
    pub bimodules: BTreeMap<String, BimoduleEntry>,
    pub corings: BTreeMap<String, CoringEntry>,
    pub comodules: BTreeMap<String, ComoduleEntry>,
    pub witnesses: BTreeMap<String, Witness>,
}

fn locate(text: &str, span: Range<usize>, block: &str) -> String {
    let before = &text[..span.start.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    format!("line {line}, column {col} ({block})")
}

fn at(location: String) -> impl FnOnce(Error) -> Error {
    move |source| Error::At { location, source: Box::new(source) }
}

fn scalar(field: Field, s: &str) -> Result<Scalar> {
    field.parse(s)
}

fn missing(what: &str) -> Error {
    Error::MissingArgument(what.into())
}

fn dense_vector(field: Field, n: usize, entries: &[(usize, String)]) -> Result<Vec<Scalar>> {
    let mut out = vec![field.zero(); n];
    for (i, v) in entries {
        if *i >= n {
            return Err(Error::InputShape(format!("vector index {i} out of range for length {n}")));
        }
        out[*i] = scalar(field, v)?;
    }
    Ok(out)
}

fn dense_matrix(field: Field, rows: usize, cols: usize, entries: &[(usize, usize, String)]) -> Result<Mat> {
    let mut m = Mat::zeros(field, rows, cols);
    for (i, j, v) in entries {
        if *i >= rows || *j >= cols {
            return Err(Error::InputShape(format!("matrix index ({i}, {j}) out of range for {rows}x{cols}")));
        }
        m.set(*i, *j, scalar(field, v)?);
    }
    Ok(m)
}

fn sparse_vector(v: &[Scalar]) -> SparseVector {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.to_string())).collect()
}

fn sparse_matrix(m: &Mat) -> SparseMatrix {
    let mut out = Vec::new();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let x = m.get(i, j);
            if !x.is_zero() {
                out.push((i, j, x.to_string()));
            }
        }
    }
    out
}

/// Action matrices as `[r, m, m', v]` (left) or `[m, s, m', v]` (right).
fn sparse_actions(actions: &[Mat], left: bool) -> SparseTensor {
    let mut out = Vec::new();
    for (r, a) in actions.iter().enumerate() {
        for (row, col, v) in sparse_matrix(a) {
            out.push(if left { (r, col, row, v) } else { (col, r, row, v) });
        }
    }
    out.sort();
    out
}

fn to_triples(field: Field, entries: &[(usize, usize, usize, String)]) -> Result<Vec<(usize, usize, usize, Scalar)>> {
    entries.iter().map(|(a, b, c, v)| Ok((*a, *b, *c, scalar(field, v)?))).collect()
}

fn parse_count(entry: &str, prefix: &str) -> Result<Option<usize>> {
    match entry.strip_prefix(prefix).and_then(|r| r.strip_prefix('/')) {
        None => Ok(None),
        Some(n) => n.parse().map(Some).map_err(|_| Error::UnknownCatalog(entry.into())),
    }
}

/// Self-contained algebra specs: `field`, `matrix/<n>`, `dual-numbers`,
/// `diagonal/<n>`.
pub fn catalog_algebra(field: Field, entry: &str) -> Result<Arc<Algebra>> {
    if entry == "field" {
        return Ok(Algebra::base(field));
    }
    if entry == "dual-numbers" {
        return Ok(Algebra::dual_numbers(field));
    }
    if let Some(n) = parse_count(entry, "matrix")? {
        return Ok(Algebra::matrix(field, n));
    }
    if let Some(n) = parse_count(entry, "diagonal")? {
        return Ok(Algebra::diagonal(field, n));
    }
    Err(Error::UnknownCatalog(format!("algebra {entry:?}")))
}

/// Self-contained bimodule specs: `morita-columns/<n>`, `morita-rows/<n>`,
/// `vector-space/<n>`, `residue`, and `regular/<algebra>`,
/// `left-regular/<algebra>`, `right-regular/<algebra>`.
pub fn catalog_bimodule(field: Field, entry: &str) -> Result<Bimodule> {
    if let Some(n) = parse_count(entry, "morita-columns")? {
        return Ok(catalog::morita_pair(field, n).0);
    }
    if let Some(n) = parse_count(entry, "morita-rows")? {
        return Ok(catalog::morita_pair(field, n).1);
    }
    if let Some(n) = parse_count(entry, "vector-space")? {
        return Ok(Bimodule::vector_space(field, n));
    }
    if entry == "residue" {
        return Ok(catalog::dual_numbers_residue_right(field));
    }
    let ring_form = |prefix: &str| entry.strip_prefix(prefix).and_then(|r| r.strip_prefix('/'));
    if let Some(a) = ring_form("regular") {
        return Ok(Bimodule::regular(catalog_algebra(field, a)?));
    }
    if let Some(a) = ring_form("left-regular") {
        return Ok(Bimodule::left_regular(catalog_algebra(field, a)?));
    }
    if let Some(a) = ring_form("right-regular") {
        return Ok(Bimodule::right_regular(catalog_algebra(field, a)?));
    }
    Err(Error::UnknownCatalog(format!("bimodule {entry:?}")))
}

/// Self-contained coring specs: `matrix/<n>`, `grouplike/<n>`,
/// `trivial/<algebra>`.
pub fn catalog_coring(field: Field, entry: &str) -> Result<Coring> {
    if let Some(n) = parse_count(entry, "matrix")? {
        if n == 0 {
            return Err(Error::UnknownCatalog("matrix coalgebra needs n >= 1".into()));
        }
        return Ok(catalog::matrix_coalgebra(field, n));
    }
    if let Some(n) = parse_count(entry, "grouplike")? {
        return Ok(catalog::grouplike_coalgebra(field, n));
    }
    if let Some(a) = entry.strip_prefix("trivial/") {
        return Ok(Coring::trivial(catalog_algebra(field, a)?));
    }
    Err(Error::UnknownCatalog(format!("coring {entry:?}")))
}

/// Self-contained comodule specs: `morita/<n>` (rows over the trivial
/// coring of `k`) or any coring entry, meaning the coring over itself.
pub fn catalog_comodule(field: Field, entry: &str) -> Result<RelativeComodule> {
    if let Some(n) = parse_count(entry, "morita")? {
        return Ok(catalog::morita_instance(field, n).1);
    }
    Ok(RelativeComodule::from_coring(Arc::new(catalog_coring(field, entry)?)))
}

impl Instance {
    /// An instance holding only the base field algebra.
    pub fn empty(field: Field) -> Instance {
        let mut algebras = BTreeMap::new();
        algebras.insert(BASE.to_string(), Algebra::base(field));
        Instance {
            field,
            algebras,
            bimodules: BTreeMap::new(),
            corings: BTreeMap::new(),
            comodules: BTreeMap::new(),
            witnesses: BTreeMap::new(),
        }
    }

    pub fn load(path: &std::path::Path) -> Result<Instance> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Instance::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Instance> {
        let decl: FileDecl = toml::from_str(text).map_err(|e| Error::Parse(e.to_string().trim_end().to_string()))?;
        let field: Field = decl.field.parse()?;
        let mut inst = Instance::empty(field);
        let mut r = Resolver { text, decl: &decl, inst: &mut inst, visiting: Vec::new() };
        for name in decl.algebras.keys() {
            r.algebra(name)?;
        }
        for name in decl.bimodules.keys() {
            r.bimodule(name)?;
        }
        for name in decl.corings.keys() {
            r.coring(name)?;
        }
        for name in decl.comodules.keys() {
            r.comodule(name)?;
        }
        for (name, w) in &decl.witnesses {
            let loc = locate(text, w.span(), &format!("witnesses.{name}"));
            let witness = r.inst.witness_from_decl(w.get_ref()).map_err(at(loc))?;
            r.inst.witnesses.insert(name.clone(), witness);
        }
        Ok(inst)
    }

    pub fn algebra(&self, name: &str) -> Result<&Arc<Algebra>> {
        self.algebras.get(name).ok_or_else(|| Error::Resolve(format!("no algebra named {name:?}")))
    }

    pub fn bimodule(&self, name: &str) -> Result<&BimoduleEntry> {
        self.bimodules.get(name).ok_or_else(|| Error::Resolve(format!("no bimodule named {name:?}")))
    }

    pub fn coring(&self, name: &str) -> Result<&CoringEntry> {
        self.corings.get(name).ok_or_else(|| Error::Resolve(format!("no coring named {name:?}")))
    }

    pub fn comodule(&self, name: &str) -> Result<&ComoduleEntry> {
        self.comodules.get(name).ok_or_else(|| Error::Resolve(format!("no comodule named {name:?}")))
    }

    pub fn witness(&self, name: &str) -> Result<&Witness> {
        self.witnesses.get(name).ok_or_else(|| Error::Resolve(format!("no witness named {name:?}")))
    }

    /// The pair `(U, V)` named by a bimodule and a comodule.
    pub fn pair(&self, u: &str, v: &str) -> Result<InductionPair> {
        InductionPair::new(&self.bimodule(u)?.value, &self.comodule(v)?.value)
    }

    /// Name of an algebra equal to `a`, registering it as `fallback` if
    /// none is declared.
    fn name_algebra(&mut self, a: &Arc<Algebra>, fallback: String) -> Result<String> {
        if let Some((n, _)) = self.algebras.iter().find(|(_, b)| *b == a) {
            return Ok(n.clone());
        }
        self.insert_algebra(fallback.clone(), a.clone())?;
        Ok(fallback)
    }

    fn insert_algebra(&mut self, name: String, a: Arc<Algebra>) -> Result<()> {
        match self.algebras.get(&name) {
            Some(b) if *b != a => Err(Error::Resolve(format!("name clash for algebra {name:?}"))),
            _ => {
                self.algebras.insert(name, a);
                Ok(())
            }
        }
    }

    fn insert_bimodule(&mut self, name: &str, value: Bimodule) -> Result<()> {
        let left = self.name_algebra(value.left_ring(), format!("{name}.left"))?;
        let right = self.name_algebra(value.right_ring(), format!("{name}.right"))?;
        let entry = BimoduleEntry { left, right, value };
        match self.bimodules.get(name) {
            Some(b) if *b != entry => Err(Error::Resolve(format!("name clash for bimodule {name:?}"))),
            _ => {
                self.bimodules.insert(name.to_string(), entry);
                Ok(())
            }
        }
    }

    fn insert_coring(&mut self, name: &str, value: Arc<Coring>) -> Result<()> {
        let ring = self.name_algebra(value.ring(), format!("{name}.ring"))?;
        let carrier = format!("{name}.carrier");
        self.insert_bimodule(&carrier, value.carrier().clone())?;
        self.corings.insert(name.to_string(), CoringEntry { ring, carrier, value });
        Ok(())
    }

    /// Registers a self-contained comodule and everything it depends on.
    fn insert_comodule(&mut self, name: &str, value: RelativeComodule) -> Result<()> {
        let coring = format!("{name}.coring");
        self.insert_coring(&coring, value.coring().clone())?;
        let carrier = if value.carrier() == value.coring().carrier() {
            self.corings[&coring].carrier.clone()
        } else {
            let c = format!("{name}.carrier");
            self.insert_bimodule(&c, value.carrier().clone())?;
            c
        };
        self.comodules.insert(name.to_string(), ComoduleEntry { coring, carrier, value });
        Ok(())
    }

    /// Resolves a command-line reference: a declared name, or `catalog:<entry>`
    /// registered under that reference.
    pub fn resolve_bimodule(&mut self, reference: &str) -> Result<String> {
        if let Some(entry) = reference.strip_prefix("catalog:") {
            let b = catalog_bimodule(self.field, entry)?;
            self.insert_bimodule(reference, b)?;
        }
        self.bimodule(reference)?;
        Ok(reference.to_string())
    }

    pub fn resolve_coring(&mut self, reference: &str) -> Result<String> {
        if let Some(entry) = reference.strip_prefix("catalog:") {
            let c = catalog_coring(self.field, entry)?;
            self.insert_coring(reference, Arc::new(c))?;
        }
        self.coring(reference)?;
        Ok(reference.to_string())
    }

    pub fn resolve_comodule(&mut self, reference: &str) -> Result<String> {
        if let Some(entry) = reference.strip_prefix("catalog:") {
            let v = catalog_comodule(self.field, entry)?;
            self.insert_comodule(reference, v)?;
        }
        self.comodule(reference)?;
        Ok(reference.to_string())
    }

    /// The coring named `reference`, as a comodule over itself.
    pub fn coring_as_comodule(&mut self, reference: &str) -> Result<String> {
        let name = self.resolve_coring(reference)?;
        let entry = self.corings[&name].clone();
        let comodule = format!("{name}.self");
        let value = RelativeComodule::from_coring(entry.value.clone());
        self.comodules.insert(comodule.clone(), ComoduleEntry { coring: name, carrier: entry.carrier, value });
        Ok(comodule)
    }

    fn witness_from_decl(&self, w: &WitnessDecl) -> Result<Witness> {
        let pair = self.pair(&w.u, &w.v)?;
        let field = self.field;
        let none: SparseMatrix = Vec::new();
        match w.kind.as_str() {
            "first" => {
                let e = dense_vector(field, pair.uv().dim(), w.e.as_deref().unwrap_or_default())?;
                let rows = pair.coring().ring().dim();
                let h = dense_matrix(field, rows, pair.zdata().zc().dim(), w.h.as_ref().unwrap_or(&none))?;
                Ok(Witness::First { u: w.u.clone(), v: w.v.clone(), e: Mat::column_vector(field, &e), h })
            }
            "second" => {
                let p = dense_matrix(field, pair.vu().dim(), pair.coring().dim(), w.p.as_ref().unwrap_or(&none))?;
                let rows = pair.v().right_ring().dim();
                let big_e = dense_matrix(field, rows, pair.uv().dim(), w.big_e.as_ref().unwrap_or(&none))?;
                Ok(Witness::Second { u: w.u.clone(), v: w.v.clone(), p, big_e })
            }
            other => Err(Error::Parse(format!("witness kind must be \"first\" or \"second\", got {other:?}"))),
        }
    }

    /// The canonical text form: every object explicit, names sorted.
    pub fn emit(&self) -> String {
        let algebras = self
            .algebras
            .iter()
            .filter(|(n, _)| n.as_str() != BASE)
            .map(|(n, a)| {
                let d = a.dim();
                let mut mult = Vec::new();
                for (idx, x) in a.structure_constants().iter().enumerate() {
                    if !x.is_zero() {
                        mult.push((idx / (d * d), (idx / d) % d, idx % d, x.to_string()));
                    }
                }
                let decl =
                    AlgebraDecl { catalog: None, dim: Some(d), unit: Some(sparse_vector(a.unit())), mult: Some(mult) };
                (n.clone(), decl)
            })
            .collect();
        let bimodules = self
            .bimodules
            .iter()
            .map(|(n, b)| {
                let decl = BimoduleDecl {
                    left: Some(b.left.clone()),
                    right: Some(b.right.clone()),
                    dim: Some(b.value.dim()),
                    left_action: Some(sparse_actions(b.value.left_basis_actions(), true)),
                    right_action: Some(sparse_actions(b.value.right_basis_actions(), false)),
                    ..BimoduleDecl::default()
                };
                (n.clone(), decl)
            })
            .collect();
        let corings = self
            .corings
            .iter()
            .map(|(n, c)| {
                let decl = CoringDecl {
                    catalog: None,
                    ring: Some(c.ring.clone()),
                    carrier: Some(c.carrier.clone()),
                    comult: Some(Spanned::new(0..0, sparse_matrix(c.value.comult()))),
                    counit: Some(Spanned::new(0..0, sparse_matrix(c.value.counit()))),
                };
                (n.clone(), decl)
            })
            .collect();
        let comodules = self
            .comodules
            .iter()
            .map(|(n, c)| {
                let decl = ComoduleDecl {
                    coring: Some(c.coring.clone()),
                    carrier: Some(c.carrier.clone()),
                    coaction: Some(sparse_matrix(c.value.coaction())),
                    ..ComoduleDecl::default()
                };
                (n.clone(), decl)
            })
            .collect();
        let witnesses = self
            .witnesses
            .iter()
            .map(|(n, w)| {
                let decl = match w {
                    Witness::First { u, v, e, h } => WitnessDecl {
                        kind: "first".into(),
                        u: u.clone(),
                        v: v.clone(),
                        e: Some(sparse_vector(&e.column(0))),
                        h: Some(sparse_matrix(h)),
                        ..WitnessDecl::default()
                    },
                    Witness::Second { u, v, p, big_e } => WitnessDecl {
                        kind: "second".into(),
                        u: u.clone(),
                        v: v.clone(),
                        p: Some(sparse_matrix(p)),
                        big_e: Some(sparse_matrix(big_e)),
                        ..WitnessDecl::default()
                    },
                };
                (n.clone(), decl)
            })
            .collect();
        let out = FileOut { field: self.field.to_string(), algebras, bimodules, corings, comodules, witnesses };
        toml::to_string(&out).expect("instance data serializes")
    }
}

/// Resolves declarations in dependency order, detecting cycles.
struct Resolver<'a> {
    text: &'a str,
    decl: &'a FileDecl,
    inst: &'a mut Instance,
    visiting: Vec<String>,
}

impl Resolver<'_> {
    fn enter(&mut self, kind: &str, name: &str) -> Result<()> {
        let key = format!("{kind}.{name}");
        if self.visiting.contains(&key) {
            return Err(Error::Resolve(format!("cyclic reference through {key}")));
        }
        self.visiting.push(key);
        Ok(())
    }

    fn algebra(&mut self, name: &str) -> Result<String> {
        if self.inst.algebras.contains_key(name) {
            return Ok(name.to_string());
        }
        let Some(d) = self.decl.algebras.get(name) else {
            return Err(Error::Resolve(format!("no algebra named {name:?}")));
        };
        let loc = locate(self.text, d.span(), &format!("algebras.{name}"));
        let field = self.inst.field;
        let build = || -> Result<Arc<Algebra>> {
            let d = d.get_ref();
            if let Some(entry) = &d.catalog {
                return catalog_algebra(field, entry);
            }
            let dim = d.dim.ok_or_else(|| missing("algebra dim"))?;
            let unit = dense_vector(field, dim, d.unit.as_ref().ok_or_else(|| missing("algebra unit"))?)?;
            let mult = to_triples(field, d.mult.as_ref().ok_or_else(|| missing("algebra mult"))?)?;
            Ok(Arc::new(Algebra::from_triples(field, dim, &mult, unit)?))
        };
        let a = build().map_err(at(loc))?;
        self.inst.algebras.insert(name.to_string(), a);
        Ok(name.to_string())
    }

    fn bimodule(&mut self, name: &str) -> Result<String> {
        if self.inst.bimodules.contains_key(name) {
            return Ok(name.to_string());
        }
        let Some(d) = self.decl.bimodules.get(name) else {
            return Err(Error::Resolve(format!("no bimodule named {name:?}")));
        };
        let loc = locate(self.text, d.span(), &format!("bimodules.{name}"));
        self.enter("bimodules", name)?;
        let built = self.build_bimodule(d.get_ref()).map_err(at(loc.clone()))?;
        self.visiting.pop();
        match built {
            Built::Named(entry) => {
                self.inst.bimodules.insert(name.to_string(), entry);
            }
            Built::Anonymous(b) => self.inst.insert_bimodule(name, b).map_err(at(loc))?,
        }
        Ok(name.to_string())
    }

    fn build_bimodule(&mut self, d: &BimoduleDecl) -> Result<Built> {
        let field = self.inst.field;
        if let Some(kind) = &d.catalog {
            if let Some(of) = &d.of {
                if kind != "dual" {
                    return Err(Error::UnknownCatalog(format!("bimodule {kind:?} with `of`")));
                }
                let of = self.bimodule(of)?;
                let entry = &self.inst.bimodules[&of];
                let dual = catalog::dual_pair(&entry.value)?.dual;
                return Ok(Built::Named(BimoduleEntry {
                    left: entry.right.clone(),
                    right: entry.left.clone(),
                    value: dual,
                }));
            }
            if let Some(ring) = &d.ring {
                let ring = self.algebra(ring)?;
                let r = self.inst.algebras[&ring].clone();
                let base = BASE.to_string();
                let (left, right, value) = match kind.as_str() {
                    "regular" => (ring.clone(), ring, Bimodule::regular(r)),
                    "left-regular" => (ring, base, Bimodule::left_regular(r)),
                    "right-regular" => (base, ring, Bimodule::right_regular(r)),
                    s => {
                        if let Some(n) = parse_count(s, "free-left")? {
                            (ring, base, catalog::free_left_module(r, n))
                        } else if let Some(n) = parse_count(s, "free-right")? {
                            (base, ring, catalog::free_right_module(r, n))
                        } else {
                            return Err(Error::UnknownCatalog(format!("bimodule {s:?} over a ring")));
                        }
                    }
                };
                return Ok(Built::Named(BimoduleEntry { left, right, value }));
            }
            return Ok(Built::Anonymous(catalog_bimodule(field, kind)?));
        }
        let left = self.algebra(d.left.as_deref().ok_or_else(|| missing("bimodule left"))?)?;
        let right = self.algebra(d.right.as_deref().ok_or_else(|| missing("bimodule right"))?)?;
        let dim = d.dim.ok_or_else(|| missing("bimodule dim"))?;
        let empty = Vec::new();
        let la = to_triples(field, d.left_action.as_ref().unwrap_or(&empty))?;
        let ra = to_triples(field, d.right_action.as_ref().unwrap_or(&empty))?;
        let lr = self.inst.algebras[&left].clone();
        let rr = self.inst.algebras[&right].clone();
        let value = Bimodule::from_triples(lr, rr, dim, &la, &ra)?;
        Ok(Built::Named(BimoduleEntry { left, right, value }))
    }

    fn coring(&mut self, name: &str) -> Result<String> {
        if self.inst.corings.contains_key(name) {
            return Ok(name.to_string());
        }
        let Some(d) = self.decl.corings.get(name) else {
            return Err(Error::Resolve(format!("no coring named {name:?}")));
        };
        let block = format!("corings.{name}");
        let loc = locate(self.text, d.span(), &block);
        let field = self.inst.field;
        let d = d.get_ref();
        if let Some(kind) = &d.catalog {
            let c = match (kind.as_str(), &d.ring) {
                ("trivial", Some(ring)) => {
                    let ring = self.algebra(ring).map_err(at(loc.clone()))?;
                    Coring::trivial(self.inst.algebras[&ring].clone())
                }
                _ => catalog_coring(field, kind).map_err(at(loc.clone()))?,
            };
            self.inst.insert_coring(name, Arc::new(c)).map_err(at(loc))?;
            return Ok(name.to_string());
        }
        let carrier = d.carrier.as_deref().ok_or_else(|| missing("coring carrier")).map_err(at(loc.clone()))?;
        let carrier = self.bimodule(carrier).map_err(at(loc.clone()))?;
        let entry = self.inst.bimodules[&carrier].clone();
        if let Some(ring) = &d.ring {
            if *ring != entry.left {
                let e =
                    Error::RingMismatch(format!("coring ring {ring:?} differs from the carrier's {:?}", entry.left));
                return Err(at(loc)(e));
            }
        }
        let b = &entry.value;
        let cc = crate::tensor::tensor_over_ring(b, b).map_err(at(loc.clone()))?;
        let (comult, comult_loc) = match &d.comult {
            Some(m) => (
                dense_matrix(field, cc.dim(), b.dim(), m.get_ref()),
                locate(self.text, m.span(), &format!("{block}.comult")),
            ),
            None => return Err(at(loc)(missing("coring comult"))),
        };
        let (counit, counit_loc) = match &d.counit {
            Some(m) => (
                dense_matrix(field, b.left_ring().dim(), b.dim(), m.get_ref()),
                locate(self.text, m.span(), &format!("{block}.counit")),
            ),
            None => return Err(at(loc)(missing("coring counit"))),
        };
        let comult = comult.map_err(at(comult_loc.clone()))?;
        let counit = counit.map_err(at(counit_loc.clone()))?;
        let c = Coring::new(b.clone(), comult, counit).map_err(|e| {
            let l = match e {
                Error::CounitLawFails { .. } => counit_loc,
                Error::NotBimoduleMap(_) | Error::NotCoassociative(_) => comult_loc,
                _ => loc,
            };
            at(l)(e)
        })?;
        let ring = entry.left.clone();
        self.inst.corings.insert(name.to_string(), CoringEntry { ring, carrier, value: Arc::new(c) });
        Ok(name.to_string())
    }

    fn comodule(&mut self, name: &str) -> Result<String> {
        if self.inst.comodules.contains_key(name) {
            return Ok(name.to_string());
        }
        let Some(d) = self.decl.comodules.get(name) else {
            return Err(Error::Resolve(format!("no comodule named {name:?}")));
        };
        let loc = locate(self.text, d.span(), &format!("comodules.{name}"));
        self.enter("comodules", name)?;
        let result = self.build_comodule(name, d.get_ref()).map_err(at(loc));
        self.visiting.pop();
        result?;
        Ok(name.to_string())
    }

    fn build_comodule(&mut self, name: &str, d: &ComoduleDecl) -> Result<()> {
        let field = self.inst.field;
        let kind = d.catalog.as_deref();
        if kind == Some("induced") {
            let of = self.comodule(d.of.as_deref().ok_or_else(|| missing("comodule of"))?)?;
            let with = self.bimodule(d.with.as_deref().ok_or_else(|| missing("comodule with"))?)?;
            let v = self.inst.comodules[&of].clone();
            let w = self.inst.bimodules[&with].clone();
            let (value, _) = induce(&v.value, &w.value)?;
            let carrier = format!("{name}.carrier");
            let left = self.inst.bimodules[&v.carrier].left.clone();
            let entry = BimoduleEntry { left, right: w.right.clone(), value: value.carrier().clone() };
            self.inst.bimodules.insert(carrier.clone(), entry);
            self.inst.comodules.insert(name.to_string(), ComoduleEntry { coring: v.coring, carrier, value });
            return Ok(());
        }
        if kind.is_some() && d.coring.is_none() {
            return self.inst.insert_comodule(name, catalog_comodule(field, kind.unwrap_or_default())?);
        }
        let coring = self.coring(d.coring.as_deref().ok_or_else(|| missing("comodule coring"))?)?;
        let c = self.inst.corings[&coring].clone();
        let (carrier, value) = match kind {
            Some("coring") => (c.carrier.clone(), RelativeComodule::from_coring(c.value.clone())),
            Some("canonical") => {
                let carrier = self.bimodule(d.carrier.as_deref().ok_or_else(|| missing("comodule carrier"))?)?;
                let b = self.inst.bimodules[&carrier].value.clone();
                (carrier, RelativeComodule::canonical(c.value.clone(), b)?)
            }
            Some(other) => return Err(Error::UnknownCatalog(format!("comodule {other:?} over a coring"))),
            None => {
                let carrier = self.bimodule(d.carrier.as_deref().ok_or_else(|| missing("comodule carrier"))?)?;
                let b = self.inst.bimodules[&carrier].value.clone();
                let cv = crate::tensor::tensor_over_ring(c.value.carrier(), &b)?;
                let empty = Vec::new();
                let coaction = dense_matrix(field, cv.dim(), b.dim(), d.coaction.as_ref().unwrap_or(&empty))?;
                (carrier, RelativeComodule::new(c.value.clone(), b, coaction)?)
            }
        };
        self.inst.comodules.insert(name.to_string(), ComoduleEntry { coring, carrier, value });
        Ok(())
    }
}

enum Built {
    Named(BimoduleEntry),
    Anonymous(Bimodule),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_coring_file_loads() {
        let text = "field = \"rationals\"\n[corings.C]\ncatalog = \"trivial\"\nring = \"k\"\n";
        let inst = Instance::parse(text).unwrap();
        assert_eq!(inst.coring("C").unwrap().value.dim(), 1);
    }

    #[test]
    fn catalog_matches_builder() {
        let inst = Instance::parse("field = \"rationals\"\n[corings.C]\ncatalog = \"matrix/2\"\n").unwrap();
        assert_eq!(*inst.coring("C").unwrap().value, catalog::matrix_coalgebra(Field::Rationals, 2));
    }

    #[test]
    fn round_trip() {
        let text = r#"
field = "rationals"
[algebras.R]
catalog = "dual-numbers"
[bimodules.U]
catalog = "right-regular"
ring = "R"
[bimodules.W]
catalog = "morita-columns/2"
[corings.C]
catalog = "trivial"
ring = "R"
[comodules.V]
coring = "C"
catalog = "coring"
[comodules.M]
catalog = "matrix/2"
"#;
        let inst = Instance::parse(text).unwrap();
        let again = Instance::parse(&inst.emit()).unwrap();
        assert_eq!(inst, again);
        assert_eq!(inst.emit(), again.emit());
    }

    #[test]
    fn errors_carry_positions() {
        let text = "field = \"rationals\"\n\n[bimodules.U]\ncatalog = \"regular\"\nring = \"nope\"\n";
        let err = Instance::parse(text).unwrap_err();
        let Error::At { location, source } = &err else { panic!("{err:?}") };
        assert!(location.starts_with("line 3"), "{location}");
        assert!(matches!(**source, Error::Resolve(_)));
    }
}
