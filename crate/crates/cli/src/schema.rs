//! The on-disk document format: exact JSON, canonical bytes.
//!
//! One document holds one tagged object over one coefficient field at
//! one truncation degree.  Scalars stay exact through text: rational
//! entries are reduced `"p/q"` strings (plain integer strings when the
//! denominator is 1) and prime-field entries are integers in `0..p`.
//! Matrices are row-major entry arrays with explicit shape.  Saving is
//! canonical — keys sorted, no insignificant whitespace, one trailing
//! newline — so saving a loaded canonical file reproduces it byte for
//! byte.
//!
//! Loading re-asserts every structural invariant of the object (shapes,
//! `d.d = 0`, simplicial identities, coalgebra and algebra laws) and
//! reports the first failure with its equation name and degree/level.

use crate::{CliError, Result};
use homalg::algebra::{self, DGAlgebra};
use homalg::chain::{ChainComplex, ChainMap};
use homalg::coalg::{self, CoalgebraMap, DGCoalgebra, SimplicialCoalgebra};
use homalg::cochain::CochainComplex;
use homalg::error::Error;
use homalg::field::{Field, Scalar};
use homalg::lifting::LiftingSquare;
use homalg::matrix::Matrix;
use homalg::simplicial::{SimplicialMap, SimplicialVectorSpace};
use serde_json::{Map, Value};

pub const SCHEMA_VERSION: u64 = 1;

/// The tagged payload of a document.
#[derive(Debug, Clone)]
pub enum Object {
    Chain(ChainComplex),
    Simplicial(SimplicialVectorSpace),
    Coalgebra(DGCoalgebra),
    SimplicialCoalgebra(SimplicialCoalgebra),
    Algebra(DGAlgebra),
    ChainMap(ChainMap),
    SimplicialMap(SimplicialMap),
    CoalgebraMap(CoalgebraMap),
    Square(LiftingSquare),
}

impl Object {
    /// The truncation degree the object lives under.
    pub fn truncation(&self) -> usize {
        match self {
            Object::Chain(c) => c.top(),
            Object::Simplicial(x) => x.top(),
            Object::Coalgebra(c) => c.carrier.top(),
            Object::SimplicialCoalgebra(c) => c.carrier.top(),
            Object::Algebra(a) => a.carrier.top(),
            Object::ChainMap(f) => f.source().top(),
            Object::SimplicialMap(f) => f.source().top(),
            Object::CoalgebraMap(f) => f.map().source().top(),
            Object::Square(sq) => sq.left.source().top(),
        }
    }
}

/// One loaded (validated) document.
#[derive(Debug, Clone)]
pub struct Document {
    pub field: Field,
    pub object: Object,
}

/// Build a JSON object; the map is key-sorted, so insertion order never
/// leaks into the output.
pub(crate) fn obj(entries: Vec<(&str, Value)>) -> Value {
    Value::Object(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}

/// Serialize with the canonical byte form: sorted keys, compact
/// separators, one trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("reports and documents serialize");
    s.push('\n');
    s
}

/// The flag/document spelling of a coefficient field.
pub fn field_spec(field: Field) -> String {
    match field {
        Field::Rationals => "Q".to_string(),
        Field::Prime(p) => format!("GFp:{p}"),
    }
}

/// Parse `"Q"` or `"GFp:<p>"`; the characteristic is checked for
/// primality.
pub fn parse_field_spec(text: &str) -> Result<Field> {
    if text == "Q" {
        return Ok(Field::Rationals);
    }
    if let Some(rest) = text.strip_prefix("GFp:") {
        let p: u64 = rest
            .parse()
            .map_err(|_| CliError::Schema(format!("field spec {text:?}: the characteristic must be a positive integer")))?;
        return Ok(Field::prime(p)?);
    }
    Err(CliError::Schema(format!("field spec {text:?}: expected \"Q\" or \"GFp:<p>\"")))
}

// ---------------------------------------------------------------------
// JSON access helpers: every reader names the position it was looking
// at, so schema errors point into the document.

fn as_object<'a>(v: &'a Value, at: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| CliError::Schema(format!("{at}: expected a JSON object")))
}

fn as_array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| CliError::Schema(format!("{at}: expected a JSON array")))
}

fn expect_keys(o: &Map<String, Value>, keys: &[&str], at: &str) -> Result<()> {
    for k in keys {
        if !o.contains_key(*k) {
            return Err(CliError::Schema(format!("{at}: missing key {k:?}")));
        }
    }
    for k in o.keys() {
        if !keys.contains(&k.as_str()) {
            return Err(CliError::Schema(format!("{at}: unknown key {k:?}")));
        }
    }
    Ok(())
}

fn get<'a>(o: &'a Map<String, Value>, key: &str, at: &str) -> Result<&'a Value> {
    o.get(key).ok_or_else(|| CliError::Schema(format!("{at}: missing key {key:?}")))
}

fn get_u64(o: &Map<String, Value>, key: &str, at: &str) -> Result<u64> {
    get(o, key, at)?
        .as_u64()
        .ok_or_else(|| CliError::Schema(format!("{at}.{key}: expected a non-negative integer")))
}

fn get_usize(o: &Map<String, Value>, key: &str, at: &str) -> Result<usize> {
    Ok(get_u64(o, key, at)? as usize)
}

fn get_str<'a>(o: &'a Map<String, Value>, key: &str, at: &str) -> Result<&'a str> {
    get(o, key, at)?
        .as_str()
        .ok_or_else(|| CliError::Schema(format!("{at}.{key}: expected a string")))
}

fn usize_array(o: &Map<String, Value>, key: &str, at: &str) -> Result<Vec<usize>> {
    let arr = as_array(get(o, key, at)?, &format!("{at}.{key}"))?;
    arr.iter()
        .enumerate()
        .map(|(i, v)| {
            v.as_u64()
                .map(|n| n as usize)
                .ok_or_else(|| CliError::Schema(format!("{at}.{key}[{i}]: expected a non-negative integer")))
        })
        .collect()
}

// ---------------------------------------------------------------------
// Scalars and matrices.

fn scalar_value(field: Field, s: &Scalar) -> Value {
    match field {
        Field::Rationals => Value::String(field.format(s)),
        Field::Prime(_) => {
            Value::from(field.format(s).parse::<u64>().expect("prime-field scalars print as integers"))
        }
    }
}

fn scalar_from(field: Field, v: &Value, at: &str) -> Result<Scalar> {
    let text = match field {
        Field::Rationals => v
            .as_str()
            .ok_or_else(|| CliError::Schema(format!("{at}: rational entries are \"p/q\" strings")))?
            .to_string(),
        Field::Prime(p) => v
            .as_u64()
            .ok_or_else(|| CliError::Schema(format!("{at}: GF({p}) entries are integers in 0..{p}")))?
            .to_string(),
    };
    field.parse(&text).map_err(|e| CliError::Schema(format!("{at}: {e}")))
}

pub fn matrix_value(m: &Matrix) -> Value {
    let field = m.field();
    let mut entries = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            entries.push(scalar_value(field, m.get(i, j)));
        }
    }
    obj(vec![
        ("cols", Value::from(m.cols() as u64)),
        ("entries", Value::Array(entries)),
        ("rows", Value::from(m.rows() as u64)),
    ])
}

pub fn matrix_from(field: Field, v: &Value, at: &str) -> Result<Matrix> {
    let o = as_object(v, at)?;
    expect_keys(o, &["cols", "entries", "rows"], at)?;
    let rows = get_usize(o, "rows", at)?;
    let cols = get_usize(o, "cols", at)?;
    let arr = as_array(get(o, "entries", at)?, &format!("{at}.entries"))?;
    if arr.len() != rows * cols {
        return Err(CliError::Schema(format!(
            "{at}.entries: a {rows}x{cols} matrix has {} entries, got {}",
            rows * cols,
            arr.len()
        )));
    }
    let mut entries = Vec::with_capacity(arr.len());
    for (idx, e) in arr.iter().enumerate() {
        entries.push(scalar_from(field, e, &format!("{at}.entries[{idx}]"))?);
    }
    Ok(Matrix::from_fn(field, rows, cols, |i, j| entries[i * cols + j].clone()))
}

fn matrix_array(field: Field, v: &Value, at: &str) -> Result<Vec<Matrix>> {
    let arr = as_array(v, at)?;
    arr.iter()
        .enumerate()
        .map(|(i, m)| matrix_from(field, m, &format!("{at}[{i}]")))
        .collect()
}

fn dims_value(dims: &[usize]) -> Value {
    Value::Array(dims.iter().map(|&d| Value::from(d as u64)).collect())
}

// ---------------------------------------------------------------------
// Chain and cochain complexes.

fn chain_value(c: &ChainComplex) -> Value {
    obj(vec![
        ("differentials", Value::Array((1..=c.top()).map(|n| matrix_value(c.d(n))).collect())),
        ("dims", dims_value(c.dims())),
    ])
}

fn chain_from(field: Field, v: &Value, top: usize, at: &str) -> Result<ChainComplex> {
    let o = as_object(v, at)?;
    expect_keys(o, &["differentials", "dims"], at)?;
    let dims = usize_array(o, "dims", at)?;
    if dims.len() != top + 1 {
        return Err(CliError::Schema(format!(
            "{at}.dims: truncation {top} needs {} degrees, got {}",
            top + 1,
            dims.len()
        )));
    }
    let diffs = matrix_array(field, get(o, "differentials", at)?, &format!("{at}.differentials"))?;
    if diffs.len() != top {
        return Err(CliError::Schema(format!(
            "{at}.differentials: expected {top} maps (d_1 through d_{top}), got {}",
            diffs.len()
        )));
    }
    Ok(ChainComplex::new(field, dims, diffs)?)
}

fn cochain_value(c: &CochainComplex) -> Value {
    obj(vec![
        ("differentials", Value::Array((0..c.top()).map(|n| matrix_value(c.d(n))).collect())),
        ("dims", dims_value(c.dims())),
    ])
}

fn cochain_from(field: Field, v: &Value, top: usize, at: &str) -> Result<CochainComplex> {
    let o = as_object(v, at)?;
    expect_keys(o, &["differentials", "dims"], at)?;
    let dims = usize_array(o, "dims", at)?;
    if dims.len() != top + 1 {
        return Err(CliError::Schema(format!(
            "{at}.dims: truncation {top} needs {} degrees, got {}",
            top + 1,
            dims.len()
        )));
    }
    let diffs = matrix_array(field, get(o, "differentials", at)?, &format!("{at}.differentials"))?;
    if diffs.len() != top {
        return Err(CliError::Schema(format!(
            "{at}.differentials: expected {top} maps (d^0 through d^{}), got {}",
            top.saturating_sub(1),
            diffs.len()
        )));
    }
    Ok(CochainComplex::new(field, dims, diffs)?)
}

// ---------------------------------------------------------------------
// Simplicial vector spaces.

fn simplicial_value(x: &SimplicialVectorSpace) -> Value {
    let faces: Vec<Value> = (1..=x.top())
        .map(|n| Value::Array((0..=n).map(|i| matrix_value(x.face(n, i))).collect()))
        .collect();
    let degens: Vec<Value> = (0..x.top())
        .map(|n| Value::Array((0..=n).map(|i| matrix_value(x.degen(n, i))).collect()))
        .collect();
    obj(vec![
        ("degeneracies", Value::Array(degens)),
        ("dims", dims_value(x.dims())),
        ("faces", Value::Array(faces)),
    ])
}

fn simplicial_from(field: Field, v: &Value, top: usize, at: &str) -> Result<SimplicialVectorSpace> {
    let o = as_object(v, at)?;
    expect_keys(o, &["degeneracies", "dims", "faces"], at)?;
    let dims = usize_array(o, "dims", at)?;
    if dims.len() != top + 1 {
        return Err(CliError::Schema(format!(
            "{at}.dims: truncation {top} needs {} levels, got {}",
            top + 1,
            dims.len()
        )));
    }
    let faces_at = format!("{at}.faces");
    let faces = as_array(get(o, "faces", at)?, &faces_at)?
        .iter()
        .enumerate()
        .map(|(i, level)| matrix_array(field, level, &format!("{faces_at}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let degens_at = format!("{at}.degeneracies");
    let degens = as_array(get(o, "degeneracies", at)?, &degens_at)?
        .iter()
        .enumerate()
        .map(|(i, level)| matrix_array(field, level, &format!("{degens_at}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(SimplicialVectorSpace::new(field, dims, faces, degens)?)
}

// ---------------------------------------------------------------------
// Coalgebras and algebras.

fn coalgebra_value(c: &DGCoalgebra) -> Value {
    obj(vec![
        ("complex", chain_value(&c.carrier)),
        ("comultiplications", Value::Array(c.comult.iter().map(matrix_value).collect())),
        ("counit", matrix_value(&c.counit)),
    ])
}

fn coalgebra_from(field: Field, v: &Value, top: usize, at: &str) -> Result<DGCoalgebra> {
    let o = as_object(v, at)?;
    expect_keys(o, &["complex", "comultiplications", "counit"], at)?;
    let carrier = chain_from(field, get(o, "complex", at)?, top, &format!("{at}.complex"))?;
    let comult = matrix_array(field, get(o, "comultiplications", at)?, &format!("{at}.comultiplications"))?;
    let counit = matrix_from(field, get(o, "counit", at)?, &format!("{at}.counit"))?;
    let c = DGCoalgebra::new(carrier, comult, counit)?;
    if let Some((law, degree)) = coalg::first_dg_coalgebra_failure(&c) {
        return Err(CliError::Core(Error::broken(law, format!("degree {degree}"))));
    }
    Ok(c)
}

fn simplicial_coalgebra_value(c: &SimplicialCoalgebra) -> Value {
    obj(vec![
        ("comultiplications", Value::Array(c.comult.iter().map(matrix_value).collect())),
        ("counits", Value::Array(c.counit.iter().map(matrix_value).collect())),
        ("space", simplicial_value(&c.carrier)),
    ])
}

fn simplicial_coalgebra_from(field: Field, v: &Value, top: usize, at: &str) -> Result<SimplicialCoalgebra> {
    let o = as_object(v, at)?;
    expect_keys(o, &["comultiplications", "counits", "space"], at)?;
    let carrier = simplicial_from(field, get(o, "space", at)?, top, &format!("{at}.space"))?;
    let comult = matrix_array(field, get(o, "comultiplications", at)?, &format!("{at}.comultiplications"))?;
    let counit = matrix_array(field, get(o, "counits", at)?, &format!("{at}.counits"))?;
    let c = SimplicialCoalgebra::new(carrier, comult, counit)?;
    if let Some((law, level)) = coalg::first_simplicial_coalgebra_failure(&c) {
        return Err(CliError::Core(Error::broken(law, format!("level {level}"))));
    }
    Ok(c)
}

fn algebra_value(a: &DGAlgebra) -> Value {
    obj(vec![
        ("complex", cochain_value(&a.carrier)),
        ("multiplications", Value::Array(a.mult.iter().map(matrix_value).collect())),
        ("unit", matrix_value(&a.unit)),
    ])
}

/// Algebra laws are checked through the degreewise dual coalgebra; this
/// renames the dual's laws back into multiplicative language.
fn algebra_law_name(dual_law: &str) -> &'static str {
    match dual_law {
        "comultiplication commutes with the differential" => "multiplication commutes with the differential",
        "counit kills boundaries" => "unit is a cocycle",
        "coassociativity" => "associativity",
        _ => "unit law",
    }
}

fn algebra_from(field: Field, v: &Value, top: usize, at: &str) -> Result<DGAlgebra> {
    let o = as_object(v, at)?;
    expect_keys(o, &["complex", "multiplications", "unit"], at)?;
    let carrier = cochain_from(field, get(o, "complex", at)?, top, &format!("{at}.complex"))?;
    let mult = matrix_array(field, get(o, "multiplications", at)?, &format!("{at}.multiplications"))?;
    let unit = matrix_from(field, get(o, "unit", at)?, &format!("{at}.unit"))?;
    let a = DGAlgebra::new(carrier, mult, unit)?;
    if !a.is_connected() {
        return Err(CliError::Schema(format!(
            "{at}: algebra documents must be connected (one-dimensional degree 0 with a nonzero unit)"
        )));
    }
    if let Some((law, degree)) = coalg::first_dg_coalgebra_failure(&algebra::dual_coalgebra(&a)) {
        return Err(CliError::Core(Error::broken(algebra_law_name(law), format!("degree {degree}"))));
    }
    Ok(a)
}

// ---------------------------------------------------------------------
// Maps and squares.

fn tagged_value(kind: &str, object: Value) -> Value {
    obj(vec![("kind", Value::String(kind.to_string())), ("object", object)])
}

fn parts_value(parts: &[Matrix]) -> Value {
    Value::Array(parts.iter().map(matrix_value).collect())
}

fn chain_map_value(f: &ChainMap) -> Value {
    obj(vec![
        ("map_kind", Value::String("chain".to_string())),
        ("parts", parts_value(f.parts())),
        ("source", tagged_value("chain_complex", chain_value(f.source()))),
        ("target", tagged_value("chain_complex", chain_value(f.target()))),
    ])
}

fn simplicial_map_value(f: &SimplicialMap) -> Value {
    obj(vec![
        ("map_kind", Value::String("simplicial".to_string())),
        ("parts", parts_value(f.parts())),
        ("source", tagged_value("simplicial_space", simplicial_value(f.source()))),
        ("target", tagged_value("simplicial_space", simplicial_value(f.target()))),
    ])
}

fn coalgebra_map_value(f: &CoalgebraMap) -> Value {
    obj(vec![
        ("map_kind", Value::String("coalgebra".to_string())),
        ("parts", parts_value(f.map().parts())),
        ("source", tagged_value("dg_coalgebra", coalgebra_value(f.source()))),
        ("target", tagged_value("dg_coalgebra", coalgebra_value(f.target()))),
    ])
}

/// Read one end of a map: a `{kind, object}` pair whose kind must match
/// what the surrounding `map_kind` implies.
fn end_from<'a>(v: &'a Value, expected_kind: &str, at: &str) -> Result<&'a Value> {
    let o = as_object(v, at)?;
    expect_keys(o, &["kind", "object"], at)?;
    let kind = get_str(o, "kind", at)?;
    if kind != expected_kind {
        return Err(CliError::Schema(format!("{at}.kind: expected {expected_kind:?}, got {kind:?}")));
    }
    get(o, "object", at)
}

fn map_from(field: Field, v: &Value, top: usize, at: &str) -> Result<Object> {
    let o = as_object(v, at)?;
    expect_keys(o, &["map_kind", "parts", "source", "target"], at)?;
    let map_kind = get_str(o, "map_kind", at)?;
    let parts = matrix_array(field, get(o, "parts", at)?, &format!("{at}.parts"))?;
    let src_at = format!("{at}.source");
    let tgt_at = format!("{at}.target");
    match map_kind {
        "chain" => {
            let src = chain_from(field, end_from(get(o, "source", at)?, "chain_complex", &src_at)?, top, &src_at)?;
            let tgt = chain_from(field, end_from(get(o, "target", at)?, "chain_complex", &tgt_at)?, top, &tgt_at)?;
            Ok(Object::ChainMap(ChainMap::new(src, tgt, parts)?))
        }
        "simplicial" => {
            let src = simplicial_from(field, end_from(get(o, "source", at)?, "simplicial_space", &src_at)?, top, &src_at)?;
            let tgt = simplicial_from(field, end_from(get(o, "target", at)?, "simplicial_space", &tgt_at)?, top, &tgt_at)?;
            Ok(Object::SimplicialMap(SimplicialMap::new(src, tgt, parts)?))
        }
        "coalgebra" => {
            let src = coalgebra_from(field, end_from(get(o, "source", at)?, "dg_coalgebra", &src_at)?, top, &src_at)?;
            let tgt = coalgebra_from(field, end_from(get(o, "target", at)?, "dg_coalgebra", &tgt_at)?, top, &tgt_at)?;
            let map = ChainMap::new(src.carrier.clone(), tgt.carrier.clone(), parts)?;
            Ok(Object::CoalgebraMap(CoalgebraMap::new(src, tgt, map)?))
        }
        other => Err(CliError::Schema(format!(
            "{at}.map_kind: unknown map kind {other:?}; expected \"chain\", \"simplicial\", or \"coalgebra\""
        ))),
    }
}

fn square_value(sq: &LiftingSquare) -> Value {
    obj(vec![
        ("bottom", chain_map_value(&sq.bottom)),
        ("left", chain_map_value(&sq.left)),
        ("right", chain_map_value(&sq.right)),
        ("top", chain_map_value(&sq.top)),
    ])
}

fn square_chain_map(field: Field, o: &Map<String, Value>, key: &str, top: usize, at: &str) -> Result<ChainMap> {
    let inner = format!("{at}.{key}");
    match map_from(field, get(o, key, at)?, top, &inner)? {
        Object::ChainMap(f) => Ok(f),
        _ => Err(CliError::Schema(format!("{inner}: square sides must be chain maps"))),
    }
}

fn square_from(field: Field, v: &Value, top: usize, at: &str) -> Result<LiftingSquare> {
    let o = as_object(v, at)?;
    expect_keys(o, &["bottom", "left", "right", "top"], at)?;
    let left = square_chain_map(field, o, "left", top, at)?;
    let right = square_chain_map(field, o, "right", top, at)?;
    let top_map = square_chain_map(field, o, "top", top, at)?;
    let bottom = square_chain_map(field, o, "bottom", top, at)?;
    Ok(LiftingSquare::new(left, right, top_map, bottom)?)
}

// ---------------------------------------------------------------------
// Documents.

fn kind_of(object: &Object) -> &'static str {
    match object {
        Object::Chain(_) => "chain_complex",
        Object::Simplicial(_) => "simplicial_space",
        Object::Coalgebra(_) => "dg_coalgebra",
        Object::SimplicialCoalgebra(_) => "simplicial_coalgebra",
        Object::Algebra(_) => "algebra",
        Object::ChainMap(_) | Object::SimplicialMap(_) | Object::CoalgebraMap(_) => "map",
        Object::Square(_) => "square",
    }
}

fn object_value(object: &Object) -> Value {
    match object {
        Object::Chain(c) => chain_value(c),
        Object::Simplicial(x) => simplicial_value(x),
        Object::Coalgebra(c) => coalgebra_value(c),
        Object::SimplicialCoalgebra(c) => simplicial_coalgebra_value(c),
        Object::Algebra(a) => algebra_value(a),
        Object::ChainMap(f) => chain_map_value(f),
        Object::SimplicialMap(f) => simplicial_map_value(f),
        Object::CoalgebraMap(f) => coalgebra_map_value(f),
        Object::Square(sq) => square_value(sq),
    }
}

pub fn document_value(doc: &Document) -> Value {
    obj(vec![
        ("field", Value::String(field_spec(doc.field))),
        ("kind", Value::String(kind_of(&doc.object).to_string())),
        ("object", object_value(&doc.object)),
        ("schema", Value::from(SCHEMA_VERSION)),
        ("truncation", Value::from(doc.object.truncation() as u64)),
    ])
}

/// Canonical bytes of a document.
pub fn save_document(doc: &Document) -> String {
    to_canonical_string(&document_value(doc))
}

pub fn document_from_value(v: &Value) -> Result<Document> {
    let o = as_object(v, "document")?;
    expect_keys(o, &["field", "kind", "object", "schema", "truncation"], "document")?;
    let schema = get_u64(o, "schema", "document")?;
    if schema != SCHEMA_VERSION {
        return Err(CliError::Schema(format!(
            "document.schema: version {schema} is not supported (this build reads version {SCHEMA_VERSION})"
        )));
    }
    let field = parse_field_spec(get_str(o, "field", "document")?)?;
    let top = get_usize(o, "truncation", "document")?;
    let kind = get_str(o, "kind", "document")?;
    let object_json = get(o, "object", "document")?;
    let object = match kind {
        "chain_complex" => Object::Chain(chain_from(field, object_json, top, "object")?),
        "simplicial_space" => Object::Simplicial(simplicial_from(field, object_json, top, "object")?),
        "dg_coalgebra" => Object::Coalgebra(coalgebra_from(field, object_json, top, "object")?),
        "simplicial_coalgebra" => {
            Object::SimplicialCoalgebra(simplicial_coalgebra_from(field, object_json, top, "object")?)
        }
        "algebra" => Object::Algebra(algebra_from(field, object_json, top, "object")?),
        "map" => map_from(field, object_json, top, "object")?,
        "square" => Object::Square(square_from(field, object_json, top, "object")?),
        other => {
            return Err(CliError::Schema(format!("document.kind: unknown kind {other:?}")));
        }
    };
    Ok(Document { field, object })
}

/// Parse and validate one document from its textual form.
pub fn load_document(text: &str) -> Result<Document> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| CliError::Schema(format!("invalid JSON: {e}")))?;
    document_from_value(&v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip(doc: &Document) {
        let text = save_document(doc);
        let loaded = load_document(&text).expect("canonical document loads");
        assert_eq!(save_document(&loaded), text, "second save changes bytes");
    }

    #[test]
    fn chain_documents_roundtrip_over_both_fields() {
        for field in [Field::Rationals, Field::prime(5).unwrap()] {
            let c = ChainComplex::sphere(field, 2, 3);
            roundtrip(&Document { field, object: Object::Chain(c) });
        }
    }

    #[test]
    fn rational_entries_survive_as_reduced_fractions() {
        let field = Field::Rationals;
        let half = field.from_ratio(1, 2);
        let m = Matrix::from_fn(field, 1, 1, |_, _| half.clone());
        let v = matrix_value(&m);
        assert_eq!(v["entries"][0], Value::String("1/2".to_string()));
        let back = matrix_from(field, &v, "m").unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn simplicial_documents_roundtrip() {
        let field = Field::Rationals;
        let g = homalg::doldkan::gamma(&ChainComplex::sphere(field, 1, 3)).space;
        roundtrip(&Document { field, object: Object::Simplicial(g) });
    }

    #[test]
    fn coalgebra_documents_roundtrip_and_revalidate() {
        let field = Field::Rationals;
        let w = homalg::cofree::tensor_coalgebra(&ChainComplex::sphere(field, 1, 3)).unwrap();
        roundtrip(&Document { field, object: Object::Coalgebra(w.coalgebra) });
    }

    #[test]
    fn broken_differential_names_the_degree() {
        let text = serde_json::to_string(&obj(vec![
            ("field", Value::String("Q".into())),
            ("kind", Value::String("chain_complex".into())),
            (
                "object",
                obj(vec![
                    (
                        "differentials",
                        Value::Array(vec![
                            obj(vec![
                                ("cols", 1.into()),
                                ("entries", Value::Array(vec![Value::String("1".into())])),
                                ("rows", 1.into()),
                            ]),
                            obj(vec![
                                ("cols", 1.into()),
                                ("entries", Value::Array(vec![Value::String("1".into())])),
                                ("rows", 1.into()),
                            ]),
                        ]),
                    ),
                    ("dims", Value::Array(vec![1.into(), 1.into(), 1.into()])),
                ]),
            ),
            ("schema", 1.into()),
            ("truncation", 2.into()),
        ]))
        .unwrap();
        let err = load_document(&text).unwrap_err().to_string();
        assert!(err.contains("d.d = 0"), "unexpected message: {err}");
        assert!(err.contains("degree 2"), "unexpected message: {err}");
    }

    #[test]
    fn non_prime_field_specs_are_rejected() {
        let err = parse_field_spec("GFp:4").unwrap_err().to_string();
        assert!(err.contains("not prime"), "unexpected message: {err}");
        assert!(parse_field_spec("GFp:5").is_ok());
        assert!(parse_field_spec("R").is_err());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let c = ChainComplex::sphere(Field::Rationals, 1, 2);
        let mut v = document_value(&Document { field: Field::Rationals, object: Object::Chain(c) });
        v.as_object_mut().unwrap().insert("extra".into(), Value::Null);
        let err = document_from_value(&v).unwrap_err().to_string();
        assert!(err.contains("unknown key"), "unexpected message: {err}");
    }

    #[test]
    fn coalgebra_law_failures_name_law_and_degree() {
        let field = Field::Rationals;
        let w = homalg::cofree::tensor_coalgebra(&ChainComplex::sphere(field, 1, 2)).unwrap();
        let mut doc_v = document_value(&Document { field, object: Object::Coalgebra(w.coalgebra) });
        // Corrupt the degree-2 comultiplication entry (the word (e,e)
        // must split as (e,e) -> (e)(x)(e) with coefficient 1).
        let comult = doc_v
            .pointer_mut("/object/comultiplications/2/entries")
            .expect("comultiplication entries");
        let arr = comult.as_array_mut().unwrap();
        let changed = arr
            .iter_mut()
            .find(|e| e.as_str() == Some("1"))
            .expect("a unit coefficient to corrupt");
        *changed = Value::String("2".into());
        let err = document_from_value(&doc_v).unwrap_err().to_string();
        assert!(
            err.contains("degree") || err.contains("counit"),
            "unexpected message: {err}"
        );
    }

    #[test]
    fn square_documents_roundtrip() {
        let field = Field::Rationals;
        let s = ChainComplex::sphere(field, 1, 2);
        let left = ChainMap::new(ChainComplex::zero(field, 2), s.clone(), vec![
            Matrix::zeros(field, 0, 0),
            Matrix::zeros(field, 1, 0),
            Matrix::zeros(field, 0, 0),
        ])
        .unwrap();
        let right = homalg::lifting::disk_to_sphere(field, 1, 2);
        let top = ChainMap::zero(left.source(), right.source());
        let bottom = ChainMap::identity(&s);
        let sq = LiftingSquare::new(left, right, top, bottom).unwrap();
        roundtrip(&Document { field, object: Object::Square(sq) });
    }
}
