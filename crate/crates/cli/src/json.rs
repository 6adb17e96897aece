//! JSON encoding of exact data, schema validation of inputs, and the error
//! type every verb reports through.

use std::fmt;

use serde_json::{json, Value};
use toric_contact::polytope::{Facet, LabeledPolytope};
use toric_contact::probes::ProbeWitness;
use toric_contact::rational::{format_rat, parse_rat, Int, Rat};
use toric_contact::Cone;

pub const CONE_SCHEMA: &str = include_str!("../../../schemas/cone.schema.json");
pub const POLYTOPE_SCHEMA: &str = include_str!("../../../schemas/polytope.schema.json");

/// An input or usage problem; reported as JSON with exit status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub kind: &'static str,
    pub message: String,
    /// JSON pointer into the offending document, when there is one.
    pub path: Option<String>,
}

impl InputError {
    pub fn new(kind: &'static str, message: impl Into<String>) -> Self {
        Self {
            kind,
            message: message.into(),
            path: None,
        }
    }

    pub fn at(mut self, path: impl Into<String>) -> Self {
        self.path = Some(path.into());
        self
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "kind": self.kind, "message": self.message, "path": self.path } })
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.path {
            Some(p) => write!(f, "{}: {} (at {p})", self.kind, self.message),
            None => write!(f, "{}: {}", self.kind, self.message),
        }
    }
}

pub type CliResult<T> = Result<T, InputError>;

/// Integers fitting in `i64` become JSON numbers, others decimal strings.
pub fn int_json(x: &Int) -> Value {
    i64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

pub fn ints_json(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

pub fn rat_json(x: &Rat) -> Value {
    Value::String(format_rat(x))
}

pub fn rats_json(v: &[Rat]) -> Value {
    Value::Array(v.iter().map(rat_json).collect())
}

pub fn polytope_json(p: &LabeledPolytope) -> Value {
    let facets: Vec<Value> = p
        .facets()
        .iter()
        .map(|f| json!({ "normal": ints_json(&f.normal), "constant": rat_json(&f.constant), "label": f.label }))
        .collect();
    let vertices: Vec<Value> = p.vertices().iter().map(|v| rats_json(v)).collect();
    json!({ "dim": p.dim(), "facets": facets, "vertices": vertices })
}

pub fn witness_json(w: &ProbeWitness) -> Value {
    json!({
        "facet": w.probe.facet_index,
        "entry": rats_json(&w.probe.entry),
        "direction": ints_json(&w.probe.direction),
        "length": rat_json(&w.probe.length),
        "parameter": rat_json(&w.parameter),
    })
}

/// Pretty JSON with a trailing newline. Serialization of these values
/// cannot fail.
pub fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn validate(schema_text: &str, instance: &Value) -> CliResult<()> {
    let schema: Value = serde_json::from_str(schema_text).expect("bundled schemas are valid JSON");
    let validator = jsonschema::validator_for(&schema).expect("bundled schemas compile");
    // report the first violation, in document order of the error iterator
    if let Some(e) = validator.iter_errors(instance).next() {
        return Err(InputError::new("schema_violation", e.to_string()).at(e.instance_path().to_string()));
    }
    Ok(())
}

fn parse_int(v: &Value, path: &str) -> CliResult<Int> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(Int::from)
            .ok_or_else(|| InputError::new("invalid_integer", n.to_string()).at(path)),
        Value::String(s) => s.parse().map_err(|_| InputError::new("invalid_integer", s.clone()).at(path)),
        other => Err(InputError::new("invalid_integer", other.to_string()).at(path)),
    }
}

pub fn parse_rational_field(v: &Value, path: &str) -> CliResult<Rat> {
    let s = v.as_str().ok_or_else(|| InputError::new("invalid_rational", v.to_string()).at(path))?;
    parse_rat(s).map_err(|e| InputError::new("invalid_rational", e.to_string()).at(path))
}

fn int_rows(v: &Value, path: &str) -> CliResult<Vec<Vec<Int>>> {
    let rows = v.as_array().into_iter().flatten().enumerate();
    rows.map(|(i, row)| {
        let entries = row.as_array().into_iter().flatten().enumerate();
        entries.map(|(j, x)| parse_int(x, &format!("{path}/{i}/{j}"))).collect()
    })
    .collect()
}

pub fn parse_cone(doc: &Value) -> CliResult<Cone> {
    validate(CONE_SCHEMA, doc)?;
    let dim = doc["dim"].as_u64().expect("schema checked") as usize;
    let normals = int_rows(&doc["normals"], "/normals")?;
    Cone::new(dim, normals).map_err(|e| {
        let err = InputError::new("invalid_cone", e.to_string());
        match e {
            toric_contact::LatticeError::DimensionMismatch { index, .. } | toric_contact::LatticeError::NotPrimitive(index) => {
                err.at(format!("/normals/{index}"))
            }
            _ => err.at("/normals"),
        }
    })
}

pub fn parse_polytope(doc: &Value) -> CliResult<LabeledPolytope> {
    validate(POLYTOPE_SCHEMA, doc)?;
    let dim = doc["dim"].as_u64().expect("schema checked") as usize;
    let mut facets = Vec::new();
    for (i, f) in doc["facets"].as_array().expect("schema checked").iter().enumerate() {
        let path = format!("/facets/{i}");
        let normal: Vec<Int> = f["normal"]
            .as_array()
            .expect("schema checked")
            .iter()
            .enumerate()
            .map(|(j, x)| parse_int(x, &format!("{path}/normal/{j}")))
            .collect::<CliResult<_>>()?;
        if normal.len() != dim {
            return Err(InputError::new("dimension_mismatch", format!("normal has {} entries, expected {dim}", normal.len()))
                .at(format!("{path}/normal")));
        }
        facets.push(Facet {
            normal,
            constant: parse_rational_field(&f["constant"], &format!("{path}/constant"))?,
            label: f["label"].as_u64().expect("schema checked"),
        });
    }
    LabeledPolytope::new(dim, facets).map_err(|e| InputError::new("invalid_polytope", e.to_string()).at("/facets"))
}

/// Parses a comma-separated list of rationals given on the command line.
pub fn parse_rat_list(s: &str, flag: &str) -> CliResult<Vec<Rat>> {
    s.split(',')
        .map(|x| parse_rat(x).map_err(|e| InputError::new("invalid_flag", format!("{flag}: {e}"))))
        .collect()
}
