//! JSON input validation and output encoding.
//!
//! Scalars travel as exact strings ("n", "n/d", residues) or, in a quadratic
//! extension, as two-element arrays [u, v] meaning u + v·√d. A float anywhere
//! in an input document is a SchemaError; every error names the JSON path and
//! the violated rule.

use std::fmt;
use std::fs;
use std::path::Path;

use desargues_core::field::ExtScalar;
use desargues_core::{
    FieldDescriptor, Involution, LineInPV, Pencil, ProjPoint, Scalar, ScenarioReport, SymForm2,
    SymFormN,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Schema(String),
    Invariant(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "ParseError: {m}"),
            CliError::Schema(m) => write!(f, "SchemaError: {m}"),
            CliError::Invariant(m) => write!(f, "InvariantError: {m}"),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn parse_field_flag(spec: &str) -> CliResult<FieldDescriptor> {
    if spec == "Q" {
        return Ok(FieldDescriptor::rationals());
    }
    if let Some(p) = spec.strip_prefix("gfp:") {
        let p: u64 = p
            .parse()
            .map_err(|_| CliError::Schema(format!("--field gfp:{p}: not an integer")))?;
        if p == 2 {
            return Err(CliError::Invariant("characteristic 2 excluded".into()));
        }
        return FieldDescriptor::prime(p)
            .map_err(|e| CliError::Invariant(format!("--field gfp:{p}: {e}")));
    }
    Err(CliError::Schema(format!(
        "--field {spec}: expected Q or gfp:P"
    )))
}

pub fn load_json(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn parse_base_scalar(s: &str, field: &FieldDescriptor, path: &str) -> CliResult<Scalar> {
    match field {
        FieldDescriptor::Rationals => {
            let (n, d) = s.split_once('/').unwrap_or((s, "1"));
            let n: BigInt = n
                .trim()
                .parse()
                .map_err(|_| CliError::Schema(format!("{path}: \"{s}\" is not an exact rational")))?;
            let d: BigInt = d
                .trim()
                .parse()
                .map_err(|_| CliError::Schema(format!("{path}: \"{s}\" is not an exact rational")))?;
            if d == BigInt::from(0) {
                return Err(CliError::Invariant(format!("{path}: zero denominator")));
            }
            Ok(Scalar::Rat(BigRational::new(n, d)))
        }
        FieldDescriptor::PrimeField(p) => {
            let v: i128 = s
                .trim()
                .parse()
                .map_err(|_| CliError::Schema(format!("{path}: \"{s}\" is not an integer")))?;
            Ok(Scalar::Mod {
                value: v.rem_euclid(*p as i128) as u64,
                p: *p,
            })
        }
        FieldDescriptor::QuadExt { .. } => Err(CliError::Schema(format!(
            "{path}: extension scalars are two-element arrays"
        ))),
    }
}

pub fn scalar_from_value(v: &Value, field: &FieldDescriptor, path: &str) -> CliResult<Scalar> {
    if v.is_number() {
        return Err(CliError::Schema(format!(
            "{path}: scalars are exact strings, not numbers"
        )));
    }
    match (v, field) {
        (Value::String(s), FieldDescriptor::QuadExt { base, d }) => {
            // a bare base-field string means imaginary part zero
            let re = parse_base_scalar(s, base, path)?;
            Ok(Scalar::Ext(Box::new(ExtScalar {
                re,
                im: base.zero(),
                d: d.clone(),
            })))
        }
        (Value::String(s), _) => parse_base_scalar(s, field, path),
        (Value::Array(parts), FieldDescriptor::QuadExt { base, d }) => {
            if parts.len() != 2 {
                return Err(CliError::Schema(format!(
                    "{path}: extension scalar needs exactly [u, v]"
                )));
            }
            let re = scalar_from_value(&parts[0], base, &format!("{path}[0]"))?;
            let im = scalar_from_value(&parts[1], base, &format!("{path}[1]"))?;
            Ok(Scalar::Ext(Box::new(ExtScalar {
                re,
                im,
                d: d.clone(),
            })))
        }
        _ => Err(CliError::Schema(format!(
            "{path}: expected a scalar string"
        ))),
    }
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn member_str<'a>(v: &'a Value, key: &str, path: &str) -> CliResult<&'a Value> {
    v.get(key)
        .ok_or_else(|| CliError::Schema(format!("{} missing", join(path, key))))
}

pub fn field_from_value(v: &Value, path: &str) -> CliResult<FieldDescriptor> {
    let ty = member_str(v, "type", path)?
        .as_str()
        .ok_or_else(|| CliError::Schema(format!("{} must be a string", join(path, "type"))))?;
    match ty {
        "Q" => Ok(FieldDescriptor::rationals()),
        "GFp" => {
            let p = member_str(v, "p", path)?
                .as_u64()
                .ok_or_else(|| CliError::Schema(format!("{} must be an integer", join(path, "p"))))?;
            if p == 2 {
                return Err(CliError::Invariant("characteristic 2 excluded".into()));
            }
            FieldDescriptor::prime(p).map_err(|e| CliError::Invariant(format!("{}: {e}", join(path, "p"))))
        }
        "QuadExt" => {
            let base = field_from_value(member_str(v, "base", path)?, &join(path, "base"))?;
            let d = scalar_from_value(member_str(v, "d", path)?, &base, &join(path, "d"))?;
            base.extend_with_sqrt(&d)
                .map_err(|e| CliError::Invariant(format!("{}: {e}", join(path, "d"))))
        }
        other => Err(CliError::Schema(format!(
            "{path}.type: unknown field type \"{other}\""
        ))),
    }
}

pub fn form2_from_value(v: &Value, field: &FieldDescriptor, path: &str) -> CliResult<SymForm2> {
    let a = scalar_from_value(member_str(v, "a", path)?, field, &join(path, "a"))?;
    let b = scalar_from_value(member_str(v, "b", path)?, field, &join(path, "b"))?;
    let c = scalar_from_value(member_str(v, "c", path)?, field, &join(path, "c"))?;
    SymForm2::new(a, b, c).map_err(|e| CliError::Invariant(format!("{path}: {e}")))
}

pub fn involution_from_value(
    v: &Value,
    field: &FieldDescriptor,
    path: &str,
) -> CliResult<Involution> {
    let a = scalar_from_value(member_str(v, "a", path)?, field, &join(path, "a"))?;
    let b = scalar_from_value(member_str(v, "b", path)?, field, &join(path, "b"))?;
    let c = scalar_from_value(member_str(v, "c", path)?, field, &join(path, "c"))?;
    Involution::new(a, b, c)
        .map_err(|_| CliError::Invariant(format!("{path}: matrix (a b; c -a) is singular")))
}

pub fn symformn_from_value(v: &Value, field: &FieldDescriptor, path: &str) -> CliResult<SymFormN> {
    let dim = member_str(v, "dim", path)?
        .as_u64()
        .ok_or_else(|| CliError::Schema(format!("{} must be an integer", join(path, "dim"))))? as usize;
    let m = member_str(v, "m", path)?
        .as_array()
        .ok_or_else(|| CliError::Schema(format!("{} must be an array of rows", join(path, "m"))))?;
    if m.len() != dim {
        return Err(CliError::Schema(format!(
            "{path}.m has {} rows, dim says {dim}",
            m.len()
        )));
    }
    let mut rows = Vec::with_capacity(dim);
    for (i, row) in m.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| CliError::Schema(format!("{}[{i}] must be an array", join(path, "m"))))?;
        if row.len() != dim {
            return Err(CliError::Schema(format!(
                "{path}.m[{i}] has {} entries, dim says {dim}",
                row.len()
            )));
        }
        let mut out = Vec::with_capacity(dim);
        for (j, e) in row.iter().enumerate() {
            out.push(scalar_from_value(e, field, &format!("{}[{i}][{j}]", join(path, "m")))?);
        }
        rows.push(out);
    }
    for i in 0..dim {
        for j in (i + 1)..dim {
            if rows[i][j] != rows[j][i] {
                return Err(CliError::Invariant(format!(
                    "{path}.m not symmetric at [{i}][{j}] vs [{j}][{i}]"
                )));
            }
        }
    }
    SymFormN::new(rows).map_err(|e| CliError::Invariant(format!("{path}: {e}")))
}

pub fn vector_from_value(
    v: &Value,
    field: &FieldDescriptor,
    path: &str,
) -> CliResult<Vec<Scalar>> {
    let arr = v
        .as_array()
        .ok_or_else(|| CliError::Schema(format!("{path} must be an array of scalars")))?;
    arr.iter()
        .enumerate()
        .map(|(i, e)| scalar_from_value(e, field, &format!("{path}[{i}]")))
        .collect()
}

pub fn line_from_value(v: &Value, field: &FieldDescriptor, path: &str) -> CliResult<LineInPV> {
    let e1 = vector_from_value(member_str(v, "e1", path)?, field, &join(path, "e1"))?;
    let e2 = vector_from_value(member_str(v, "e2", path)?, field, &join(path, "e2"))?;
    LineInPV::new(e1, e2).map_err(|_| CliError::Invariant("line vectors dependent".into()))
}

pub fn pencil_from_value(v: &Value, field: &FieldDescriptor, path: &str) -> CliResult<Pencil> {
    let r = symformn_from_value(member_str(v, "R", path)?, field, &join(path, "R"))?;
    let s = symformn_from_value(member_str(v, "S", path)?, field, &join(path, "S"))?;
    Pencil::new(r, s).map_err(|e| CliError::Invariant(format!("{path}: {e}")))
}

pub fn scalar_to_value(s: &Scalar) -> Value {
    match s {
        Scalar::Ext(e) => json!([scalar_to_value(&e.re), scalar_to_value(&e.im)]),
        other => Value::String(other.to_string()),
    }
}

pub fn point_to_value(p: &ProjPoint) -> Value {
    json!([scalar_to_value(p.x()), scalar_to_value(p.y())])
}

pub fn field_to_value(f: &FieldDescriptor) -> Value {
    match f {
        FieldDescriptor::Rationals => json!({"type": "Q"}),
        FieldDescriptor::PrimeField(p) => json!({"type": "GFp", "p": p}),
        FieldDescriptor::QuadExt { base, d } => json!({
            "type": "QuadExt",
            "base": field_to_value(base),
            "d": scalar_to_value(d),
        }),
    }
}

pub fn form2_to_value(f: &SymForm2) -> Value {
    json!({
        "a": scalar_to_value(&f.a),
        "b": scalar_to_value(&f.b),
        "c": scalar_to_value(&f.c),
    })
}

pub fn involution_to_value(inv: &Involution) -> Value {
    json!({
        "a": scalar_to_value(&inv.a),
        "b": scalar_to_value(&inv.b),
        "c": scalar_to_value(&inv.c),
    })
}

pub fn report_to_value(r: &ScenarioReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "pass": c.pass, "witness": c.witness}))
        .collect();
    let mut doc = Map::new();
    doc.insert("scenario".into(), json!(r.scenario));
    doc.insert("field".into(), json!(r.field));
    doc.insert("instance".into(), json!(r.instance));
    doc.insert("seed".into(), json!(r.seed));
    doc.insert("checks".into(), Value::Array(checks));
    doc.insert("pass".into(), json!(r.pass()));
    Value::Object(doc)
}
