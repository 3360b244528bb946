//! JSON formats for triples and cochains.
//!
//! Scalars are written as JSON integers when they fit in an `i64` and as
//! strings (`"p/q"` or a bare big integer) otherwise. Canonical output has
//! sorted keys and no whitespace.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::cochains::{Cochain, CochainError};
use crate::linalg::Matrix;
use crate::scalar::{Field, Scalar};
use crate::structures::{
    validate_triple, AlgebraSpec, BimoduleSpec, Element, StructureError, TripleCandidate, TripleContext,
};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad file: {0}")]
    Format(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error("{0}")]
    Read(#[from] std::io::Error),
}

fn bad(msg: impl Into<String>) -> IoError {
    IoError::Format(msg.into())
}

pub fn scalar_to_json(x: &Scalar) -> Value {
    let (num, den) = x.to_ratio();
    if den == BigInt::from(1) {
        if let Some(v) = num.to_i64() {
            return Value::from(v);
        }
        return Value::from(num.to_string());
    }
    Value::from(format!("{num}/{den}"))
}

pub fn scalar_from_json(field: Field, v: &Value) -> Result<Scalar, IoError> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(field.from_i64(i)),
            None => field.parse(&n.to_string()).map_err(|e| bad(e.to_string())),
        },
        Value::String(s) => field.parse(s).map_err(|e| bad(e.to_string())),
        other => Err(bad(format!("expected a scalar, found {other}"))),
    }
}

fn vector_to_json(x: &[Scalar]) -> Value {
    Value::Array(x.iter().map(scalar_to_json).collect())
}

fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|r| vector_to_json(m.row(r))).collect())
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, IoError> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))
}

fn vector_from_json(field: Field, v: &Value, len: usize, what: &str) -> Result<Element, IoError> {
    let a = array(v, what)?;
    if a.len() != len {
        return Err(bad(format!("{what} has length {}, expected {len}", a.len())));
    }
    a.iter().map(|x| scalar_from_json(field, x)).collect()
}

fn matrix_from_json(field: Field, v: &Value, rows: usize, cols: usize, what: &str) -> Result<Matrix, IoError> {
    let a = array(v, what)?;
    if a.len() != rows {
        return Err(bad(format!("{what} has {} rows, expected {rows}", a.len())));
    }
    let rows = a
        .iter()
        .map(|r| vector_from_json(field, r, cols, what))
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(field, cols, rows).map_err(|e| bad(e.to_string()))
}

fn field_to_json(field: Field) -> Value {
    match field {
        Field::Rational => json!({"kind": "rational"}),
        Field::Prime(p) => json!({"kind": "prime", "p": p}),
    }
}

fn field_from_json(v: &Value) -> Result<Field, IoError> {
    match v.get("kind").and_then(Value::as_str) {
        Some("rational") => Ok(Field::Rational),
        Some("prime") => {
            let p = v.get("p").and_then(Value::as_u64).ok_or_else(|| bad("prime field needs integer `p`"))?;
            Field::prime(p).map_err(|e| bad(e.to_string()))
        }
        _ => Err(bad("`field.kind` must be \"rational\" or \"prime\"")),
    }
}

fn algebra_to_json(a: &AlgebraSpec) -> Value {
    json!({
        "dim": a.dim(),
        "basis_labels": a.labels(),
        "unit": vector_to_json(a.unit()),
        "structure": a.structure().iter().map(|row| row.iter().map(|e| vector_to_json(e)).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn algebra_from_json(field: Field, v: &Value, name: &str) -> Result<AlgebraSpec, IoError> {
    let dim = v
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad(format!("{name}.dim must be a positive integer")))? as usize;
    let labels = match v.get("basis_labels") {
        Some(l) => array(l, "basis_labels")?
            .iter()
            .map(|s| s.as_str().map(str::to_string).ok_or_else(|| bad("basis labels must be strings")))
            .collect::<Result<Vec<_>, _>>()?,
        None => (0..dim).map(|i| format!("e{i}")).collect(),
    };
    let unit = vector_from_json(field, v.get("unit").ok_or_else(|| bad(format!("{name}.unit missing")))?, dim, "unit")?;
    let st = array(
        v.get("structure").ok_or_else(|| bad(format!("{name}.structure missing")))?,
        "structure",
    )?;
    if st.len() != dim {
        return Err(bad(format!("{name}.structure must have {dim} rows")));
    }
    let structure = st
        .iter()
        .map(|row| {
            let row = array(row, "structure row")?;
            if row.len() != dim {
                return Err(bad(format!("{name}.structure rows must have {dim} entries")));
            }
            row.iter().map(|e| vector_from_json(field, e, dim, "structure constant")).collect()
        })
        .collect::<Result<Vec<Vec<Element>>, _>>()?;
    Ok(AlgebraSpec::new(field, labels, structure, unit)?)
}

fn module_to_json(m: &BimoduleSpec) -> Value {
    json!({
        "dim": m.dim(),
        "left_action": m.left_action().iter().map(matrix_to_json).collect::<Vec<_>>(),
        "right_action": m.right_action().iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

pub fn module_from_json(field: Field, dim_a: usize, v: &Value) -> Result<Option<BimoduleSpec>, IoError> {
    if v.as_str() == Some("A") {
        return Ok(None);
    }
    let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| bad("M.dim must be a positive integer"))? as usize;
    let actions = |key: &str| -> Result<Vec<Matrix>, IoError> {
        let a = array(v.get(key).ok_or_else(|| bad(format!("M.{key} missing")))?, key)?;
        if a.len() != dim_a {
            return Err(bad(format!("M.{key} must list one matrix per basis element of A")));
        }
        a.iter().map(|m| matrix_from_json(field, m, dim, dim, key)).collect()
    };
    Ok(Some(BimoduleSpec::new(dim, actions("left_action")?, actions("right_action")?)?))
}

pub fn candidate_to_json(c: &TripleCandidate) -> Value {
    let mut o = Map::new();
    o.insert("field".into(), field_to_json(c.field));
    o.insert("A".into(), algebra_to_json(&c.a));
    o.insert("B".into(), algebra_to_json(&c.b));
    o.insert("epsilon".into(), matrix_to_json(&c.epsilon));
    if let Some(g) = &c.form {
        o.insert("form".into(), matrix_to_json(g));
    }
    if let Some(m) = &c.module {
        o.insert("M".into(), module_to_json(m));
    }
    Value::Object(o)
}

pub fn candidate_from_json(v: &Value) -> Result<TripleCandidate, IoError> {
    if !v.is_object() {
        return Err(bad("triple file must be a JSON object"));
    }
    let field = field_from_json(v.get("field").ok_or_else(|| bad("`field` missing"))?)?;
    let a = algebra_from_json(field, v.get("A").ok_or_else(|| bad("`A` missing"))?, "A")?;
    let b = algebra_from_json(field, v.get("B").ok_or_else(|| bad("`B` missing"))?, "B")?;
    let epsilon = matrix_from_json(
        field,
        v.get("epsilon").ok_or_else(|| bad("`epsilon` missing"))?,
        a.dim(),
        b.dim(),
        "epsilon",
    )?;
    let form = match v.get("form") {
        None | Some(Value::Null) => None,
        Some(g) => Some(matrix_from_json(field, g, a.dim(), a.dim(), "form")?),
    };
    let module = match v.get("M") {
        None | Some(Value::Null) => None,
        Some(m) => module_from_json(field, a.dim(), m)?,
    };
    Ok(TripleCandidate {
        field,
        a,
        b,
        epsilon,
        form,
        module,
    })
}

pub fn parse_triple(text: &str) -> Result<TripleContext, IoError> {
    let v: Value = serde_json::from_str(text)?;
    Ok(validate_triple(candidate_from_json(&v)?)?)
}

pub fn read_triple(path: &std::path::Path) -> Result<TripleContext, IoError> {
    parse_triple(&std::fs::read_to_string(path)?)
}

/// Sorted keys, no whitespace. `serde_json` maps are ordered by key.
pub fn canonical(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

pub fn triple_to_canonical(ctx: &TripleContext) -> String {
    canonical(&candidate_to_json(&ctx.to_candidate()))
}

/// First 16 hex digits of the SHA-256 of the canonical triple file.
pub fn triple_id(ctx: &TripleContext) -> String {
    let digest = Sha256::digest(triple_to_canonical(ctx).as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

pub fn cochain_to_json(f: &Cochain) -> Value {
    json!({
        "degree": f.degree(),
        "values": f.values().map(vector_to_json).collect::<Vec<_>>(),
    })
}

pub fn cochain_from_json(ctx: &TripleContext, v: &Value) -> Result<Cochain, IoError> {
    let degree = v
        .get("degree")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("cochain `degree` must be a nonnegative integer"))? as usize;
    let values = array(v.get("values").ok_or_else(|| bad("cochain `values` missing"))?, "values")?;
    let values = values
        .iter()
        .map(|x| vector_from_json(ctx.field(), x, ctx.dim_m(), "cochain value"))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Cochain::from_values(ctx, degree, values)?)
}

pub fn parse_cochain(ctx: &TripleContext, text: &str) -> Result<Cochain, IoError> {
    cochain_from_json(ctx, &serde_json::from_str(text)?)
}

pub fn cochain_to_canonical(f: &Cochain) -> String {
    canonical(&cochain_to_json(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochains::random_cochain;
    use crate::fixtures;

    #[test]
    fn fixtures_round_trip() {
        for field in [Field::Rational, Field::prime(5).unwrap()] {
            for (name, t) in fixtures::all(field) {
                let text = triple_to_canonical(&t);
                let back = parse_triple(&text).unwrap();
                assert_eq!(back, t, "{name}");
                assert_eq!(triple_to_canonical(&back), text);
            }
        }
    }

    #[test]
    fn keys_are_sorted_and_compact() {
        let text = triple_to_canonical(&fixtures::t2(Field::Rational));
        assert!(text.starts_with("{\"A\":{\"basis_labels\""));
        assert!(!text.contains(' '));
    }

    #[test]
    fn fractions_and_big_integers() {
        let q = Field::Rational;
        let x = q.parse("-3/4").unwrap();
        assert_eq!(scalar_to_json(&x), Value::from("-3/4"));
        assert_eq!(scalar_from_json(q, &Value::from("-3/4")).unwrap(), x);
        let big = q.parse("123456789012345678901234567890").unwrap();
        assert_eq!(scalar_from_json(q, &scalar_to_json(&big)).unwrap(), big);
        assert_eq!(scalar_to_json(&q.from_i64(-2)), Value::from(-2));
    }

    #[test]
    fn cochain_round_trip() {
        let t = fixtures::t3(Field::Rational);
        let f = random_cochain(&t, 2, 4).scale(&Field::Rational.parse("1/3").unwrap());
        let text = cochain_to_canonical(&f);
        let back = parse_cochain(&t, &text).unwrap();
        assert_eq!(back, f);
        assert_eq!(cochain_to_canonical(&back), text);
    }

    #[test]
    fn form_is_optional() {
        let mut v = candidate_to_json(&fixtures::t2_candidate(Field::Rational));
        v.as_object_mut().unwrap().remove("form");
        let t = parse_triple(&canonical(&v)).unwrap();
        assert!(t.form().is_none());
    }

    #[test]
    fn module_key() {
        let mut v = candidate_to_json(&fixtures::t2_candidate(Field::Rational));
        v.as_object_mut().unwrap().insert("M".into(), Value::from("A"));
        assert!(parse_triple(&canonical(&v)).unwrap().is_regular());
        let raw = fixtures::t2_candidate(Field::Rational);
        let m = BimoduleSpec::regular(&raw.a);
        let with_module = TripleCandidate { module: Some(m), ..raw };
        let t = validate_triple(with_module).unwrap();
        let back = parse_triple(&triple_to_canonical(&t)).unwrap();
        assert!(!back.is_regular());
        assert_eq!(back, t);
    }

    #[test]
    fn reports_axiom_failures() {
        let mut v = candidate_to_json(&fixtures::t2_candidate(Field::Rational));
        v["A"]["unit"] = json!([0, 1]);
        match parse_triple(&canonical(&v)) {
            Err(IoError::Structure(StructureError::Axioms(list))) => assert!(!list.is_empty()),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_triple("{"), Err(IoError::Json(_))));
        assert!(matches!(parse_triple("{}"), Err(IoError::Format(_))));
    }

    #[test]
    fn ids_are_stable_and_distinct() {
        let q = Field::Rational;
        let ids: Vec<String> = fixtures::all(q).iter().map(|(_, t)| triple_id(t)).collect();
        assert_eq!(ids[0], triple_id(&fixtures::t1(q)));
        assert_eq!(ids[0].len(), 16);
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
    }
}
