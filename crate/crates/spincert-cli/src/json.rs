//! JSON (de)serialization of matrices and forms.
//!
//! Matrices travel as row-major arrays of arrays of integers. Numbers are
//! parsed with arbitrary precision and rendered without any floating point
//! or scientific notation; canonical output sorts keys and uses LF endings.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{Map, Number, Value};
use spincert::intlinalg::IntMatrix;

pub fn value_to_bigint(v: &Value, ctx: &str) -> Result<BigInt, String> {
    let Value::Number(n) = v else {
        return Err(format!("{ctx}: expected an integer, got {v}"));
    };
    let s = n.to_string();
    if s.contains(['.', 'e', 'E']) {
        return Err(format!("{ctx}: expected an integer, got {s}"));
    }
    BigInt::from_str(&s).map_err(|_| format!("{ctx}: unreadable integer {s}"))
}

pub fn value_to_matrix(v: &Value, ctx: &str) -> Result<IntMatrix, String> {
    let Value::Array(rows) = v else {
        return Err(format!("{ctx}: expected an array of rows"));
    };
    let mut parsed: Vec<Vec<BigInt>> = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let Value::Array(entries) = row else {
            return Err(format!("{ctx}: row {i} is not an array"));
        };
        let mut out = Vec::with_capacity(entries.len());
        for (j, e) in entries.iter().enumerate() {
            out.push(value_to_bigint(e, &format!("{ctx}: entry ({i},{j})"))?);
        }
        parsed.push(out);
    }
    IntMatrix::from_rows(parsed).map_err(|e| format!("{ctx}: {e}"))
}

pub fn bigint_to_value(b: &BigInt) -> Value {
    let n = Number::from_str(&b.to_string())
        .expect("decimal rendering of an integer parses as a JSON number");
    Value::Number(n)
}

pub fn matrix_to_value(m: &IntMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(bigint_to_value).collect()))
            .collect(),
    )
}

/// Required object field lookup with a path-style diagnostic.
pub fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value, String> {
    obj.get(name).ok_or_else(|| format!("missing field \"{name}\""))
}

pub fn as_object<'a>(v: &'a Value, ctx: &str) -> Result<&'a Map<String, Value>, String> {
    v.as_object().ok_or_else(|| format!("{ctx}: expected a JSON object"))
}

/// Canonical rendering: sorted keys (serde_json maps are ordered), pretty
/// two-space indent, trailing newline.
pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value prints");
    s.push('\n');
    s
}
