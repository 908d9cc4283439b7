//! JSON helpers shared by the structure parsers. Errors carry the JSON path of the offending field.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact_linalg::{format_rational, rational_from_json, Matrix, Rational};
use crate::lie_core::Tensor3;

pub fn field<'a>(v: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    let obj = v.as_object().ok_or_else(|| Error::parse(path, "expected an object"))?;
    obj.get(key).ok_or_else(|| Error::parse(format!("{path}.{key}"), "missing field"))
}

pub fn opt_field<'a>(v: &'a Value, key: &str) -> Option<&'a Value> {
    v.as_object().and_then(|o| o.get(key))
}

pub fn count(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::parse(path, "expected a non-negative integer"))
}

pub fn count_field(v: &Value, key: &str, path: &str) -> Result<usize> {
    count(field(v, key, path)?, &format!("{path}.{key}"))
}

pub fn rational(v: &Value, path: &str) -> Result<Rational> {
    rational_from_json(v).map_err(|e| Error::parse(path, e.to_string()))
}

pub fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::parse(path, "expected an array"))
}

/// Entries `[i_1, ..., i_k, "c"]`, each index checked against `bounds`.
pub fn entries(v: &Value, path: &str, bounds: &[usize]) -> Result<Vec<(Vec<usize>, Rational)>> {
    let k = bounds.len();
    let mut out = Vec::new();
    for (n, e) in array(v, path)?.iter().enumerate() {
        let p = format!("{path}[{n}]");
        let a = array(e, &p)?;
        if a.len() != k + 1 {
            return Err(Error::parse(&p, format!("expected {} indices and a coefficient", k)));
        }
        let mut idx = Vec::with_capacity(k);
        for (s, b) in bounds.iter().enumerate() {
            let i = count(&a[s], &format!("{p}[{s}]"))?;
            if i >= *b {
                return Err(Error::parse(format!("{p}[{s}]"), format!("index {i} out of range (< {b})")));
            }
            idx.push(i);
        }
        out.push((idx, rational(&a[k], &format!("{p}[{k}]"))?));
    }
    Ok(out)
}

/// Dense tensor from sparse entries; repeated entries with different values are rejected.
pub fn tensor3(v: &Value, path: &str, shape: (usize, usize, usize)) -> Result<Tensor3> {
    let mut t = Tensor3::zeros(shape.0, shape.1, shape.2);
    let mut seen = std::collections::HashSet::new();
    for (idx, c) in entries(v, path, &[shape.0, shape.1, shape.2])? {
        if !seen.insert(idx.clone()) && *t.at(idx[0], idx[1], idx[2]) != c {
            return Err(Error::parse(path, format!("conflicting entries at {idx:?}")));
        }
        t.set(idx[0], idx[1], idx[2], c);
    }
    Ok(t)
}

pub fn opt_tensor3(v: &Value, key: &str, path: &str, shape: (usize, usize, usize)) -> Result<Tensor3> {
    match opt_field(v, key) {
        Some(x) => tensor3(x, &format!("{path}.{key}"), shape),
        None => Ok(Tensor3::zeros(shape.0, shape.1, shape.2)),
    }
}

pub fn tensor3_to_json(t: &Tensor3) -> Value {
    let mut out = Vec::new();
    for i in 0..t.d0 {
        for j in 0..t.d1 {
            for k in 0..t.d2 {
                let c = t.at(i, j, k);
                if !c.is_zero() {
                    out.push(json!([i, j, k, format_rational(c)]));
                }
            }
        }
    }
    Value::Array(out)
}

/// Matrix given as a list of rows of rationals.
pub fn matrix(v: &Value, path: &str, rows: usize, cols: usize) -> Result<Matrix> {
    let a = array(v, path)?;
    if a.len() != rows {
        return Err(Error::parse(path, format!("expected {rows} rows, found {}", a.len())));
    }
    let mut m = Matrix::zeros(rows, cols);
    for (i, r) in a.iter().enumerate() {
        let p = format!("{path}[{i}]");
        let r = array(r, &p)?;
        if r.len() != cols {
            return Err(Error::parse(&p, format!("expected {cols} columns, found {}", r.len())));
        }
        for (j, x) in r.iter().enumerate() {
            m.set(i, j, rational(x, &format!("{p}[{j}]"))?);
        }
    }
    Ok(m)
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows)
            .map(|i| Value::Array((0..m.cols).map(|j| json!(format_rational(m.get(i, j)))).collect()))
            .collect(),
    )
}

pub fn vector_to_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|c| json!(format_rational(c))).collect())
}

pub fn vector(v: &Value, path: &str, len: usize) -> Result<Vec<Rational>> {
    let a = array(v, path)?;
    if a.len() != len {
        return Err(Error::parse(path, format!("expected length {len}, found {}", a.len())));
    }
    a.iter().enumerate().map(|(i, x)| rational(x, &format!("{path}[{i}]"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::rat;

    #[test]
    fn parse_errors_name_the_path() {
        let v: Value = serde_json::from_str(r#"{"t": [[0, 5, 0, "1"]]}"#).unwrap();
        let e = tensor3(field(&v, "t", "$").unwrap(), "$.t", (1, 2, 1)).unwrap_err();
        assert!(e.to_string().contains("$.t[0][1]"), "{e}");
        let v: Value = serde_json::from_str(r#"{"t": [[0, 0, 0, "1/0"]]}"#).unwrap();
        assert!(tensor3(&v["t"], "$.t", (1, 1, 1)).is_err());
        assert!(field(&v, "missing", "$").unwrap_err().to_string().contains("$.missing"));
    }

    #[test]
    fn tensor_roundtrip() {
        let mut t = Tensor3::zeros(2, 2, 2);
        t.set(0, 1, 1, rat(3));
        t.set(1, 0, 0, crate::exact_linalg::ratio(-1, 2));
        let j = tensor3_to_json(&t);
        assert_eq!(tensor3(&j, "$", (2, 2, 2)).unwrap(), t);
    }
}
