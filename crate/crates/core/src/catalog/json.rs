//! The JSON algebra format. Tables are nested arrays indexed in argument
//! order; constants carry a bare integer.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Serialize;
use serde_json::Value;

use crate::algebra::{AlgebraError, FiniteAlgebra, JtDesignation, OpSpec, Signature};

use super::CatalogError;

#[derive(Serialize)]
struct OpJson {
    arity: usize,
    table: Value,
}

#[derive(Serialize)]
struct AlgebraJson<'a> {
    name: &'a str,
    size: usize,
    operations: BTreeMap<String, OpJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    jt: Option<&'a JtDesignation>,
}

fn nest(flat: &[usize], n: usize, arity: usize) -> Value {
    if arity == 0 {
        return Value::from(flat[0]);
    }
    let stride = flat.len() / n;
    Value::Array(
        (0..n)
            .map(|i| nest(&flat[i * stride..(i + 1) * stride], n, arity - 1))
            .collect(),
    )
}

/// The algebra as a JSON value, for embedding in larger documents.
pub fn to_value(x: &FiniteAlgebra) -> Value {
    let n = x.size();
    let operations = x
        .signature()
        .operations()
        .iter()
        .zip(x.tables())
        .map(|(op, table)| {
            (
                op.name.clone(),
                OpJson {
                    arity: op.arity,
                    table: nest(table, n, op.arity),
                },
            )
        })
        .collect();
    serde_json::to_value(AlgebraJson {
        name: x.name(),
        size: n,
        operations,
        jt: x.signature().designation(),
    })
    .expect("algebra json is always representable")
}

/// Canonical compact text: keys sorted, no whitespace.
pub fn serialize(x: &FiniteAlgebra) -> String {
    to_value(x).to_string()
}

fn table_error(op: &str, path: &[usize], message: impl Into<String>) -> CatalogError {
    CatalogError::Table {
        op: op.to_string(),
        path: path.to_vec(),
        message: message.into(),
    }
}

fn flatten(
    op: &str,
    value: &Value,
    n: usize,
    depth: usize,
    path: &mut Vec<usize>,
    out: &mut Vec<usize>,
) -> Result<(), CatalogError> {
    if depth == 0 {
        let v = value
            .as_u64()
            .ok_or_else(|| table_error(op, path, format!("expected a non-negative integer, found {value}")))?;
        if v as usize >= n {
            return Err(table_error(op, path, format!("entry {v} outside 0..{n}")));
        }
        out.push(v as usize);
        return Ok(());
    }
    let items = value
        .as_array()
        .ok_or_else(|| table_error(op, path, "expected an array"))?;
    if items.len() != n {
        return Err(table_error(
            op,
            path,
            format!("expected {n} entries, found {}", items.len()),
        ));
    }
    for (i, item) in items.iter().enumerate() {
        path.push(i);
        flatten(op, item, n, depth - 1, path, out)?;
        path.pop();
    }
    Ok(())
}

fn field<'a>(obj: &'a serde_json::Map<String, Value>, key: &str) -> Result<&'a Value, CatalogError> {
    obj.get(key)
        .ok_or_else(|| CatalogError::Json(format!("missing field `{key}`")))
}

fn decode(text: &str) -> Result<FiniteAlgebra, CatalogError> {
    let root: Value = serde_json::from_str(text).map_err(|e| CatalogError::Json(e.to_string()))?;
    let obj = root
        .as_object()
        .ok_or_else(|| CatalogError::Json("top level must be an object".into()))?;
    let name = field(obj, "name")?
        .as_str()
        .ok_or_else(|| CatalogError::Json("`name` must be a string".into()))?;
    let size = field(obj, "size")?
        .as_u64()
        .ok_or_else(|| CatalogError::Json("`size` must be a non-negative integer".into()))? as usize;
    if size == 0 {
        return Err(AlgebraError::EmptyCarrier.into());
    }
    let ops = field(obj, "operations")?
        .as_object()
        .ok_or_else(|| CatalogError::Json("`operations` must be an object".into()))?;

    let mut specs = Vec::with_capacity(ops.len());
    let mut named = Vec::with_capacity(ops.len());
    for (op, body) in ops {
        let arity = body
            .get("arity")
            .and_then(Value::as_u64)
            .ok_or_else(|| CatalogError::Json(format!("operation `{op}` needs an integer `arity`")))?
            as usize;
        if size.checked_pow(arity as u32).is_none_or(|cells| cells > 1 << 24) {
            return Err(CatalogError::Json(format!("operation `{op}` table is too large")));
        }
        let table = body
            .get("table")
            .ok_or_else(|| CatalogError::Json(format!("operation `{op}` needs a `table`")))?;
        let mut flat = Vec::with_capacity(size.pow(arity as u32));
        flatten(op, table, size, arity, &mut Vec::new(), &mut flat)?;
        specs.push(OpSpec::new(op, arity));
        named.push((op.as_str(), flat));
    }

    let jt = match obj.get("jt") {
        None | Some(Value::Null) => None,
        Some(v) => Some(
            serde_json::from_value::<JtDesignation>(v.clone()).map_err(|e| CatalogError::Json(format!("`jt`: {e}")))?,
        ),
    };
    let signature = Arc::new(Signature::new(specs, jt)?);
    Ok(FiniteAlgebra::from_named(name, signature, size, named)?)
}

/// Strict parse: a broken JT unit law is an error.
pub fn parse(text: &str) -> Result<FiniteAlgebra, CatalogError> {
    let x = decode(text)?;
    if x.is_pointed() {
        x.check_unit_law()?;
    }
    Ok(x)
}

/// Like [`parse`], but a broken unit law is returned as a warning.
pub fn parse_lenient(text: &str) -> Result<(FiniteAlgebra, Vec<String>), CatalogError> {
    let x = decode(text)?;
    let mut warnings = Vec::new();
    if x.is_pointed() {
        if let Err(e) = x.check_unit_law() {
            warnings.push(e.to_string());
        }
    }
    Ok((x, warnings))
}

pub fn read_text(path: &Path) -> Result<String, CatalogError> {
    std::fs::read_to_string(path).map_err(|e| CatalogError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn parse_file(path: &Path) -> Result<FiniteAlgebra, CatalogError> {
    parse(&read_text(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{generate, GeneratorSpec};

    #[test]
    fn z2_canonical_text() {
        let z2 = generate(&GeneratorSpec::CyclicGroup(2)).unwrap();
        let text = serialize(&z2);
        assert_eq!(
            text,
            r#"{"jt":{"plus":"mul","zero":"e"},"name":"Z2","operations":{"e":{"arity":0,"table":0},"inv":{"arity":1,"table":[0,1]},"mul":{"arity":2,"table":[[0,1],[1,0]]}},"size":2}"#
        );
        assert_eq!(parse(&text).unwrap(), z2);
    }

    #[test]
    fn out_of_range_names_op_and_path() {
        let text = r#"{"name":"bad","size":2,"operations":{"mul":{"arity":2,"table":[[0,1],[1,2]]}}}"#;
        match parse(text) {
            Err(CatalogError::Table { op, path, .. }) => {
                assert_eq!(op, "mul");
                assert_eq!(path, vec![1, 1]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unit_law_strict_vs_lenient() {
        let text = r#"{"name":"m","size":2,"operations":{"e":{"arity":0,"table":0},"mul":{"arity":2,"table":[[0,0],[1,1]]}},"jt":{"zero":"e","plus":"mul"}}"#;
        assert!(parse(text).is_err());
        let (x, warnings) = parse_lenient(text).unwrap();
        assert_eq!(x.size(), 2);
        assert_eq!(warnings.len(), 1);
    }

    #[test]
    fn malformed_and_extra_fields() {
        assert!(matches!(parse("{"), Err(CatalogError::Json(_))));
        let text = r#"{"name":"t","size":1,"comment":"ignored","operations":{}}"#;
        assert_eq!(parse(text).unwrap().size(), 1);
    }

    #[test]
    fn round_trip_whole_catalog() {
        for spec in crate::catalog::standard_catalog() {
            let x = generate(&spec).unwrap();
            let back = parse(&serialize(&x)).unwrap();
            assert_eq!(back, x);
            assert_eq!(back.name(), x.name());
        }
    }
}
