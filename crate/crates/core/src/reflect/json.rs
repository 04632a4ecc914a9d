//! L(X) in the algebra format, plus its witness and optionally η.

use serde_json::{json, Value};

use crate::catalog;

use super::ReflectionResult;

/// `plus` is an n×n nested table; `unit` lists η(x) for each x in X.
pub fn to_value(r: &ReflectionResult, emit_unit: bool) -> Value {
    let mut v = catalog::to_value(&r.reflected);
    let w = &r.witness;
    let plus: Vec<&[usize]> = w.plus.chunks(w.size.max(1)).collect();
    let mut witness = json!({ "plus": plus, "zero": w.zero });
    if let Some(neg) = &w.neg {
        witness["neg"] = json!(neg);
    }
    let obj = v.as_object_mut().expect("algebra json is an object");
    obj.insert("witness".into(), witness);
    if emit_unit {
        obj.insert("unit".into(), json!(r.unit.map().values()));
    }
    v
}
