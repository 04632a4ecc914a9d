//! Bundle serialization: the total algebra in the usual format, extended
//! with the value tables of q, σ, ζ, λ and ι.

use serde_json::{json, Value};

use crate::catalog;

use super::DifferentialBundle;

/// σ is a square table over E with `null` off the pullback; λ lists pairs
/// `[e, m]` with e in E and m in L(E).
pub fn to_value(d: &DifferentialBundle) -> Value {
    let mut v = catalog::to_value(d.total());
    let n = d.total().size();
    let witness = d.bundle.witness();
    let sigma: Vec<Vec<Value>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| witness.add(a, b).map_or(Value::Null, Value::from))
                .collect()
        })
        .collect();
    let fibre = d.lift.codomain() / n.max(1);
    let lambda: Vec<[usize; 2]> = d.lift.values().iter().map(|&t| [t / fibre, t % fibre]).collect();
    let obj = v.as_object_mut().expect("algebra json is an object");
    obj.insert("base".into(), catalog::to_value(d.base()));
    obj.insert("q".into(), json!(d.bundle.q.map().values()));
    obj.insert("sigma".into(), json!(sigma));
    obj.insert("zeta".into(), json!(d.bundle.zero.map().values()));
    obj.insert("lambda".into(), json!(lambda));
    if let Some(n) = &d.bundle.neg {
        obj.insert("iota".into(), json!(n.map().values()));
    }
    v
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::bundles::{build_diff_bundle, LAlgebra};
    use crate::catalog::{generate, GeneratorSpec};
    use crate::reflect::Mode;
    use crate::tangent::{Budget, Context};

    #[test]
    fn z2_over_z2() {
        let ctx = Context::with_mode(Mode::Ab, Budget::default());
        let z2 = Arc::new(generate(&GeneratorSpec::CyclicGroup(2)).unwrap());
        let a = LAlgebra::canonical(&ctx, &z2).unwrap();
        let d = build_diff_bundle(&ctx, &z2, &a).unwrap();
        let v = to_value(&d);
        assert_eq!(v["q"], json!([0, 0, 1, 1]));
        assert_eq!(v["zeta"], json!([0, 2]));
        assert_eq!(v["sigma"][0], json!([0, 1, null, null]));
        assert_eq!(v["lambda"][1], json!([0, 1]));
        assert_eq!(v["base"]["size"], 2);
    }
}
