//! Exhaustive law checks for the catalog's varieties.

use serde::Serialize;
use thiserror::Error;

use crate::algebra::FiniteAlgebra;

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
#[error("{law} fails at {witness:?}")]
pub struct LawViolation {
    pub law: String,
    pub witness: Vec<usize>,
}

fn violation(law: &str, witness: Vec<usize>) -> LawViolation {
    LawViolation {
        law: law.to_string(),
        witness,
    }
}

/// Varieties the catalog draws from, told apart by operation names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variety {
    Group,
    Monoid,
    PointedMagma,
    Loop,
    Ring,
}

struct Ops<'a> {
    x: &'a FiniteAlgebra,
}

impl<'a> Ops<'a> {
    fn index(&self, name: &str) -> Result<usize, LawViolation> {
        self.x
            .signature()
            .op_index(name)
            .ok_or_else(|| violation(&format!("operation `{name}` present"), vec![]))
    }

    fn binary(&self, name: &str) -> Result<impl Fn(usize, usize) -> usize + 'a, LawViolation> {
        let i = self.index(name)?;
        let x = self.x;
        Ok(move |a, b| x.apply(i, &[a, b]))
    }

    fn unary(&self, name: &str) -> Result<impl Fn(usize) -> usize + 'a, LawViolation> {
        let i = self.index(name)?;
        let x = self.x;
        Ok(move |a| x.apply(i, &[a]))
    }

    fn constant(&self, name: &str) -> Result<usize, LawViolation> {
        let i = self.index(name)?;
        Ok(self.x.apply(i, &[]))
    }
}

/// First triple breaking associativity of a binary operation.
pub fn associativity_witness(x: &FiniteAlgebra, op: &str) -> Option<[usize; 3]> {
    let i = x.signature().op_index(op)?;
    let m = |a, b| x.apply(i, &[a, b]);
    let n = x.size();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if m(m(a, b), c) != m(a, m(b, c)) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

fn commutativity_witness(n: usize, m: impl Fn(usize, usize) -> usize) -> Option<[usize; 2]> {
    for a in 0..n {
        for b in 0..n {
            if m(a, b) != m(b, a) {
                return Some([a, b]);
            }
        }
    }
    None
}

fn check_identity(n: usize, e: usize, m: impl Fn(usize, usize) -> usize) -> Result<(), LawViolation> {
    match (0..n).find(|&a| m(a, e) != a || m(e, a) != a) {
        Some(a) => Err(violation("identity", vec![a])),
        None => Ok(()),
    }
}

pub fn check_pointed_magma(x: &FiniteAlgebra) -> Result<(), LawViolation> {
    let ops = Ops { x };
    check_identity(x.size(), ops.constant("e")?, ops.binary("mul")?)
}

pub fn check_monoid(x: &FiniteAlgebra) -> Result<(), LawViolation> {
    check_pointed_magma(x)?;
    match associativity_witness(x, "mul") {
        Some(w) => Err(violation("associativity", w.to_vec())),
        None => Ok(()),
    }
}

pub fn check_group(x: &FiniteAlgebra) -> Result<(), LawViolation> {
    check_monoid(x)?;
    let ops = Ops { x };
    let (m, inv, e) = (ops.binary("mul")?, ops.unary("inv")?, ops.constant("e")?);
    match (0..x.size()).find(|&a| m(a, inv(a)) != e || m(inv(a), a) != e) {
        Some(a) => Err(violation("inverse", vec![a])),
        None => Ok(()),
    }
}

pub fn check_loop(x: &FiniteAlgebra) -> Result<(), LawViolation> {
    check_pointed_magma(x)?;
    let ops = Ops { x };
    let (m, l, r) = (ops.binary("mul")?, ops.binary("ldiv")?, ops.binary("rdiv")?);
    let n = x.size();
    for a in 0..n {
        for b in 0..n {
            if m(a, l(a, b)) != b || l(a, m(a, b)) != b {
                return Err(violation("left division", vec![a, b]));
            }
            if m(r(a, b), b) != a || r(m(a, b), b) != a {
                return Err(violation("right division", vec![a, b]));
            }
        }
    }
    Ok(())
}

/// Rings without a required unit.
pub fn check_ring(x: &FiniteAlgebra) -> Result<(), LawViolation> {
    let ops = Ops { x };
    let (add, mul, neg, zero) = (
        ops.binary("add")?,
        ops.binary("mul")?,
        ops.unary("neg")?,
        ops.constant("zero")?,
    );
    let n = x.size();
    check_identity(n, zero, &add)?;
    if let Some(w) = associativity_witness(x, "add") {
        return Err(violation("additive associativity", w.to_vec()));
    }
    if let Some(w) = commutativity_witness(n, &add) {
        return Err(violation("additive commutativity", w.to_vec()));
    }
    if let Some(a) = (0..n).find(|&a| add(a, neg(a)) != zero) {
        return Err(violation("additive inverse", vec![a]));
    }
    if let Some(w) = associativity_witness(x, "mul") {
        return Err(violation("multiplicative associativity", w.to_vec()));
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)) || mul(add(a, b), c) != add(mul(a, c), mul(b, c)) {
                    return Err(violation("distributivity", vec![a, b, c]));
                }
            }
        }
    }
    Ok(())
}

/// Guesses the variety from operation names.
pub fn detect(x: &FiniteAlgebra) -> Option<Variety> {
    let names: Vec<&str> = x.signature().operations().iter().map(|o| o.name.as_str()).collect();
    match names.as_slice() {
        ["e", "inv", "mul"] => Some(Variety::Group),
        ["e", "mul"] => Some(if associativity_witness(x, "mul").is_none() {
            Variety::Monoid
        } else {
            Variety::PointedMagma
        }),
        ["e", "ldiv", "mul", "rdiv"] => Some(Variety::Loop),
        ["add", "mul", "neg", "zero"] => Some(Variety::Ring),
        _ => None,
    }
}

pub fn check_variety(x: &FiniteAlgebra, variety: Variety) -> Result<(), LawViolation> {
    match variety {
        Variety::Group => check_group(x),
        Variety::Monoid => check_monoid(x),
        Variety::PointedMagma => check_pointed_magma(x),
        Variety::Loop => check_loop(x),
        Variety::Ring => check_ring(x),
    }
}
