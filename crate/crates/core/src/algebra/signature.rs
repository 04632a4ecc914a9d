use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// One named operation symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OpSpec {
    pub name: String,
    pub arity: usize,
}

impl OpSpec {
    pub fn new(name: &str, arity: usize) -> Self {
        Self {
            name: name.to_string(),
            arity,
        }
    }
}

/// Names the zero constant and the binary plus of a Jónsson–Tarski signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JtDesignation {
    pub zero: String,
    pub plus: String,
}

/// Operation symbols, kept sorted by name so that two signatures listing the
/// same symbols in a different order compare equal and index tables alike.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    ops: Vec<OpSpec>,
    jt: Option<JtDesignation>,
    zero_op: Option<usize>,
    plus_op: Option<usize>,
}

impl Signature {
    pub fn new(mut ops: Vec<OpSpec>, jt: Option<JtDesignation>) -> Result<Self, AlgebraError> {
        ops.sort_by(|a, b| a.name.cmp(&b.name));
        for pair in ops.windows(2) {
            if pair[0].name == pair[1].name {
                return Err(AlgebraError::DuplicateOperation(pair[0].name.clone()));
            }
        }
        let find = |name: &str| ops.iter().position(|o| o.name == name);
        let (zero_op, plus_op) = match &jt {
            None => (None, None),
            Some(d) => {
                let z = find(&d.zero).ok_or_else(|| AlgebraError::BadDesignation {
                    name: d.zero.clone(),
                    reason: "no such operation".into(),
                })?;
                if ops[z].arity != 0 {
                    return Err(AlgebraError::BadDesignation {
                        name: d.zero.clone(),
                        reason: format!("zero must be a constant, found arity {}", ops[z].arity),
                    });
                }
                let p = find(&d.plus).ok_or_else(|| AlgebraError::BadDesignation {
                    name: d.plus.clone(),
                    reason: "no such operation".into(),
                })?;
                if ops[p].arity != 2 {
                    return Err(AlgebraError::BadDesignation {
                        name: d.plus.clone(),
                        reason: format!("plus must be binary, found arity {}", ops[p].arity),
                    });
                }
                (Some(z), Some(p))
            }
        };
        Ok(Self {
            ops,
            jt,
            zero_op,
            plus_op,
        })
    }

    /// Shorthand for a pointed signature; panics on malformed input, so only
    /// meant for the fixed signatures of the catalog.
    pub fn jt(ops: &[(&str, usize)], zero: &str, plus: &str) -> Self {
        let ops = ops.iter().map(|(n, a)| OpSpec::new(n, *a)).collect();
        Self::new(
            ops,
            Some(JtDesignation {
                zero: zero.into(),
                plus: plus.into(),
            }),
        )
        .expect("static signature is well formed")
    }

    pub fn operations(&self) -> &[OpSpec] {
        &self.ops
    }

    pub fn designation(&self) -> Option<&JtDesignation> {
        self.jt.as_ref()
    }

    pub fn zero_op(&self) -> Option<usize> {
        self.zero_op
    }

    pub fn plus_op(&self) -> Option<usize> {
        self.plus_op
    }

    pub fn is_pointed(&self) -> bool {
        self.jt.is_some()
    }

    pub fn op_index(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.name == name)
    }

    pub fn arity(&self, op: usize) -> usize {
        self.ops[op].arity
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_designated() {
        let s = Signature::jt(&[("mul", 2), ("e", 0), ("inv", 1)], "e", "mul");
        let names: Vec<_> = s.operations().iter().map(|o| o.name.as_str()).collect();
        assert_eq!(names, ["e", "inv", "mul"]);
        assert_eq!(s.zero_op(), Some(0));
        assert_eq!(s.plus_op(), Some(2));
    }

    #[test]
    fn rejects_duplicates_and_bad_designations() {
        let dup = Signature::new(vec![OpSpec::new("a", 0), OpSpec::new("a", 1)], None);
        assert!(matches!(dup, Err(AlgebraError::DuplicateOperation(_))));
        let bad = Signature::new(
            vec![OpSpec::new("e", 1), OpSpec::new("m", 2)],
            Some(JtDesignation {
                zero: "e".into(),
                plus: "m".into(),
            }),
        );
        assert!(matches!(bad, Err(AlgebraError::BadDesignation { .. })));
    }
}
