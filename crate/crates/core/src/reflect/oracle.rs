//! Textbook abelianizations, computed directly as quotients of the input.
//! They never touch `X × X`, so they are independent of the coequalizer
//! construction they are compared against.

use std::sync::Arc;

use crate::algebra::{FiniteAlgebra, FiniteFunction, Homomorphism};
use crate::catalog::laws;
use crate::congruence::{generate_congruence, quotient};

use super::ReflectError;

/// A quotient of X with its projection, playing the role of L(X) and η_X.
#[derive(Clone, Debug)]
pub struct OracleReflection {
    pub algebra: Arc<FiniteAlgebra>,
    pub unit: Homomorphism,
}

fn op(x: &FiniteAlgebra, name: &str) -> Result<usize, ReflectError> {
    x.signature()
        .op_index(name)
        .ok_or_else(|| ReflectError::Variety(format!("missing operation `{name}`")))
}

fn quotient_by(x: &Arc<FiniteAlgebra>, seeds: &[(usize, usize)]) -> Result<OracleReflection, ReflectError> {
    let c = generate_congruence(x, seeds)?;
    let (algebra, unit) = quotient(x, &c)?;
    Ok(OracleReflection { algebra, unit })
}

/// G / [G, G], from the seeds xy ~ yx.
pub fn group_commutator_oracle(g: &Arc<FiniteAlgebra>) -> Result<OracleReflection, ReflectError> {
    laws::check_group(g).map_err(|v| ReflectError::Variety(v.to_string()))?;
    let mul = op(g, "mul")?;
    let n = g.size();
    let mut seeds = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            seeds.push((g.apply(mul, &[x, y]), g.apply(mul, &[y, x])));
        }
    }
    quotient_by(g, &seeds)
}

/// R / R², from the seeds xy ~ 0.
pub fn ring_square_oracle(r: &Arc<FiniteAlgebra>) -> Result<OracleReflection, ReflectError> {
    laws::check_ring(r).map_err(|v| ReflectError::Variety(v.to_string()))?;
    let mul = op(r, "mul")?;
    let zero = r.zero().ok_or_else(|| ReflectError::NotPointed(r.name().to_string()))?;
    let n = r.size();
    let mut seeds = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            seeds.push((r.apply(mul, &[x, y]), zero));
        }
    }
    quotient_by(r, &seeds)
}

/// Q modulo commutators (xy)/(yx) and associators ((xy)z)/(x(yz)).
pub fn loop_commutator_oracle(q: &Arc<FiniteAlgebra>) -> Result<OracleReflection, ReflectError> {
    laws::check_loop(q).map_err(|v| ReflectError::Variety(v.to_string()))?;
    let mul = op(q, "mul")?;
    let rdiv = op(q, "rdiv")?;
    let e = q.zero().ok_or_else(|| ReflectError::NotPointed(q.name().to_string()))?;
    let n = q.size();
    let m = |a: usize, b: usize| q.apply(mul, &[a, b]);
    let mut seeds = Vec::new();
    for x in 0..n {
        for y in 0..n {
            seeds.push((q.apply(rdiv, &[m(x, y), m(y, x)]), e));
            for z in 0..n {
                seeds.push((q.apply(rdiv, &[m(m(x, y), z), m(x, m(y, z))]), e));
            }
        }
    }
    quotient_by(q, &seeds)
}

/// The unique φ with φ∘a = b, for surjective homomorphisms a, b out of the
/// same algebra, when it exists and is an isomorphism.
pub fn mediating_iso(a: &Homomorphism, b: &Homomorphism) -> Option<Homomorphism> {
    assert_eq!(a.source().size(), b.source().size(), "units out of different algebras");
    if a.target().size() != b.target().size() || !a.map().is_surjective() {
        return None;
    }
    let mut table = vec![usize::MAX; a.target().size()];
    for x in 0..a.source().size() {
        let slot = &mut table[a.apply(x)];
        if *slot == usize::MAX {
            *slot = b.apply(x);
        } else if *slot != b.apply(x) {
            return None;
        }
    }
    let f = FiniteFunction::new(b.target().size(), table).ok()?;
    if !f.is_bijective() {
        return None;
    }
    Homomorphism::new(a.target().clone(), b.target().clone(), f).ok()
}
