//! Finite algebras, homomorphisms, products and the pair-encoding combinators.
//!
//! Carriers are `{0..n}`. A pair `(x, y)` in `X × Y` has index `x·|Y| + y`,
//! and products nest to the left. A table for an operation of arity `k`
//! stores `f(a₁,…,a_k)` at index `Σ aᵢ·n^(k−i)`.

mod combinators;
mod function;
mod signature;

use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

pub use combinators::{assoc_alpha, interchange_tau, left_unit, pairing, right_unit, symmetry_sigma};
pub use function::{fibre_triples, FiniteFunction, SetPullback};
pub use signature::{JtDesignation, OpSpec, Signature};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("duplicate operation name `{0}`")]
    DuplicateOperation(String),
    #[error("designated operation `{name}`: {reason}")]
    BadDesignation { name: String, reason: String },
    #[error("carrier must be non-empty")]
    EmptyCarrier,
    #[error("missing table for operation `{0}`")]
    MissingTable(String),
    #[error("operation `{op}` has {found} table entries, expected {expected}")]
    TableShape { op: String, expected: usize, found: usize },
    #[error("operation `{op}` entry at {path:?} is {value}, outside 0..{size}")]
    OutOfRange {
        op: String,
        path: Vec<usize>,
        value: usize,
        size: usize,
    },
    #[error("signatures of `{left}` and `{right}` differ")]
    SignatureMismatch { left: String, right: String },
    #[error("algebra `{0}` has no jt designation")]
    NotPointed(String),
    #[error("not a homomorphism: `{op}` fails at arguments {args:?}")]
    NotHomomorphism { op: String, args: Vec<usize> },
    #[error("unit law fails at element {element}")]
    UnitLaw { element: usize },
    #[error("function value {value} at index {index} outside codomain of size {codomain}")]
    FunctionRange {
        index: usize,
        value: usize,
        codomain: usize,
    },
    #[error("map has {found} values but its source has {expected} elements")]
    DomainMismatch { expected: usize, found: usize },
    #[error("subset is not closed under `{op}` at arguments {args:?}")]
    NotClosed { op: String, args: Vec<usize> },
}

/// Calls `f` on every `k`-tuple over `{0..n}` in row-major order, so the
/// call count equals the flat table index.
pub fn for_each_tuple(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    let mut args = vec![0usize; k];
    let total = n.checked_pow(k as u32).expect("tuple space overflows usize");
    for _ in 0..total {
        f(&args);
        for slot in args.iter_mut().rev() {
            *slot += 1;
            if *slot < n {
                break;
            }
            *slot = 0;
        }
    }
}

/// Flat index of an argument tuple.
#[inline]
pub fn flat_index(n: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a)
}

fn unflatten(n: usize, k: usize, mut flat: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for slot in out.iter_mut().rev() {
        *slot = flat % n;
        flat /= n;
    }
    out
}

/// A finite algebra with total operation tables.
///
/// Equality and hashing look at the signature and tables only, not the name.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra {
    name: String,
    signature: Arc<Signature>,
    size: usize,
    tables: Vec<Vec<usize>>,
}

impl PartialEq for FiniteAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.signature == other.signature && self.tables == other.tables
    }
}

impl Eq for FiniteAlgebra {}

impl Hash for FiniteAlgebra {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.size.hash(state);
        self.signature.hash(state);
        self.tables.hash(state);
    }
}

impl FiniteAlgebra {
    /// Tables follow the (sorted) order of `signature.operations()`.
    pub fn new(
        name: impl Into<String>,
        signature: Arc<Signature>,
        size: usize,
        tables: Vec<Vec<usize>>,
    ) -> Result<Self, AlgebraError> {
        if size == 0 {
            return Err(AlgebraError::EmptyCarrier);
        }
        let ops = signature.operations();
        if tables.len() != ops.len() {
            let missing = ops.get(tables.len()).map(|o| o.name.clone()).unwrap_or_default();
            return Err(AlgebraError::MissingTable(missing));
        }
        for (op, table) in ops.iter().zip(&tables) {
            let expected = size.pow(op.arity as u32);
            if table.len() != expected {
                return Err(AlgebraError::TableShape {
                    op: op.name.clone(),
                    expected,
                    found: table.len(),
                });
            }
            if let Some(i) = table.iter().position(|&v| v >= size) {
                return Err(AlgebraError::OutOfRange {
                    op: op.name.clone(),
                    path: unflatten(size, op.arity, i),
                    value: table[i],
                    size,
                });
            }
        }
        Ok(Self {
            name: name.into(),
            signature,
            size,
            tables,
        })
    }

    /// Builds from `(operation name, flat table)` pairs in any order.
    pub fn from_named(
        name: impl Into<String>,
        signature: Arc<Signature>,
        size: usize,
        named: Vec<(&str, Vec<usize>)>,
    ) -> Result<Self, AlgebraError> {
        let mut slots: Vec<Option<Vec<usize>>> = vec![None; signature.len()];
        for (op, table) in named {
            let i = signature
                .op_index(op)
                .ok_or_else(|| AlgebraError::MissingTable(op.to_string()))?;
            slots[i] = Some(table);
        }
        let mut tables = Vec::with_capacity(slots.len());
        for (i, slot) in slots.into_iter().enumerate() {
            tables.push(slot.ok_or_else(|| AlgebraError::MissingTable(signature.operations()[i].name.clone()))?);
        }
        Self::new(name, signature, size, tables)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn table(&self, op: usize) -> &[usize] {
        &self.tables[op]
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    #[inline]
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        self.tables[op][flat_index(self.size, args)]
    }

    pub fn is_pointed(&self) -> bool {
        self.signature.is_pointed()
    }

    /// The designated zero element.
    pub fn zero(&self) -> Option<usize> {
        self.signature.zero_op().map(|z| self.tables[z][0])
    }

    #[inline]
    pub fn plus(&self, a: usize, b: usize) -> usize {
        let p = self.signature.plus_op().expect("plus on an unpointed algebra");
        self.tables[p][a * self.size + b]
    }

    /// x + 0 = x = 0 + x for every x.
    pub fn check_unit_law(&self) -> Result<(), AlgebraError> {
        let zero = self.zero().ok_or_else(|| AlgebraError::NotPointed(self.name.clone()))?;
        for x in 0..self.size {
            if self.plus(x, zero) != x || self.plus(zero, x) != x {
                return Err(AlgebraError::UnitLaw { element: x });
            }
        }
        Ok(())
    }

    /// Every operation sends the all-zero tuple to zero; the quasi-injections
    /// are homomorphisms exactly when this holds.
    pub fn zero_fixing_violation(&self) -> Option<String> {
        let zero = self.zero()?;
        self.signature.operations().iter().enumerate().find_map(|(i, op)| {
            let args = vec![zero; op.arity];
            (self.apply(i, &args) != zero).then(|| op.name.clone())
        })
    }

    fn same_signature(&self, other: &FiniteAlgebra) -> Result<(), AlgebraError> {
        if self.signature != other.signature {
            return Err(AlgebraError::SignatureMismatch {
                left: self.name.clone(),
                right: other.name.clone(),
            });
        }
        Ok(())
    }
}

/// A map between algebras that commutes with every operation.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    source: Arc<FiniteAlgebra>,
    target: Arc<FiniteAlgebra>,
    map: FiniteFunction,
}

impl PartialEq for Homomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
    }
}

impl Eq for Homomorphism {}

impl Homomorphism {
    pub fn new(
        source: Arc<FiniteAlgebra>,
        target: Arc<FiniteAlgebra>,
        map: FiniteFunction,
    ) -> Result<Self, AlgebraError> {
        check_homomorphism(&source, &target, &map)?;
        Ok(Self { source, target, map })
    }

    /// Skips the homomorphism scan. Shapes are still checked. Meant for maps
    /// that are homomorphisms by construction and for mutation tests that
    /// hand the verifiers a deliberately broken table.
    pub fn new_unchecked(source: Arc<FiniteAlgebra>, target: Arc<FiniteAlgebra>, map: FiniteFunction) -> Self {
        assert_eq!(map.domain(), source.size(), "map domain differs from source size");
        assert_eq!(map.codomain(), target.size(), "map codomain differs from target size");
        Self { source, target, map }
    }

    pub fn identity(x: &Arc<FiniteAlgebra>) -> Self {
        Self::new_unchecked(x.clone(), x.clone(), FiniteFunction::identity(x.size()))
    }

    pub fn source(&self) -> &Arc<FiniteAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteAlgebra> {
        &self.target
    }

    pub fn map(&self) -> &FiniteFunction {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map.apply(x)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Homomorphism) -> Homomorphism {
        Self::new_unchecked(inner.source.clone(), self.target.clone(), self.map.compose(&inner.map))
    }

    /// Inverse of a bijective homomorphism, which is again a homomorphism.
    pub fn inverse(&self) -> Option<Homomorphism> {
        let inv = self.map.inverse()?;
        Some(Self::new_unchecked(self.target.clone(), self.source.clone(), inv))
    }
}

/// Exhaustive homomorphism scan; reports the first failing operation and tuple.
pub fn check_homomorphism(
    source: &FiniteAlgebra,
    target: &FiniteAlgebra,
    map: &FiniteFunction,
) -> Result<(), AlgebraError> {
    source.same_signature(target)?;
    if map.domain() != source.size() {
        return Err(AlgebraError::DomainMismatch {
            expected: source.size(),
            found: map.domain(),
        });
    }
    if map.codomain() != target.size() {
        return Err(AlgebraError::FunctionRange {
            index: 0,
            value: map.codomain(),
            codomain: target.size(),
        });
    }
    let (n, m) = (source.size(), target.size());
    for (op_index, op) in source.signature().operations().iter().enumerate() {
        let src = source.table(op_index);
        let tgt = target.table(op_index);
        let mut flat = 0;
        let mut failure = None;
        for_each_tuple(n, op.arity, |args| {
            if failure.is_none() {
                let image = args.iter().fold(0, |acc, &a| acc * m + map.apply(a));
                if map.apply(src[flat]) != tgt[image] {
                    failure = Some(args.to_vec());
                }
            }
            flat += 1;
        });
        if let Some(args) = failure {
            return Err(AlgebraError::NotHomomorphism {
                op: op.name.clone(),
                args,
            });
        }
    }
    Ok(())
}

/// A binary or left-nested product with its projections.
#[derive(Clone, Debug)]
pub struct ProductWitness {
    pub factors: Vec<Arc<FiniteAlgebra>>,
    pub product: Arc<FiniteAlgebra>,
    pub projections: Vec<Homomorphism>,
}

impl ProductWitness {
    /// Index of `(x, y)` in a binary product.
    #[inline]
    pub fn pair(&self, x: usize, y: usize) -> usize {
        debug_assert_eq!(self.factors.len(), 2);
        x * self.factors[1].size() + y
    }

    /// Components of a binary-product element.
    #[inline]
    pub fn split(&self, v: usize) -> (usize, usize) {
        let ny = self.factors[1].size();
        (v / ny, v % ny)
    }

    pub fn left(&self) -> &Arc<FiniteAlgebra> {
        &self.factors[0]
    }

    pub fn right(&self) -> &Arc<FiniteAlgebra> {
        &self.factors[1]
    }

    /// The mediating map ⟨f, g⟩ of a binary product.
    pub fn pairing(&self, f: &Homomorphism, g: &Homomorphism) -> Homomorphism {
        assert_eq!(self.factors.len(), 2, "pairing into a binary product");
        Homomorphism::new_unchecked(
            f.source().clone(),
            self.product.clone(),
            FiniteFunction::pair(f.map(), g.map()),
        )
    }
}

/// Componentwise product `X × Y` with row-major encoding.
pub fn product(x: &Arc<FiniteAlgebra>, y: &Arc<FiniteAlgebra>) -> Result<ProductWitness, AlgebraError> {
    x.same_signature(y)?;
    let (nx, ny) = (x.size(), y.size());
    let n = nx * ny;
    let mut tables = Vec::with_capacity(x.signature().len());
    for (op_index, op) in x.signature().operations().iter().enumerate() {
        let (tx, ty) = (x.table(op_index), y.table(op_index));
        let mut table = Vec::with_capacity(n.pow(op.arity as u32));
        for_each_tuple(n, op.arity, |args| {
            let (mut fx, mut fy) = (0, 0);
            for &a in args {
                fx = fx * nx + a / ny;
                fy = fy * ny + a % ny;
            }
            table.push(tx[fx] * ny + ty[fy]);
        });
        tables.push(table);
    }
    let name = format!("({} x {})", x.name(), y.name());
    let product = Arc::new(FiniteAlgebra {
        name,
        signature: x.signature().clone(),
        size: n,
        tables,
    });
    let p1 = Homomorphism::new_unchecked(product.clone(), x.clone(), FiniteFunction::from_fn(n, nx, |v| v / ny));
    let p2 = Homomorphism::new_unchecked(product.clone(), y.clone(), FiniteFunction::from_fn(n, ny, |v| v % ny));
    Ok(ProductWitness {
        factors: vec![x.clone(), y.clone()],
        product,
        projections: vec![p1, p2],
    })
}

/// Left-nested product `((X₁ × X₂) × X₃) × …` with one projection per factor.
pub fn product_many(factors: &[Arc<FiniteAlgebra>]) -> Result<ProductWitness, AlgebraError> {
    assert!(!factors.is_empty(), "empty product; use terminal()");
    let mut acc = factors[0].clone();
    let mut projections = vec![Homomorphism::identity(&acc)];
    for f in &factors[1..] {
        let pw = product(&acc, f)?;
        projections = projections.iter().map(|p| p.compose(&pw.projections[0])).collect();
        projections.push(pw.projections[1].clone());
        acc = pw.product;
    }
    Ok(ProductWitness {
        factors: factors.to_vec(),
        product: acc,
        projections,
    })
}

/// The one-element algebra of a signature.
pub fn terminal(signature: &Arc<Signature>) -> Arc<FiniteAlgebra> {
    let tables = signature.operations().iter().map(|_| vec![0]).collect();
    Arc::new(FiniteAlgebra {
        name: "*".into(),
        signature: signature.clone(),
        size: 1,
        tables,
    })
}

/// The unique map `t_X: X → ∗`.
pub fn terminal_map(x: &Arc<FiniteAlgebra>, star: &Arc<FiniteAlgebra>) -> Homomorphism {
    assert_eq!(star.size(), 1, "target is not terminal");
    Homomorphism::new_unchecked(x.clone(), star.clone(), FiniteFunction::constant(x.size(), 1, 0))
}

/// The zero morphism `X → Y` of a pointed signature.
pub fn zero_morphism(x: &Arc<FiniteAlgebra>, y: &Arc<FiniteAlgebra>) -> Result<Homomorphism, AlgebraError> {
    let zero = y.zero().ok_or_else(|| AlgebraError::NotPointed(y.name().to_string()))?;
    Homomorphism::new(x.clone(), y.clone(), FiniteFunction::constant(x.size(), y.size(), zero))
}

/// ι₁ = ⟨1, 0⟩ and ι₂ = ⟨0, 1⟩ into `X × X`, with the product they land in.
pub fn quasi_injections(x: &Arc<FiniteAlgebra>) -> Result<(ProductWitness, Homomorphism, Homomorphism), AlgebraError> {
    let zero = x.zero().ok_or_else(|| AlgebraError::NotPointed(x.name().to_string()))?;
    let pw = product(x, x)?;
    let n = x.size();
    let i1 = FiniteFunction::from_fn(n, n * n, |v| v * n + zero);
    let i2 = FiniteFunction::from_fn(n, n * n, |v| zero * n + v);
    let i1 = Homomorphism::new(x.clone(), pw.product.clone(), i1)?;
    let i2 = Homomorphism::new(x.clone(), pw.product.clone(), i2)?;
    Ok((pw, i1, i2))
}

/// Δ = ⟨1, 1⟩: X → X × X.
pub fn diagonal(x: &Arc<FiniteAlgebra>) -> Result<(ProductWitness, Homomorphism), AlgebraError> {
    let pw = product(x, x)?;
    let n = x.size();
    let d = Homomorphism::new(
        x.clone(),
        pw.product.clone(),
        FiniteFunction::from_fn(n, n * n, |v| v * n + v),
    )?;
    Ok((pw, d))
}

/// The subalgebra on a subset, with its inclusion. Elements keep their
/// relative order.
pub fn subalgebra(
    x: &Arc<FiniteAlgebra>,
    elements: &[usize],
    name: impl Into<String>,
) -> Result<(Arc<FiniteAlgebra>, Homomorphism), AlgebraError> {
    let mut elements = elements.to_vec();
    elements.sort_unstable();
    elements.dedup();
    if elements.is_empty() {
        return Err(AlgebraError::EmptyCarrier);
    }
    let mut position = vec![usize::MAX; x.size()];
    for (i, &e) in elements.iter().enumerate() {
        position[e] = i;
    }
    let m = elements.len();
    let mut tables = Vec::with_capacity(x.signature().len());
    for (op_index, op) in x.signature().operations().iter().enumerate() {
        let mut table = Vec::with_capacity(m.pow(op.arity as u32));
        let mut failure = None;
        let mut outer = Vec::with_capacity(op.arity);
        for_each_tuple(m, op.arity, |args| {
            outer.clear();
            outer.extend(args.iter().map(|&a| elements[a]));
            let v = position[x.apply(op_index, &outer)];
            if v == usize::MAX && failure.is_none() {
                failure = Some(outer.clone());
            }
            table.push(v);
        });
        if let Some(args) = failure {
            return Err(AlgebraError::NotClosed {
                op: op.name.clone(),
                args,
            });
        }
        tables.push(table);
    }
    let sub = Arc::new(FiniteAlgebra {
        name: name.into(),
        signature: x.signature().clone(),
        size: m,
        tables,
    });
    let inclusion = Homomorphism::new_unchecked(
        sub.clone(),
        x.clone(),
        FiniteFunction::new(x.size(), elements).expect("elements are in range"),
    );
    Ok((sub, inclusion))
}

/// The pullback of two homomorphisms with a common target, as a subalgebra
/// of the product, indexed like [`SetPullback`].
#[derive(Clone, Debug)]
pub struct PullbackAlgebra {
    pub algebra: Arc<FiniteAlgebra>,
    pub set: SetPullback,
    pub left: Homomorphism,
    pub right: Homomorphism,
}

pub fn pullback(f: &Homomorphism, g: &Homomorphism) -> Result<PullbackAlgebra, AlgebraError> {
    let set = SetPullback::new(f.map(), g.map());
    let (a, b) = (f.source(), g.source());
    let m = set.len();
    let mut tables = Vec::with_capacity(a.signature().len());
    for (op_index, op) in a.signature().operations().iter().enumerate() {
        let mut table = Vec::with_capacity(m.pow(op.arity as u32));
        let mut left = Vec::with_capacity(op.arity);
        let mut right = Vec::with_capacity(op.arity);
        let mut failure = None;
        for_each_tuple(m, op.arity, |args| {
            left.clear();
            right.clear();
            for &i in args {
                left.push(set.pairs[i].0);
                right.push(set.pairs[i].1);
            }
            let v = set
                .index_of(a.apply(op_index, &left), b.apply(op_index, &right))
                .unwrap_or_else(|| {
                    failure.get_or_insert_with(|| args.to_vec());
                    0
                });
            table.push(v);
        });
        if let Some(args) = failure {
            return Err(AlgebraError::NotClosed {
                op: op.name.clone(),
                args,
            });
        }
        tables.push(table);
    }
    let algebra = Arc::new(FiniteAlgebra::new(
        format!("({} x_C {})", a.name(), b.name()),
        a.signature().clone(),
        m,
        tables,
    )?);
    let left = Homomorphism::new_unchecked(algebra.clone(), a.clone(), set.left.clone());
    let right = Homomorphism::new_unchecked(algebra.clone(), b.clone(), set.right.clone());
    Ok(PullbackAlgebra {
        algebra,
        set,
        left,
        right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: usize) -> Arc<FiniteAlgebra> {
        let sig = Arc::new(Signature::jt(&[("mul", 2), ("inv", 1), ("e", 0)], "e", "mul"));
        Arc::new(
            FiniteAlgebra::from_named(
                format!("Z{n}"),
                sig,
                n,
                vec![
                    ("mul", (0..n * n).map(|i| (i / n + i % n) % n).collect()),
                    ("inv", (0..n).map(|i| (n - i) % n).collect()),
                    ("e", vec![0]),
                ],
            )
            .unwrap(),
        )
    }

    #[test]
    fn tuple_enumeration_is_row_major() {
        let mut seen = Vec::new();
        for_each_tuple(3, 2, |a| seen.push(flat_index(3, a)));
        assert_eq!(seen, (0..9).collect::<Vec<_>>());
        let mut count = 0;
        for_each_tuple(4, 0, |a| {
            assert!(a.is_empty());
            count += 1
        });
        assert_eq!(count, 1);
    }

    #[test]
    fn out_of_range_entry_reports_path() {
        let sig = Arc::new(Signature::jt(&[("mul", 2), ("e", 0)], "e", "mul"));
        let err = FiniteAlgebra::from_named("bad", sig, 2, vec![("mul", vec![0, 1, 1, 2]), ("e", vec![0])]);
        match err {
            Err(AlgebraError::OutOfRange { op, path, value, .. }) => {
                assert_eq!(op, "mul");
                assert_eq!(path, vec![1, 1]);
                assert_eq!(value, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn product_projections_are_homomorphisms() {
        let pw = product(&zn(2), &zn(3)).unwrap();
        assert_eq!(pw.product.size(), 6);
        for p in &pw.projections {
            check_homomorphism(p.source(), p.target(), p.map()).unwrap();
        }
        // (1,1) generates Z2×Z3 ≅ Z6.
        let g = pw.pair(1, 1);
        let mut acc = pw.product.zero().unwrap();
        let mut orbit = std::collections::BTreeSet::new();
        for _ in 0..6 {
            acc = pw.product.plus(acc, g);
            orbit.insert(acc);
        }
        assert_eq!(orbit.len(), 6);
    }

    #[test]
    fn product_with_terminal_is_isomorphic() {
        let x = zn(4);
        let pw = product(&x, &terminal(x.signature())).unwrap();
        assert!(pw.projections[0].map().is_bijective());
    }

    #[test]
    fn quasi_injections_and_diagonal() {
        let x = zn(2);
        let (_, i1, i2) = quasi_injections(&x).unwrap();
        assert_eq!(i1.map().values(), &[0, 2]);
        assert_eq!(i2.map().values(), &[0, 1]);
        let (_, d) = diagonal(&x).unwrap();
        assert_eq!(d.map().values(), &[0, 3]);
    }

    #[test]
    fn subalgebra_and_pullback() {
        let z4 = zn(4);
        let (sub, inc) = subalgebra(&z4, &[0, 2], "2Z4").unwrap();
        assert_eq!(sub.size(), 2);
        assert_eq!(inc.map().values(), &[0, 2]);
        assert!(subalgebra(&z4, &[0, 1], "bad").is_err());

        let z2 = zn(2);
        let reduce = Homomorphism::new(z4.clone(), z2.clone(), FiniteFunction::from_fn(4, 2, |v| v % 2)).unwrap();
        let pb = pullback(&reduce, &reduce).unwrap();
        assert_eq!(pb.algebra.size(), 8);
        check_homomorphism(&pb.algebra, &z4, pb.left.map()).unwrap();
    }

    #[test]
    fn non_homomorphism_is_reported() {
        let z4 = zn(4);
        let z2 = zn(2);
        let bad = FiniteFunction::from_fn(4, 2, |v| usize::from(v == 1));
        assert!(matches!(
            Homomorphism::new(z4, z2, bad),
            Err(AlgebraError::NotHomomorphism { .. })
        ));
    }
}
