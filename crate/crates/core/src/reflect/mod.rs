//! The commutative-monoid reflection as a coequalizer of the quasi-injections,
//! and the assignment data (L, +, 0, −, η, ν, ω) derived from it.

pub mod json;
mod oracle;
mod verify;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    for_each_tuple, product, terminal, AlgebraError, FiniteAlgebra, FiniteFunction, Homomorphism, ProductWitness,
    Signature,
};
use crate::congruence::{close, quotient_tables, CongruenceError, SquareView};

pub use oracle::{
    group_commutator_oracle, loop_commutator_oracle, mediating_iso, ring_square_oracle, OracleReflection,
};
pub use verify::{verify_assignment, TestFamily, ASSIGNMENT_AXIOMS};

/// Estimated translation steps for closing a congruence on the implicit
/// square of an `n`-element algebra.
pub fn closure_work(signature: &Signature, n: usize) -> u64 {
    let m = (n as u64).saturating_mul(n as u64);
    signature
        .operations()
        .iter()
        .filter(|op| op.arity > 0)
        .map(|op| {
            let per_pair = (op.arity as u64).saturating_mul(m.saturating_pow(op.arity as u32 - 1));
            m.saturating_mul(per_pair)
        })
        .fold(0u64, u64::saturating_add)
}

/// Total table entries of an `n`-element algebra.
pub fn table_cells(signature: &Signature, n: usize) -> u64 {
    signature
        .operations()
        .iter()
        .map(|op| (n as u64).saturating_pow(op.arity as u32))
        .fold(0u64, u64::saturating_add)
}

/// Which reflector the engine materializes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Commutative-monoid reflection.
    Cmon,
    /// Same coequalizer, additionally requiring negatives.
    Ab,
    /// L(X) = X; valid on inputs that are already commutative.
    Identity,
    /// L(X) = ∗.
    Terminal,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Cmon => "cmon",
            Mode::Ab => "ab",
            Mode::Identity => "identity",
            Mode::Terminal => "terminal",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cmon" => Ok(Mode::Cmon),
            "ab" => Ok(Mode::Ab),
            "identity" => Ok(Mode::Identity),
            "terminal" => Ok(Mode::Terminal),
            other => Err(format!("unknown mode `{other}` (cmon, ab, identity, terminal)")),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReflectError {
    #[error("algebra `{0}` has no jt designation")]
    NotPointed(String),
    #[error("operation `{op}` does not fix zero, so the quasi-injections are not homomorphisms")]
    ZeroNotFixed { op: String },
    #[error("plus is not associative: ({0} + {1}) + {2} differs from {0} + ({1} + {2})", witness[0], witness[1], witness[2])]
    Associativity { witness: [usize; 3] },
    #[error("plus is not commutative: {} + {} differs from {} + {}", witness[0], witness[1], witness[1], witness[0])]
    Commutativity { witness: [usize; 2] },
    #[error("zero is not a unit for plus at {element}")]
    Unit { element: usize },
    #[error("plus is not a homomorphism for `{op}` at {left:?} and {right:?}")]
    PlusNotHomomorphic {
        op: String,
        left: Vec<usize>,
        right: Vec<usize>,
    },
    #[error("element {element} has no inverse")]
    MissingInverse { element: usize },
    #[error("element {element} has two inverses {first} and {second}")]
    AmbiguousInverse {
        element: usize,
        first: usize,
        second: usize,
    },
    #[error("the unit is not surjective: class {class} is missed")]
    UnitNotSurjective { class: usize },
    #[error("projection does not coequalize the quasi-injections at {element}")]
    NotCoequalizing { element: usize },
    #[error("unit of L(X) is not bijective on `{name}`")]
    NotIdempotent { name: String },
    #[error("multiplication coherence fails at {element}")]
    NuCoherence { element: usize },
    #[error("comparison map for `{left}` x `{right}` is not bijective")]
    NotProductPreserving { left: String, right: String },
    #[error("induced map is not well defined: pairs {first} and {second} share a class but their images do not")]
    NotWellDefined { first: usize, second: usize },
    #[error("map is not a monoid morphism: {detail}")]
    NotMonoidMorphism { detail: String },
    #[error("variety law violated: {0}")]
    Variety(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
}

/// (L(X), +, 0) together with −, when every class has an inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommutativeMonoidWitness {
    pub size: usize,
    pub plus: Vec<usize>,
    pub zero: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub neg: Option<Vec<usize>>,
}

impl CommutativeMonoidWitness {
    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.plus[a * self.size + b]
    }

    pub fn negate(&self, a: usize) -> Option<usize> {
        self.neg.as_ref().map(|n| n[a])
    }

    pub fn check_monoid(&self) -> Result<(), ReflectError> {
        let n = self.size;
        for a in 0..n {
            if self.add(a, self.zero) != a || self.add(self.zero, a) != a {
                return Err(ReflectError::Unit { element: a });
            }
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(ReflectError::Commutativity { witness: [a, b] });
                }
                let ab = self.add(a, b);
                for c in 0..n {
                    if self.add(ab, c) != self.add(a, self.add(b, c)) {
                        return Err(ReflectError::Associativity { witness: [a, b, c] });
                    }
                }
            }
        }
        Ok(())
    }

    /// Inverse of each element by scan, asserting uniqueness.
    pub fn find_negation(&self) -> Result<Vec<usize>, ReflectError> {
        let n = self.size;
        let mut neg = Vec::with_capacity(n);
        for a in 0..n {
            let mut found = None;
            for b in 0..n {
                if self.add(a, b) == self.zero && self.add(b, a) == self.zero {
                    if let Some(first) = found {
                        return Err(ReflectError::AmbiguousInverse {
                            element: a,
                            first,
                            second: b,
                        });
                    }
                    found = Some(b);
                }
            }
            neg.push(found.ok_or(ReflectError::MissingInverse { element: a })?);
        }
        Ok(neg)
    }

    /// f(a⃗ + b⃗) = f(a⃗) + f(b⃗) for every operation of `alg`, i.e. plus is a
    /// homomorphism `L × L → L`.
    pub fn check_plus_homomorphic(&self, alg: &FiniteAlgebra) -> Result<(), ReflectError> {
        let n = self.size;
        let mut sum = Vec::new();
        for (op_index, op) in alg.signature().operations().iter().enumerate() {
            let k = op.arity;
            let mut failure = None;
            for_each_tuple(n, k, |left| {
                if failure.is_some() {
                    return;
                }
                let fl = alg.apply(op_index, left);
                for_each_tuple(n, k, |right| {
                    if failure.is_some() {
                        return;
                    }
                    sum.clear();
                    sum.extend(left.iter().zip(right).map(|(&a, &b)| self.add(a, b)));
                    let fr = alg.apply(op_index, right);
                    if alg.apply(op_index, &sum) != self.add(fl, fr) {
                        failure = Some((left.to_vec(), right.to_vec()));
                    }
                });
            });
            if let Some((left, right)) = failure {
                return Err(ReflectError::PlusNotHomomorphic {
                    op: op.name.clone(),
                    left,
                    right,
                });
            }
        }
        Ok(())
    }
}

/// L(X) with its witness, unit and coequalizer projection.
#[derive(Clone, Debug)]
pub struct ReflectionResult {
    pub mode: Mode,
    pub input: Arc<FiniteAlgebra>,
    pub reflected: Arc<FiniteAlgebra>,
    pub witness: CommutativeMonoidWitness,
    /// η_X: X → L(X).
    pub unit: Homomorphism,
    /// q: X × X → L(X), on the row-major pair index.
    pub projection: FiniteFunction,
    /// One pair index of `X × X` per class of L(X).
    pub section: Vec<usize>,
    validation: Result<(), ReflectError>,
}

impl ReflectionResult {
    pub fn validation(&self) -> Result<(), ReflectError> {
        self.validation.clone()
    }

    pub fn is_valid(&self) -> bool {
        self.validation.is_ok()
    }

    pub fn size(&self) -> usize {
        self.reflected.size()
    }
}

/// Memoizing reflector for one mode. Safe to share across threads; two
/// callers racing on the same algebra may both compute, and the tables they
/// get are identical.
#[derive(Debug)]
pub struct AssignmentEngine {
    mode: Mode,
    cache: Mutex<HashMap<Arc<FiniteAlgebra>, Arc<ReflectionResult>>>,
}

/// ν_X: LL(X) → L(X) and its inverse η_{L(X)}.
#[derive(Clone, Debug)]
pub struct Nu {
    pub forward: Homomorphism,
    pub inverse: Homomorphism,
}

/// ω_{X,Y} = ⟨L(π₁), L(π₂)⟩ with its inverse and the products involved.
#[derive(Clone, Debug)]
pub struct Omega {
    pub source: ProductWitness,
    pub target: ProductWitness,
    pub forward: Homomorphism,
    pub inverse: Homomorphism,
}

impl AssignmentEngine {
    pub fn new(mode: Mode) -> Self {
        Self {
            mode,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn cached(&self) -> usize {
        self.cache.lock().expect("cache lock").len()
    }

    /// Reflection without the witness checks; errors only when the
    /// construction itself is impossible.
    pub fn reflect_unchecked(&self, x: &Arc<FiniteAlgebra>) -> Result<Arc<ReflectionResult>, ReflectError> {
        if let Some(r) = self.cache.lock().expect("cache lock").get(x) {
            return Ok(r.clone());
        }
        let computed = Arc::new(construct(self.mode, x)?);
        let mut cache = self.cache.lock().expect("cache lock");
        Ok(cache.entry(x.clone()).or_insert(computed).clone())
    }

    /// Reflection whose witness passed every check.
    pub fn reflect(&self, x: &Arc<FiniteAlgebra>) -> Result<Arc<ReflectionResult>, ReflectError> {
        let r = self.reflect_unchecked(x)?;
        r.validation()?;
        Ok(r)
    }

    /// L(f).
    pub fn lift(&self, f: &Homomorphism) -> Result<Homomorphism, ReflectError> {
        let rx = self.reflect(f.source())?;
        let ry = self.reflect(f.target())?;
        induced_hom(f, &rx, &ry)
    }

    pub fn nu(&self, x: &Arc<FiniteAlgebra>) -> Result<Nu, ReflectError> {
        let rx = self.reflect(x)?;
        let rl = self.reflect(&rx.reflected)?;
        let nu = nu_from(&rx, &rl)?;
        let rll = self.reflect(&rl.reflected)?;
        let nu_l = nu_from(&rl, &rll)?;
        let lifted = induced_hom(&nu.forward, &rll, &rl)?;
        if let Some(element) = lifted.map().first_difference(nu_l.forward.map()) {
            return Err(ReflectError::NuCoherence { element });
        }
        Ok(nu)
    }

    pub fn omega(&self, x: &Arc<FiniteAlgebra>, y: &Arc<FiniteAlgebra>) -> Result<Omega, ReflectError> {
        let source = product(x, y)?;
        let rp = self.reflect(&source.product)?;
        let rx = self.reflect(x)?;
        let ry = self.reflect(y)?;
        let l1 = induced_hom(&source.projections[0], &rp, &rx)?;
        let l2 = induced_hom(&source.projections[1], &rp, &ry)?;
        let target = product(&rx.reflected, &ry.reflected)?;
        let forward = target.pairing(&l1, &l2);
        let inverse = forward.inverse().ok_or_else(|| ReflectError::NotProductPreserving {
            left: x.name().to_string(),
            right: y.name().to_string(),
        })?;
        let (lx, ly) = (&rx.witness, &ry.witness);
        for a in 0..rp.size() {
            for b in 0..rp.size() {
                let (a1, a2) = target.split(forward.apply(a));
                let (b1, b2) = target.split(forward.apply(b));
                let expect = target.pair(lx.add(a1, b1), ly.add(a2, b2));
                if forward.apply(rp.witness.add(a, b)) != expect {
                    return Err(ReflectError::NotMonoidMorphism {
                        detail: format!("omega at ({a}, {b})"),
                    });
                }
            }
        }
        Ok(Omega {
            source,
            target,
            forward,
            inverse,
        })
    }

    /// The structure map a = η_A⁻¹ when η_A is bijective.
    pub fn is_l_algebra(&self, a: &Arc<FiniteAlgebra>) -> Result<Option<Homomorphism>, ReflectError> {
        let ra = self.reflect(a)?;
        let Some(structure) = ra.unit.inverse() else {
            return Ok(None);
        };
        let lifted = self.lift(&structure)?;
        let nu = self.nu(a)?;
        if let Some(element) = lifted.map().first_difference(nu.forward.map()) {
            return Err(ReflectError::NuCoherence { element });
        }
        Ok(Some(structure))
    }
}

pub(crate) fn nu_from(rx: &ReflectionResult, rl: &ReflectionResult) -> Result<Nu, ReflectError> {
    let inverse = rl.unit.clone();
    let forward = inverse.inverse().ok_or_else(|| ReflectError::NotIdempotent {
        name: rx.input.name().to_string(),
    })?;
    check_monoid_morphism(forward.map(), &rl.witness, &rx.witness)?;
    Ok(Nu { forward, inverse })
}

/// f preserves plus, zero and (when both sides have it) negation.
pub fn check_monoid_morphism(
    f: &FiniteFunction,
    from: &CommutativeMonoidWitness,
    to: &CommutativeMonoidWitness,
) -> Result<(), ReflectError> {
    if f.apply(from.zero) != to.zero {
        return Err(ReflectError::NotMonoidMorphism {
            detail: "zero not preserved".into(),
        });
    }
    for a in 0..from.size {
        for b in 0..from.size {
            if f.apply(from.add(a, b)) != to.add(f.apply(a), f.apply(b)) {
                return Err(ReflectError::NotMonoidMorphism {
                    detail: format!("plus not preserved at ({a}, {b})"),
                });
            }
        }
        if let (Some(na), Some(nfa)) = (from.negate(a), to.negate(f.apply(a))) {
            if f.apply(na) != nfa {
                return Err(ReflectError::NotMonoidMorphism {
                    detail: format!("negation not preserved at {a}"),
                });
            }
        }
    }
    Ok(())
}

/// L(f): the class of w goes to the class of (f × f)(w). Checked for well
/// definedness on all of X × X, for the homomorphism property and for
/// preservation of the witness.
pub fn induced_hom(
    f: &Homomorphism,
    rx: &ReflectionResult,
    ry: &ReflectionResult,
) -> Result<Homomorphism, ReflectError> {
    let table = induced_table(f.map(), rx, ry)?;
    let hom = Homomorphism::new(rx.reflected.clone(), ry.reflected.clone(), table)?;
    check_monoid_morphism(hom.map(), &rx.witness, &ry.witness)?;
    Ok(hom)
}

/// The table of L(f) for any function f on carriers, with the well
/// definedness scan but no homomorphism checks.
pub fn induced_table(
    f: &FiniteFunction,
    rx: &ReflectionResult,
    ry: &ReflectionResult,
) -> Result<FiniteFunction, ReflectError> {
    let (nx, ny) = (rx.input.size(), ry.input.size());
    assert_eq!(f.domain(), nx, "L(f) with f from the wrong carrier");
    assert_eq!(f.codomain(), ny, "L(f) with f into the wrong carrier");
    let image = |w: usize| ry.projection.apply(f.apply(w / nx) * ny + f.apply(w % nx));
    let table: Vec<usize> = rx.section.iter().map(|&w| image(w)).collect();
    for w in 0..nx * nx {
        let class = rx.projection.apply(w);
        if table[class] != image(w) {
            return Err(ReflectError::NotWellDefined {
                first: rx.section[class],
                second: w,
            });
        }
    }
    Ok(FiniteFunction::new(ry.size(), table)?)
}

fn construct(mode: Mode, x: &Arc<FiniteAlgebra>) -> Result<ReflectionResult, ReflectError> {
    let n = x.size();
    let sig = x.signature().clone();
    match mode {
        Mode::Cmon | Mode::Ab => {
            let zero = x.zero().ok_or_else(|| ReflectError::NotPointed(x.name().to_string()))?;
            if let Some(op) = x.zero_fixing_violation() {
                return Err(ReflectError::ZeroNotFixed { op });
            }
            let seeds: Vec<(usize, usize)> = (0..n).map(|v| (v * n + zero, zero * n + v)).collect();
            let view = SquareView::new(x);
            let labels = close(&view, &seeds).labels();
            let (l, section) = quotient_tables(&view, &labels, format!("L({})", x.name()), sig)?;
            let l = Arc::new(l);
            let m = l.size();
            let projection = FiniteFunction::new(m, labels)?;
            let unit = FiniteFunction::from_fn(n, m, |v| projection.apply(v * n + zero));
            let unit = Homomorphism::new_unchecked(x.clone(), l.clone(), unit);
            let witness = witness_of(&l);
            Ok(finish(mode, x.clone(), l, witness, unit, projection, section))
        }
        Mode::Identity => {
            let zero = x.zero().ok_or_else(|| ReflectError::NotPointed(x.name().to_string()))?;
            let projection = FiniteFunction::from_fn(n * n, n, |w| x.plus(w / n, w % n));
            let section = (0..n).map(|c| c * n + zero).collect();
            let witness = witness_of(x);
            let unit = Homomorphism::identity(x);
            Ok(finish(mode, x.clone(), x.clone(), witness, unit, projection, section))
        }
        Mode::Terminal => {
            let star = terminal(&sig);
            let projection = FiniteFunction::constant(n * n, 1, 0);
            let witness = CommutativeMonoidWitness {
                size: 1,
                plus: vec![0],
                zero: 0,
                neg: Some(vec![0]),
            };
            let unit = Homomorphism::new_unchecked(x.clone(), star.clone(), FiniteFunction::constant(n, 1, 0));
            Ok(finish(mode, x.clone(), star, witness, unit, projection, vec![0]))
        }
    }
}

fn witness_of(l: &FiniteAlgebra) -> CommutativeMonoidWitness {
    let plus = l.table(l.signature().plus_op().expect("pointed")).to_vec();
    CommutativeMonoidWitness {
        size: l.size(),
        plus,
        zero: l.zero().expect("pointed"),
        neg: None,
    }
}

fn finish(
    mode: Mode,
    input: Arc<FiniteAlgebra>,
    reflected: Arc<FiniteAlgebra>,
    mut witness: CommutativeMonoidWitness,
    unit: Homomorphism,
    projection: FiniteFunction,
    section: Vec<usize>,
) -> ReflectionResult {
    let mut validation = witness
        .check_monoid()
        .and_then(|_| witness.check_plus_homomorphic(&reflected));
    if validation.is_ok() && matches!(mode, Mode::Ab | Mode::Identity) {
        match witness.find_negation() {
            Ok(neg) => witness.neg = Some(neg),
            Err(e) if mode == Mode::Ab => validation = Err(e),
            Err(_) => {}
        }
    }
    if validation.is_ok() && matches!(mode, Mode::Cmon | Mode::Ab) {
        validation = check_coequalizer(&input, &unit, &projection);
    }
    ReflectionResult {
        mode,
        input,
        reflected,
        witness,
        unit,
        projection,
        section,
        validation,
    }
}

pub(crate) fn check_coequalizer(
    x: &FiniteAlgebra,
    unit: &Homomorphism,
    q: &FiniteFunction,
) -> Result<(), ReflectError> {
    let n = x.size();
    let zero = x.zero().expect("pointed");
    for v in 0..n {
        let (a, b) = (q.apply(v * n + zero), q.apply(zero * n + v));
        if a != b || a != unit.apply(v) {
            return Err(ReflectError::NotCoequalizing { element: v });
        }
    }
    if let Some(class) = unit.map().first_missed() {
        return Err(ReflectError::UnitNotSurjective { class });
    }
    crate::algebra::check_homomorphism(x, unit.target(), unit.map())?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{generate, GeneratorSpec};

    fn gen(spec: GeneratorSpec) -> Arc<FiniteAlgebra> {
        Arc::new(generate(&spec).unwrap())
    }

    #[test]
    fn s3_abelianizes_to_z2_by_parity() {
        let engine = AssignmentEngine::new(Mode::Ab);
        let s3 = gen(GeneratorSpec::Symmetric(3));
        let r = engine.reflect(&s3).unwrap();
        assert_eq!(r.size(), 2);
        // Catalog S3 lists permutations in lexicographic order; parity is
        // even, odd, odd, even, even, odd.
        let parity = [0, 1, 1, 0, 0, 1];
        for (g, &sign) in parity.iter().enumerate() {
            assert_eq!(r.unit.apply(g) == r.witness.zero, sign == 0);
        }
    }

    #[test]
    fn trivial_algebra_reflects_to_terminal() {
        let engine = AssignmentEngine::new(Mode::Cmon);
        let one = gen(GeneratorSpec::CyclicGroup(1));
        assert_eq!(engine.reflect(&one).unwrap().size(), 1);
    }

    #[test]
    fn abelian_inputs_are_fixed_points() {
        let engine = AssignmentEngine::new(Mode::Ab);
        let z6 = gen(GeneratorSpec::CyclicGroup(6));
        let r = engine.reflect(&z6).unwrap();
        assert!(r.unit.map().is_bijective());
        assert!(engine.is_l_algebra(&z6).unwrap().is_some());
        assert!(engine
            .is_l_algebra(&gen(GeneratorSpec::Symmetric(3)))
            .unwrap()
            .is_none());
    }

    #[test]
    fn idempotent_monoid_has_no_inverse() {
        let engine = AssignmentEngine::new(Mode::Ab);
        let m = gen(GeneratorSpec::Semilattice2);
        assert_eq!(
            engine.reflect(&m).unwrap_err(),
            ReflectError::MissingInverse { element: 1 }
        );
    }

    #[test]
    fn leftzero_monoid_unit_not_injective() {
        let engine = AssignmentEngine::new(Mode::Cmon);
        let m = gen(GeneratorSpec::LeftZeroMonoid);
        let r = engine.reflect(&m).unwrap();
        assert_eq!(r.size(), 2);
        assert_eq!(r.unit.apply(1), r.unit.apply(2));
        assert!(engine.is_l_algebra(&m).unwrap().is_none());
    }

    #[test]
    fn omega_sizes() {
        let engine = AssignmentEngine::new(Mode::Ab);
        let s3 = gen(GeneratorSpec::Symmetric(3));
        let z2 = gen(GeneratorSpec::CyclicGroup(2));
        let w = engine.omega(&s3, &z2).unwrap();
        assert_eq!(w.forward.source().size(), 4);
        let star = terminal(s3.signature());
        let w = engine.omega(&s3, &star).unwrap();
        assert_eq!(w.forward.source().size(), 2);
        let w = engine.omega(&z2, &z2).unwrap();
        assert!(w.forward.map().is_bijective());
    }

    #[test]
    fn nu_inverts_unit_of_reflection() {
        let engine = AssignmentEngine::new(Mode::Ab);
        let s3 = gen(GeneratorSpec::Symmetric(3));
        let nu = engine.nu(&s3).unwrap();
        let id = nu.forward.compose(&nu.inverse);
        assert_eq!(id.map(), &FiniteFunction::identity(2));
        let t = AssignmentEngine::new(Mode::Terminal);
        assert_eq!(t.nu(&s3).unwrap().forward.map().domain(), 1);
    }

    #[test]
    fn functor_laws_on_a_chain() {
        let engine = AssignmentEngine::new(Mode::Ab);
        let s3 = gen(GeneratorSpec::Symmetric(3));
        let z2 = gen(GeneratorSpec::CyclicGroup(2));
        let sign = Homomorphism::new(
            s3.clone(),
            z2.clone(),
            FiniteFunction::new(2, vec![0, 1, 1, 0, 0, 1]).unwrap(),
        )
        .unwrap();
        let id2 = Homomorphism::identity(&z2);
        let composite = id2.compose(&sign);
        let lhs = engine.lift(&composite).unwrap();
        let rhs = engine.lift(&id2).unwrap().compose(&engine.lift(&sign).unwrap());
        assert_eq!(lhs, rhs);
        assert_eq!(
            engine.lift(&Homomorphism::identity(&s3)).unwrap().map(),
            &FiniteFunction::identity(2)
        );
        let zero = crate::algebra::zero_morphism(&s3, &z2).unwrap();
        let lz = engine.lift(&zero).unwrap();
        assert!(lz.map().values().iter().all(|&v| v == 0));
    }

    #[test]
    fn cache_is_transparent() {
        let cached = AssignmentEngine::new(Mode::Ab);
        let d4 = gen(GeneratorSpec::Dihedral(4));
        let first = cached.reflect(&d4).unwrap();
        let second = cached.reflect(&d4).unwrap();
        assert!(Arc::ptr_eq(&first, &second));
        let fresh = AssignmentEngine::new(Mode::Ab).reflect(&d4).unwrap();
        assert_eq!(*first.reflected, *fresh.reflected);
        assert_eq!(first.unit, fresh.unit);
    }
}
