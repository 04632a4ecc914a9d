//! The tangent structure T(X) = X × L(X) induced by an assignment, with
//! every structural map stored as an explicit table.

pub mod bundle;
pub mod verify;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::algebra::{
    interchange_tau, product, pullback, AlgebraError, FiniteAlgebra, FiniteFunction, Homomorphism, ProductWitness,
    Signature,
};
pub use crate::reflect::{closure_work, table_cells};
use crate::reflect::{induced_table, AssignmentEngine, Mode, Nu, Omega, ReflectError, ReflectionResult};

pub use bundle::{AdditiveBundle, BundleData};
pub use verify::{default_homs, verify_tangent, TangentReport, TangentSizes, TANGENT_AXIOMS};

/// Largest materialized carrier by default.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Default cap on estimated work for one closure or one product table.
pub const DEFAULT_WORK_LIMIT: u64 = 200_000_000;

/// Environment variable overriding the carrier budget.
pub const BUDGET_ENV: &str = "TANALG_BUDGET";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TangentError {
    #[error(transparent)]
    Reflect(#[from] ReflectError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{what} has {size} elements, over the budget of {limit}")]
    Budget { what: String, size: usize, limit: usize },
    #[error("{what} needs about {work} steps, over the work limit of {limit}")]
    Work { what: String, work: u64, limit: u64 },
}

impl TangentError {
    /// Resource limits, as opposed to mathematical failures.
    pub fn is_resource(&self) -> bool {
        matches!(self, TangentError::Budget { .. } | TangentError::Work { .. })
    }
}

/// Resource limits. `carrier` bounds every materialized carrier; `work`
/// bounds the estimated steps of a single congruence closure or product
/// table, since those grow much faster than carriers do.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub carrier: usize,
    pub work: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            carrier: DEFAULT_BUDGET,
            work: DEFAULT_WORK_LIMIT,
        }
    }
}

impl Budget {
    pub fn with_carrier(carrier: usize) -> Self {
        Self {
            carrier,
            ..Self::default()
        }
    }

    /// The default, with the carrier limit taken from `TANALG_BUDGET` when
    /// it parses.
    pub fn from_env() -> Self {
        match std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            Some(carrier) => Self::with_carrier(carrier),
            None => Self::default(),
        }
    }

    fn admit_carrier(&self, what: impl FnOnce() -> String, size: usize) -> Result<(), TangentError> {
        if size > self.carrier {
            return Err(TangentError::Budget {
                what: what(),
                size,
                limit: self.carrier,
            });
        }
        Ok(())
    }

    fn admit_work(&self, what: impl FnOnce() -> String, work: u64) -> Result<(), TangentError> {
        if work > self.work {
            return Err(TangentError::Work {
                what: what(),
                work,
                limit: self.work,
            });
        }
        Ok(())
    }
}

/// Shared state for tangent computations: the assignment, resource limits
/// and a cache of tangent carriers.
#[derive(Clone, Debug)]
pub struct Context {
    engine: Arc<AssignmentEngine>,
    budget: Budget,
    carriers: Arc<Mutex<HashMap<Arc<FiniteAlgebra>, Arc<ProductWitness>>>>,
}

impl Context {
    pub fn new(engine: Arc<AssignmentEngine>, budget: Budget) -> Self {
        Self {
            engine,
            budget,
            carriers: Arc::default(),
        }
    }

    pub fn with_mode(mode: Mode, budget: Budget) -> Self {
        Self::new(Arc::new(AssignmentEngine::new(mode)), budget)
    }

    pub fn engine(&self) -> &Arc<AssignmentEngine> {
        &self.engine
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn mode(&self) -> Mode {
        self.engine.mode()
    }

    /// Identity mode has no closure, but validating its witness scans the
    /// same number of argument pairs.
    fn admit_reflection(&self, x: &FiniteAlgebra) -> Result<(), TangentError> {
        if self.mode() != Mode::Terminal {
            let work = closure_work(x.signature(), x.size());
            self.budget.admit_work(|| format!("reflecting {}", x.name()), work)?;
        }
        Ok(())
    }

    pub(crate) fn admit_product(
        &self,
        sig: &Signature,
        what: impl Fn() -> String,
        size: usize,
    ) -> Result<(), TangentError> {
        self.budget.admit_carrier(&what, size)?;
        self.budget.admit_work(&what, table_cells(sig, size))
    }

    /// A validated reflection, refused when its closure is too expensive.
    pub fn reflect(&self, x: &Arc<FiniteAlgebra>) -> Result<Arc<ReflectionResult>, TangentError> {
        self.admit_reflection(x)?;
        Ok(self.engine.reflect(x)?)
    }

    pub fn lift(&self, f: &Homomorphism) -> Result<Homomorphism, TangentError> {
        self.reflect(f.source())?;
        self.reflect(f.target())?;
        Ok(self.engine.lift(f)?)
    }

    pub fn nu(&self, x: &Arc<FiniteAlgebra>) -> Result<Nu, TangentError> {
        let rx = self.reflect(x)?;
        let rl = self.reflect(&rx.reflected)?;
        self.reflect(&rl.reflected)?;
        Ok(self.engine.nu(x)?)
    }

    pub fn omega(&self, x: &Arc<FiniteAlgebra>, y: &Arc<FiniteAlgebra>) -> Result<Omega, TangentError> {
        let size = x.size() * y.size();
        self.admit_product(x.signature(), || format!("{} x {}", x.name(), y.name()), size)?;
        self.budget.admit_work(
            || format!("reflecting {} x {}", x.name(), y.name()),
            closure_work(x.signature(), size),
        )?;
        self.reflect(x)?;
        self.reflect(y)?;
        Ok(self.engine.omega(x, y)?)
    }

    /// The carrier X × L(X), built once per algebra.
    pub fn tangent_carrier(&self, x: &Arc<FiniteAlgebra>) -> Result<Arc<ProductWitness>, TangentError> {
        if let Some(c) = self.carriers.lock().expect("carrier lock").get(x) {
            return Ok(c.clone());
        }
        let rx = self.reflect(x)?;
        let size = x.size() * rx.size();
        self.admit_product(x.signature(), || format!("T({})", x.name()), size)?;
        let mut pw = product(x, &rx.reflected)?;
        let named = (*pw.product).clone().renamed(format!("T({})", x.name()));
        pw.product = Arc::new(named);
        for p in &mut pw.projections {
            *p = Homomorphism::new_unchecked(pw.product.clone(), p.target().clone(), p.map().clone());
        }
        let pw = Arc::new(pw);
        let mut cache = self.carriers.lock().expect("carrier lock");
        Ok(cache.entry(x.clone()).or_insert(pw).clone())
    }

    /// The table of L(f) for a function between carriers of `src` and `dst`.
    pub fn lift_fn(
        &self,
        f: &FiniteFunction,
        src: &Arc<FiniteAlgebra>,
        dst: &Arc<FiniteAlgebra>,
    ) -> Result<FiniteFunction, TangentError> {
        let rs = self.reflect(src)?;
        let rd = self.reflect(dst)?;
        Ok(induced_table(f, &rs, &rd)?)
    }

    /// T(f) = f × L(f) on the pair encoding.
    pub fn t_fn(
        &self,
        f: &FiniteFunction,
        src: &Arc<FiniteAlgebra>,
        dst: &Arc<FiniteAlgebra>,
    ) -> Result<FiniteFunction, TangentError> {
        let lf = self.lift_fn(f, src, dst)?;
        Ok(FiniteFunction::product(f, &lf))
    }

    /// T(f) as a map between the tangent carrier algebras.
    pub fn t_hom(&self, f: &Homomorphism) -> Result<Homomorphism, TangentError> {
        let map = self.t_fn(f.map(), f.source(), f.target())?;
        let src = self.tangent_carrier(f.source())?;
        let dst = self.tangent_carrier(f.target())?;
        Ok(Homomorphism::new_unchecked(
            src.product.clone(),
            dst.product.clone(),
            map,
        ))
    }
}

/// T(f) for a function between the carriers of two algebras.
pub fn tangent_of_function(
    ctx: &Context,
    f: &FiniteFunction,
    src: &Arc<FiniteAlgebra>,
    dst: &Arc<FiniteAlgebra>,
) -> Result<FiniteFunction, TangentError> {
    ctx.t_fn(f, src, dst)
}

/// The part of the structure that needs T(T(X)): ω, ν, ℓ and c.
#[derive(Clone, Debug)]
pub struct SecondOrder {
    /// ω for X and L(X).
    pub omega: Omega,
    pub nu: Nu,
    /// ẑ = ω⁻¹ ∘ ⟨0 ∘ t, ν⁻¹⟩: L(X) → L(T(X)).
    pub zhat: FiniteFunction,
    /// T(T(X)) = T(X) × L(T(X)).
    pub square: Arc<ProductWitness>,
    /// ℓ: T(X) → T(T(X)).
    pub ell: Homomorphism,
    /// c: T(T(X)) → T(T(X)).
    pub flip: Homomorphism,
}

/// T(X) with its bundle structure (p, s, z, n) over X. The second-order
/// maps and the tangent space of T(X) itself are built on first use.
#[derive(Clone, Debug)]
pub struct TangentSpace {
    ctx: Context,
    pub base: Arc<FiniteAlgebra>,
    pub reflection: Arc<ReflectionResult>,
    /// X × L(X).
    pub carrier: Arc<ProductWitness>,
    /// p = π₁, s = 1 × +, z = ⟨1, 0 ∘ t⟩ and n = 1 × − when L has negation.
    pub bundle: BundleData,
    second: OnceLock<Result<Arc<SecondOrder>, TangentError>>,
    iterated: OnceLock<Result<Arc<TangentSpace>, TangentError>>,
}

impl TangentSpace {
    pub fn build(ctx: &Context, x: &Arc<FiniteAlgebra>) -> Result<Arc<Self>, TangentError> {
        let reflection = ctx.reflect(x)?;
        let carrier = ctx.tangent_carrier(x)?;
        let t = carrier.product.clone();
        let (nx, nl) = (x.size(), reflection.size());
        let w = &reflection.witness;

        let p = carrier.projections[0].clone();
        let pairs = pullback(&p, &p)?;
        let sum = FiniteFunction::from_fn(pairs.set.len(), t.size(), |i| {
            let (v1, v2) = pairs.set.pairs[i];
            let (x, a) = carrier.split(v1);
            let (_, b) = carrier.split(v2);
            carrier.pair(x, w.add(a, b))
        });
        let sum = Homomorphism::new_unchecked(pairs.algebra.clone(), t.clone(), sum);
        let zero = FiniteFunction::pair(&FiniteFunction::identity(nx), &FiniteFunction::constant(nx, nl, w.zero));
        let zero = Homomorphism::new_unchecked(x.clone(), t.clone(), zero);
        let neg = match &w.neg {
            Some(neg) => {
                let neg = FiniteFunction::new(nl, neg.clone())?;
                let n = FiniteFunction::product(&FiniteFunction::identity(nx), &neg);
                Some(Homomorphism::new_unchecked(t.clone(), t.clone(), n))
            }
            None => None,
        };
        let bundle = BundleData {
            base: x.clone(),
            total: t,
            q: p,
            pairs,
            sum,
            zero,
            neg,
        };
        Ok(Arc::new(Self {
            ctx: ctx.clone(),
            base: x.clone(),
            reflection,
            carrier,
            bundle,
            second: OnceLock::new(),
            iterated: OnceLock::new(),
        }))
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    /// The tangent algebra T(X).
    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.carrier.product
    }

    pub fn size(&self) -> usize {
        self.carrier.product.size()
    }

    /// Size of L(X).
    pub fn fibre_size(&self) -> usize {
        self.reflection.size()
    }

    pub fn p(&self) -> &Homomorphism {
        &self.bundle.q
    }

    pub fn s(&self) -> &Homomorphism {
        &self.bundle.sum
    }

    pub fn z(&self) -> &Homomorphism {
        &self.bundle.zero
    }

    pub fn n(&self) -> Option<&Homomorphism> {
        self.bundle.neg.as_ref()
    }

    pub fn second(&self) -> Result<&Arc<SecondOrder>, TangentError> {
        self.second
            .get_or_init(|| self.build_second().map(Arc::new))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// The tangent space of T(X), giving T² and T³.
    pub fn iterated(&self) -> Result<&Arc<TangentSpace>, TangentError> {
        self.iterated
            .get_or_init(|| TangentSpace::build(&self.ctx, self.algebra()))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn ell(&self) -> Result<&Homomorphism, TangentError> {
        Ok(&self.second()?.ell)
    }

    pub fn flip(&self) -> Result<&Homomorphism, TangentError> {
        Ok(&self.second()?.flip)
    }

    /// A copy whose second-order data is edited by `edit`, sharing the
    /// tangent space of T(X). Meant for mutation tests.
    pub fn with_second(&self, edit: impl FnOnce(&mut SecondOrder)) -> Result<TangentSpace, TangentError> {
        let mut second = (**self.second()?).clone();
        edit(&mut second);
        let copy = self.clone();
        let cell = OnceLock::new();
        let _ = cell.set(Ok(Arc::new(second)));
        Ok(TangentSpace { second: cell, ..copy })
    }

    fn build_second(&self) -> Result<SecondOrder, TangentError> {
        let ctx = &self.ctx;
        let x = &self.base;
        let l = &self.reflection.reflected;
        let t = self.algebra();
        let omega = ctx.omega(x, l)?;
        let nu = ctx.nu(x)?;
        let square = ctx.tangent_carrier(t)?;
        let (nx, nl, nt) = (x.size(), l.size(), t.size());
        let nll = omega.target.right().size();
        let zero = self.reflection.witness.zero;

        // ℓ = (1 × ω⁻¹) ∘ (⟨1, 0 ∘ t⟩ × ⟨0 ∘ t, ν⁻¹⟩)
        let unit_zero = FiniteFunction::pair(&FiniteFunction::identity(nx), &FiniteFunction::constant(nx, nl, zero));
        let zero_nu = FiniteFunction::pair(&FiniteFunction::constant(nl, nl, zero), nu.inverse.map());
        let one_omega_inv = FiniteFunction::product(&FiniteFunction::identity(nt), omega.inverse.map());
        let ell = one_omega_inv.compose(&FiniteFunction::product(&unit_zero, &zero_nu));
        let zhat = omega.inverse.map().compose(&zero_nu);

        // c = (1 × ω⁻¹) ∘ τ ∘ (1 × ω)
        let one_omega = FiniteFunction::product(&FiniteFunction::identity(nt), omega.forward.map());
        let tau = interchange_tau(nx, nl, nl, nll);
        let flip = one_omega_inv.compose(&tau).compose(&one_omega);

        let ell = Homomorphism::new_unchecked(t.clone(), square.product.clone(), ell);
        let flip = Homomorphism::new_unchecked(square.product.clone(), square.product.clone(), flip);
        Ok(SecondOrder {
            omega,
            nu,
            zhat,
            square,
            ell,
            flip,
        })
    }
}

/// T(X) for an algebra, with the default budget.
pub fn build_tangent(x: &Arc<FiniteAlgebra>, engine: Arc<AssignmentEngine>) -> Result<Arc<TangentSpace>, TangentError> {
    TangentSpace::build(&Context::new(engine, Budget::from_env()), x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{generate, GeneratorSpec};

    fn ctx(mode: Mode) -> Context {
        Context::with_mode(mode, Budget::default())
    }

    fn alg(spec: GeneratorSpec) -> Arc<FiniteAlgebra> {
        Arc::new(generate(&spec).unwrap())
    }

    #[test]
    fn s3_sizes() {
        let ts = TangentSpace::build(&ctx(Mode::Ab), &alg(GeneratorSpec::Symmetric(3))).unwrap();
        assert_eq!(ts.size(), 12);
        assert_eq!(ts.second().unwrap().square.product.size(), 48);
        let cube = ts.iterated().unwrap().second().unwrap().square.product.size();
        assert_eq!(cube, 768);
    }

    #[test]
    fn p_after_z_is_identity() {
        let ts = TangentSpace::build(&ctx(Mode::Ab), &alg(GeneratorSpec::Dihedral(4))).unwrap();
        let pz = ts.p().map().compose(ts.z().map());
        assert_eq!(pz, FiniteFunction::identity(8));
    }

    #[test]
    fn flip_is_an_involution_on_z4() {
        let ts = TangentSpace::build(&ctx(Mode::Ab), &alg(GeneratorSpec::CyclicGroup(4))).unwrap();
        let c = ts.flip().unwrap().map();
        assert_eq!(c.compose(c), FiniteFunction::identity(c.domain()));
    }

    #[test]
    fn t_of_identity_is_identity() {
        let c = ctx(Mode::Ab);
        let x = alg(GeneratorSpec::Symmetric(3));
        let t = c.t_fn(&FiniteFunction::identity(6), &x, &x).unwrap();
        assert_eq!(t, FiniteFunction::identity(12));
    }

    #[test]
    fn terminal_mode_collapses() {
        let x = alg(GeneratorSpec::Klein4);
        let ts = TangentSpace::build(&ctx(Mode::Terminal), &x).unwrap();
        assert_eq!(ts.size(), 4);
        assert_eq!(ts.ell().unwrap().map(), &FiniteFunction::identity(4));
        assert_eq!(ts.flip().unwrap().map(), &FiniteFunction::identity(4));
    }

    #[test]
    fn budget_refuses_large_carriers() {
        let c = Context::with_mode(Mode::Ab, Budget::with_carrier(10));
        let err = TangentSpace::build(&c, &alg(GeneratorSpec::Symmetric(3))).unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn work_estimate() {
        let x = generate(&GeneratorSpec::Symmetric(3)).unwrap();
        // 36 pairs, mul: 36 · 2 · 36, inv: 36 · 1
        assert_eq!(closure_work(x.signature(), 6), 36 * (2 * 36) + 36);
        assert_eq!(table_cells(x.signature(), 6), 36 + 6 + 1);
    }
}
