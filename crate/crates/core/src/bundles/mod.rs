//! L-algebras, differential objects and differential bundles, with the
//! passages between them.

pub mod json;
pub mod verify;

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{check_homomorphism, product, terminal, AlgebraError, FiniteAlgebra, FiniteFunction};
use crate::congruence::{kernel, CongruenceError, Kernel};
use crate::reflect::{check_monoid_morphism, CommutativeMonoidWitness, ReflectError};
use crate::tangent::bundle::BundleData;
use crate::tangent::{Context, TangentError, TangentSpace};

pub use verify::{
    comparison_report, roundtrip, roundtrip_check, verify_diff_bundle, verify_diff_object, Roundtrip,
    COMPARISON_AXIOMS, DIFF_BUNDLE_AXIOMS, DIFF_OBJECT_AXIOMS, ROUNDTRIP_AXIOMS,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BundleError {
    #[error(transparent)]
    Tangent(#[from] TangentError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error("{what} is not bijective (witness {witness:?})")]
    NotBijective { what: String, witness: Vec<usize> },
    #[error("structure map is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("L(a) differs from nu at {element}")]
    NotNuAlgebra { element: usize },
    #[error("{0} has no zero, so kernels are unavailable")]
    NotPointed(String),
    #[error("lift fails the equalizer property at {element}: {reason}")]
    Equalizer { element: usize, reason: String },
    #[error("Rosicky square fails at {element}")]
    Rosicky { element: usize },
    #[error("class {class} of L(E) has {count} fill-in candidates, expected one")]
    FillIn { class: usize, count: usize },
    #[error("{0}")]
    Shape(String),
}

impl From<ReflectError> for BundleError {
    fn from(e: ReflectError) -> Self {
        BundleError::Tangent(e.into())
    }
}

impl From<AlgebraError> for BundleError {
    fn from(e: AlgebraError) -> Self {
        BundleError::Tangent(e.into())
    }
}

impl BundleError {
    pub fn is_resource(&self) -> bool {
        matches!(self, BundleError::Tangent(e) if e.is_resource())
    }
}

fn bijection(f: &FiniteFunction, what: &str) -> Result<FiniteFunction, BundleError> {
    if let Some((a, b)) = f.first_collision() {
        return Err(BundleError::NotBijective {
            what: what.to_string(),
            witness: vec![a, b],
        });
    }
    f.inverse().ok_or_else(|| BundleError::NotBijective {
        what: what.to_string(),
        witness: f.first_missed().into_iter().collect(),
    })
}

/// An algebra A with a: L(A) → A such that a is bijective, a homomorphism,
/// and L(a) = ν_A. The witness is L(A)'s monoid transported along a.
#[derive(Clone, Debug)]
pub struct LAlgebra {
    pub carrier: Arc<FiniteAlgebra>,
    pub structure: FiniteFunction,
    pub inverse: FiniteFunction,
    pub witness: CommutativeMonoidWitness,
}

impl LAlgebra {
    /// Validates a candidate structure map.
    pub fn new(ctx: &Context, carrier: Arc<FiniteAlgebra>, structure: FiniteFunction) -> Result<Self, BundleError> {
        let ra = ctx.reflect(&carrier)?;
        if structure.domain() != ra.size() || structure.codomain() != carrier.size() {
            return Err(BundleError::Shape(format!(
                "structure map {} -> {} for L(A) of size {} and A of size {}",
                structure.domain(),
                structure.codomain(),
                ra.size(),
                carrier.size()
            )));
        }
        let inverse = bijection(&structure, "structure map")?;
        check_homomorphism(&ra.reflected, &carrier, &structure)
            .map_err(|e| BundleError::NotHomomorphism(e.to_string()))?;
        let lifted = ctx.lift_fn(&structure, &ra.reflected, &carrier)?;
        let nu = ctx.nu(&carrier)?;
        if let Some(element) = lifted.first_difference(nu.forward.map()) {
            return Err(BundleError::NotNuAlgebra { element });
        }

        let w = &ra.witness;
        let n = carrier.size();
        let a = |v: usize| structure.apply(v);
        let b = |v: usize| inverse.apply(v);
        let plus = (0..n * n).map(|i| a(w.add(b(i / n), b(i % n)))).collect();
        let witness = CommutativeMonoidWitness {
            size: n,
            plus,
            zero: a(w.zero),
            neg: w.neg.as_ref().map(|neg| (0..n).map(|v| a(neg[b(v)])).collect()),
        };
        check_monoid_morphism(&structure, w, &witness)?;
        Ok(Self {
            carrier,
            structure,
            inverse,
            witness,
        })
    }

    /// The structure η⁻¹, when η: A → L(A) is invertible.
    pub fn canonical(ctx: &Context, carrier: &Arc<FiniteAlgebra>) -> Result<Self, BundleError> {
        let ra = ctx.reflect(carrier)?;
        let structure = bijection(ra.unit.map(), "unit of the reflection")?;
        Self::new(ctx, carrier.clone(), structure)
    }

    /// The L-algebra on the terminal algebra of a signature.
    pub fn terminal(ctx: &Context, like: &FiniteAlgebra) -> Result<Self, BundleError> {
        Self::new(ctx, terminal(like.signature()), FiniteFunction::identity(1))
    }

    pub fn size(&self) -> usize {
        self.carrier.size()
    }
}

/// A differential bundle over the terminal algebra: A with λ: A → T(A).
#[derive(Clone, Debug)]
pub struct DifferentialObject {
    pub carrier: Arc<FiniteAlgebra>,
    pub witness: CommutativeMonoidWitness,
    pub lift: FiniteFunction,
}

/// λ(v) = (zero_a, a⁻¹(v)).
pub fn build_diff_object(alg: &LAlgebra) -> DifferentialObject {
    let n = alg.size();
    let zero = FiniteFunction::constant(n, n, alg.witness.zero);
    DifferentialObject {
        carrier: alg.carrier.clone(),
        witness: alg.witness.clone(),
        lift: FiniteFunction::pair(&zero, &alg.inverse),
    }
}

impl DifferentialObject {
    /// λ equalizes p and 0 ∘ t: p λ = 0, λ is injective and reaches every
    /// element over 0.
    pub fn check_equalizer(&self, ctx: &Context) -> Result<(), BundleError> {
        let ra = ctx.reflect(&self.carrier)?;
        let (n, nl) = (self.carrier.size(), ra.size());
        if self.lift.domain() != n || self.lift.codomain() != n * nl {
            return Err(BundleError::Shape(format!(
                "lift has shape {} -> {}",
                self.lift.domain(),
                self.lift.codomain()
            )));
        }
        for v in 0..n {
            if self.lift.apply(v) / nl != self.witness.zero {
                return Err(BundleError::Equalizer {
                    element: v,
                    reason: "p after the lift is not zero".into(),
                });
            }
        }
        if let Some((a, _)) = self.lift.first_collision() {
            return Err(BundleError::Equalizer {
                element: a,
                reason: "lift is not injective".into(),
            });
        }
        if n != nl {
            return Err(BundleError::Equalizer {
                element: n.min(nl),
                reason: format!("{n} elements cannot fill a fibre of {nl}"),
            });
        }
        Ok(())
    }
}

/// a⁻¹ = π₂ ∘ λ, after the equalizer check.
pub fn diff_object_to_l_algebra(ctx: &Context, d: &DifferentialObject) -> Result<LAlgebra, BundleError> {
    d.check_equalizer(ctx)?;
    let n = d.carrier.size();
    let inverse = FiniteFunction::from_fn(n, n, |v| d.lift.apply(v) % n);
    let structure = bijection(&inverse, "pi2 after the lift")?;
    LAlgebra::new(ctx, d.carrier.clone(), structure)
}

/// An additive bundle q: E → X with λ: E → T(E) = E × L(E).
#[derive(Clone, Debug)]
pub struct DifferentialBundle {
    pub bundle: BundleData,
    pub lift: FiniteFunction,
}

impl DifferentialBundle {
    pub fn base(&self) -> &Arc<FiniteAlgebra> {
        &self.bundle.base
    }

    pub fn total(&self) -> &Arc<FiniteAlgebra> {
        &self.bundle.total
    }

    /// (T(X), ℓ) over X.
    pub fn tangent(ts: &TangentSpace) -> Result<Self, BundleError> {
        Ok(Self {
            bundle: ts.bundle.clone(),
            lift: ts.ell()?.map().clone(),
        })
    }
}

/// X × A over X with λ = (1 × ω⁻¹) ∘ (⟨1, zero_a ∘ t⟩ × ⟨0 ∘ t, a⁻¹⟩).
pub fn build_diff_bundle(
    ctx: &Context,
    x: &Arc<FiniteAlgebra>,
    alg: &LAlgebra,
) -> Result<DifferentialBundle, BundleError> {
    let a = &alg.carrier;
    let size = x.size() * a.size();
    ctx.admit_product(x.signature(), || format!("{} x {}", x.name(), a.name()), size)?;
    let pw = product(x, a)?;
    let (nx, na) = (x.size(), a.size());
    let w = &alg.witness;
    let unit_zero = FiniteFunction::pair(&FiniteFunction::identity(nx), &FiniteFunction::constant(nx, na, w.zero));
    let neg = w.neg.as_ref().map(|neg| {
        FiniteFunction::product(
            &FiniteFunction::identity(nx),
            &FiniteFunction::new(na, neg.clone()).expect("negation table"),
        )
    });
    let bundle = BundleData::new(
        pw.projections[0].clone(),
        |e1, e2| {
            let (x, a1) = pw.split(e1);
            let (_, a2) = pw.split(e2);
            pw.pair(x, w.add(a1, a2))
        },
        unit_zero.clone(),
        neg,
    )?;

    let rx = ctx.reflect(x)?;
    let omega = ctx.omega(x, a)?;
    let nlx = rx.size();
    let zero_inverse = FiniteFunction::pair(&FiniteFunction::constant(na, nlx, rx.witness.zero), &alg.inverse);
    let one_omega_inv = FiniteFunction::product(&FiniteFunction::identity(size), omega.inverse.map());
    let lift = one_omega_inv.compose(&FiniteFunction::product(&unit_zero, &zero_inverse));
    Ok(DifferentialBundle { bundle, lift })
}

/// The Rosický square: T(q) λ = z q and p λ = ζ q. Returns the first
/// element where either fails.
pub fn rosicky_violation(ctx: &Context, d: &DifferentialBundle) -> Result<Option<usize>, BundleError> {
    let (e, x) = (d.total(), d.base());
    let t_q = ctx.t_fn(d.bundle.q.map(), e, x)?;
    let rx = ctx.reflect(x)?;
    let nle = ctx.reflect(e)?.size();
    let z = |v: usize| v * rx.size() + rx.witness.zero;
    let q = d.bundle.q.map();
    let zeta = d.bundle.zero.map();
    Ok((0..e.size()).find(|&v| {
        let l = d.lift.apply(v);
        t_q.apply(l) != z(q.apply(v)) || l / nle != zeta.apply(q.apply(v))
    }))
}

/// D♭ of a bundle: the kernel of q with a_{q,λ}, and the fill-in λ̃.
#[derive(Clone, Debug)]
pub struct KernelAlgebra {
    pub base: Arc<FiniteAlgebra>,
    pub kernel: Kernel,
    pub algebra: LAlgebra,
    /// λ̃: L(E) → E, defined on the classes m where the Rosický cone
    /// commutes, i.e. where L(q)(m) = 0.
    pub fill_in: Vec<Option<usize>>,
}

impl KernelAlgebra {
    /// λ̃(m), or a `FillIn` error when m lies outside its domain.
    pub fn fill(&self, m: usize) -> Result<usize, BundleError> {
        fill(&self.fill_in, m)
    }

    pub fn fill_domain(&self) -> usize {
        self.fill_in.iter().flatten().count()
    }
}

fn fill(fill_in: &[Option<usize>], m: usize) -> Result<usize, BundleError> {
    fill_in
        .get(m)
        .copied()
        .flatten()
        .ok_or(BundleError::FillIn { class: m, count: 0 })
}

/// λ̃(m) is the unique e over 0 with λ(e) = (ζ(0), m); a_{q,λ} is λ̃ ∘ L(k)
/// read back in the kernel.
pub fn diff_bundle_to_l_algebra(ctx: &Context, d: &DifferentialBundle) -> Result<KernelAlgebra, BundleError> {
    let (e, x) = (d.total(), d.base());
    let zero = x.zero().ok_or_else(|| BundleError::NotPointed(x.name().to_string()))?;
    if let Some(element) = rosicky_violation(ctx, d)? {
        return Err(BundleError::Rosicky { element });
    }
    let nle = ctx.reflect(e)?.size();
    let q = d.bundle.q.map();
    let mut candidates = vec![Vec::new(); nle];
    for v in (0..e.size()).filter(|&v| q.apply(v) == zero) {
        candidates[d.lift.apply(v) % nle].push(v);
    }
    if let Some((class, c)) = candidates.iter().enumerate().find(|(_, c)| c.len() > 1) {
        return Err(BundleError::FillIn { class, count: c.len() });
    }
    let fill_in: Vec<Option<usize>> = candidates.into_iter().map(|c| c.first().copied()).collect();

    let kernel = kernel(&d.bundle.q)?;
    let lk = ctx.lift_fn(kernel.inclusion.map(), &kernel.algebra, e)?;
    let mut structure = Vec::with_capacity(lk.domain());
    for m in 0..lk.domain() {
        let v = fill(&fill_in, lk.apply(m))?;
        structure.push(kernel.position(v).expect("fill-in lies over zero"));
    }
    let structure = FiniteFunction::new(kernel.elements.len(), structure).expect("in range");
    let algebra = LAlgebra::new(ctx, kernel.algebra.clone(), structure)?;
    Ok(KernelAlgebra {
        base: x.clone(),
        kernel,
        algebra,
        fill_in,
    })
}

/// A bundle, its rebuilt product form and the comparison φ = ⟨q, λ♭⟩.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub decomposition: KernelAlgebra,
    pub rebuilt: DifferentialBundle,
    pub phi: FiniteFunction,
    /// φ⁻¹(x, k): the unique e with q e = x and λ e = (ζ x, λ₂(k)).
    pub phi_inverse: FiniteFunction,
}

pub fn compare(ctx: &Context, d: &DifferentialBundle) -> Result<Comparison, BundleError> {
    let decomposition = diff_bundle_to_l_algebra(ctx, d)?;
    let rebuilt = build_diff_bundle(ctx, d.base(), &decomposition.algebra)?;
    let e = d.total();
    let nle = ctx.reflect(e)?.size();
    let nk = decomposition.kernel.elements.len();
    let q = d.bundle.q.map();
    let kernel = &decomposition.kernel;

    // λ♭ = k⁻¹ ∘ λ̃ ∘ π₂ ∘ λ
    let mut phi = Vec::with_capacity(e.size());
    for v in 0..e.size() {
        let w = decomposition.fill(d.lift.apply(v) % nle)?;
        phi.push(q.apply(v) * nk + kernel.position(w).expect("fill-in lies over zero"));
    }
    let phi = FiniteFunction::new(rebuilt.total().size(), phi).expect("in range");

    let mut by_lift = vec![usize::MAX; d.lift.codomain()];
    for v in 0..e.size() {
        let slot = &mut by_lift[d.lift.apply(v)];
        if *slot != usize::MAX {
            return Err(BundleError::NotBijective {
                what: "lift".into(),
                witness: vec![*slot, v],
            });
        }
        *slot = v;
    }
    let zeta = d.bundle.zero.map();
    let mut inverse = Vec::with_capacity(rebuilt.total().size());
    for x in 0..d.base().size() {
        for k in 0..nk {
            let target = zeta.apply(x) * nle + d.lift.apply(kernel.elements[k]) % nle;
            match by_lift[target] {
                usize::MAX => {
                    return Err(BundleError::FillIn {
                        class: x * nk + k,
                        count: 0,
                    })
                }
                v => inverse.push(v),
            }
        }
    }
    let phi_inverse = FiniteFunction::new(e.size(), inverse).expect("in range");
    Ok(Comparison {
        decomposition,
        rebuilt,
        phi,
        phi_inverse,
    })
}

/// The fibrewise negation ι(e) = λ⁻¹(n(λ e)) induced by the negation of
/// T(E), when T(E) has one.
pub fn derive_negation(ctx: &Context, d: &DifferentialBundle) -> Result<Option<FiniteFunction>, BundleError> {
    let ts = TangentSpace::build(ctx, d.total())?;
    let Some(n) = ts.n() else {
        return Ok(None);
    };
    let mut by_lift = vec![usize::MAX; d.lift.codomain()];
    for v in 0..d.lift.domain() {
        by_lift[d.lift.apply(v)] = v;
    }
    let mut iota = Vec::with_capacity(d.lift.domain());
    for v in 0..d.lift.domain() {
        match by_lift[n.apply(d.lift.apply(v))] {
            usize::MAX => {
                return Err(BundleError::NotBijective {
                    what: "lift onto negated lifts".into(),
                    witness: vec![v],
                })
            }
            u => iota.push(u),
        }
    }
    Ok(Some(FiniteFunction::new(d.lift.domain(), iota).expect("in range")))
}
