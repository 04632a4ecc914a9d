//! Additive bundles as tables, and what T does to them.

use std::collections::HashSet;
use std::sync::Arc;

use crate::algebra::{
    check_homomorphism, fibre_triples, pullback, FiniteAlgebra, FiniteFunction, Homomorphism, PullbackAlgebra,
    SetPullback,
};
use crate::report::Scan;

use super::{Context, TangentError};

/// A concrete failure inside a check: the offending tuple and why.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckFailure {
    pub witness: Vec<usize>,
    pub note: String,
    /// Set when a resource limit, not the mathematics, stopped the check.
    pub resource: bool,
}

impl CheckFailure {
    pub fn new(witness: Vec<usize>, note: impl Into<String>) -> Self {
        Self {
            witness,
            note: note.into(),
            resource: false,
        }
    }

    /// Records this on a scan: resource limits skip, anything else fails.
    pub fn record(self, scan: &mut Scan) {
        if self.resource {
            scan.skip(self.note);
        } else {
            scan.fail(self.witness, self.note);
        }
    }
}

impl From<TangentError> for CheckFailure {
    fn from(e: TangentError) -> Self {
        Self {
            witness: Vec::new(),
            resource: e.is_resource(),
            note: e.to_string(),
        }
    }
}

pub type Check<T> = Result<T, CheckFailure>;

/// Fails with the first input where two maps disagree.
/// The witness is `prefix` followed by that input.
pub fn expect_equal(scan: &mut Scan, prefix: &[usize], lhs: &FiniteFunction, rhs: &FiniteFunction, what: &str) -> bool {
    scan.tick(lhs.domain() as u64);
    let at = |i: usize| prefix.iter().copied().chain([i]).collect::<Vec<_>>();
    if lhs.domain() != rhs.domain() || lhs.codomain() != rhs.codomain() {
        scan.fail(
            prefix.to_vec(),
            format!(
                "{what}: shapes differ ({} -> {} vs {} -> {})",
                lhs.domain(),
                lhs.codomain(),
                rhs.domain(),
                rhs.codomain()
            ),
        );
        return false;
    }
    match lhs.first_difference(rhs) {
        Some(i) => {
            scan.fail(at(i), format!("{what}: differs at {i}"));
            false
        }
        None => true,
    }
}

/// Bijectivity as a check with a witness: a collision or a missed value.
pub fn expect_bijective(f: &FiniteFunction, what: &str) -> Check<FiniteFunction> {
    if let Some((a, b)) = f.first_collision() {
        return Err(CheckFailure::new(vec![a, b], format!("{what} is not injective")));
    }
    if let Some(m) = f.first_missed() {
        return Err(CheckFailure::new(vec![m], format!("{what} misses {m}")));
    }
    Ok(f.inverse().expect("bijective"))
}

/// An additive bundle at the algebra level: q: E → X with the pullback
/// E₂ of q along itself, σ: E₂ → E, ζ: X → E and optional ι: E → E.
#[derive(Clone, Debug)]
pub struct BundleData {
    pub base: Arc<FiniteAlgebra>,
    pub total: Arc<FiniteAlgebra>,
    pub q: Homomorphism,
    pub pairs: PullbackAlgebra,
    pub sum: Homomorphism,
    pub zero: Homomorphism,
    pub neg: Option<Homomorphism>,
}

impl BundleData {
    /// Assembles a bundle from q and a fibrewise sum.
    pub fn new(
        q: Homomorphism,
        sum: impl Fn(usize, usize) -> usize,
        zero: FiniteFunction,
        neg: Option<FiniteFunction>,
    ) -> Result<Self, TangentError> {
        let pairs = pullback(&q, &q)?;
        let total = q.source().clone();
        let base = q.target().clone();
        let sum = FiniteFunction::from_fn(pairs.set.len(), total.size(), |i| {
            let (a, b) = pairs.set.pairs[i];
            sum(a, b)
        });
        Ok(Self {
            sum: Homomorphism::new_unchecked(pairs.algebra.clone(), total.clone(), sum),
            zero: Homomorphism::new_unchecked(base.clone(), total.clone(), zero),
            neg: neg.map(|n| Homomorphism::new_unchecked(total.clone(), total.clone(), n)),
            base,
            total,
            q,
            pairs,
        })
    }

    /// The set-level structure.
    pub fn witness(&self) -> AdditiveBundle {
        AdditiveBundle {
            q: self.q.map().clone(),
            pairs: self.pairs.set.clone(),
            sum: self.sum.map().clone(),
            zero: self.zero.map().clone(),
            neg: self.neg.as_ref().map(|n| n.map().clone()),
        }
    }

    /// q, σ, ζ and ι must be homomorphisms.
    pub fn check_homomorphisms(&self, scan: &mut Scan) {
        let mut maps = vec![("q", &self.q), ("sum", &self.sum), ("zero", &self.zero)];
        if let Some(n) = &self.neg {
            maps.push(("neg", n));
        }
        for (name, h) in maps {
            scan.tick(h.source().size() as u64);
            if let Err(e) = check_homomorphism(h.source(), h.target(), h.map()) {
                scan.fail(vec![], format!("{name} is not a homomorphism: {e}"));
            }
        }
    }
}

/// An additive bundle on carriers alone.
#[derive(Clone, Debug)]
pub struct AdditiveBundle {
    pub q: FiniteFunction,
    pub pairs: SetPullback,
    pub sum: FiniteFunction,
    pub zero: FiniteFunction,
    pub neg: Option<FiniteFunction>,
}

impl AdditiveBundle {
    /// Fibrewise sum; `None` when `a` and `b` lie in different fibres.
    pub fn add(&self, a: usize, b: usize) -> Option<usize> {
        self.pairs.index_of(a, b).map(|i| self.sum.apply(i))
    }

    /// Commutative monoid laws in every fibre, and the group law when a
    /// negation is present.
    pub fn check(&self, scan: &mut Scan) {
        let q = &self.q;
        for (i, &(a, b)) in self.pairs.pairs.iter().enumerate() {
            let s = self.sum.apply(i);
            if !scan.expect(
                q.apply(s) == q.apply(a),
                || vec![a, b],
                || format!("sum of ({a}, {b}) leaves the fibre"),
            ) {
                return;
            }
            let ok = self.add(b, a) == Some(s);
            if !scan.expect(ok, || vec![a, b], || format!("sum is not commutative at ({a}, {b})")) {
                return;
            }
        }
        for x in 0..q.codomain() {
            let z = self.zero.apply(x);
            if !scan.expect(
                q.apply(z) == x,
                || vec![x],
                || format!("zero of {x} is not in its fibre"),
            ) {
                return;
            }
        }
        for e in 0..q.domain() {
            let z = self.zero.apply(q.apply(e));
            let ok = self.add(e, z) == Some(e) && self.add(z, e) == Some(e);
            if !scan.expect(ok, || vec![e], || format!("zero is not a unit for {e}")) {
                return;
            }
            if let Some(n) = &self.neg {
                let m = n.apply(e);
                let ok = q.apply(m) == q.apply(e) && self.add(e, m) == Some(z);
                if !scan.expect(ok, || vec![e], || format!("{m} is not a negative of {e}")) {
                    return;
                }
            }
        }
        for (a, b, c) in fibre_triples(q) {
            let left = self.add(a, b).and_then(|ab| self.add(ab, c));
            let right = self.add(b, c).and_then(|bc| self.add(a, bc));
            if !scan.expect(
                left.is_some() && left == right,
                || vec![a, b, c],
                || format!("sum is not associative at ({a}, {b}, {c})"),
            ) {
                return;
            }
        }
    }
}

/// (f, g) is a bundle morphism: g q = q' f, f preserves sums, zeros and
/// (when both sides have one) negation.
pub fn check_bundle_morphism(
    f: &FiniteFunction,
    g: &FiniteFunction,
    from: &AdditiveBundle,
    to: &AdditiveBundle,
    scan: &mut Scan,
) {
    for e in 0..f.domain() {
        let ok = g.apply(from.q.apply(e)) == to.q.apply(f.apply(e));
        if !scan.expect(ok, || vec![e], || format!("projection square fails at {e}")) {
            return;
        }
    }
    for x in 0..g.domain() {
        let ok = f.apply(from.zero.apply(x)) == to.zero.apply(g.apply(x));
        if !scan.expect(ok, || vec![x], || format!("zero is not preserved at {x}")) {
            return;
        }
    }
    for (i, &(a, b)) in from.pairs.pairs.iter().enumerate() {
        let ok = to.add(f.apply(a), f.apply(b)) == Some(f.apply(from.sum.apply(i)));
        if !scan.expect(ok, || vec![a, b], || format!("sum is not preserved at ({a}, {b})")) {
            return;
        }
    }
    if let (Some(n), Some(m)) = (&from.neg, &to.neg) {
        for e in 0..f.domain() {
            let ok = f.apply(n.apply(e)) == m.apply(f.apply(e));
            if !scan.expect(ok, || vec![e], || format!("negation is not preserved at {e}")) {
                return;
            }
        }
    }
}

/// The bundle T(E) → T(X) with κ = ⟨Tρ₁, Tρ₂⟩: T(E₂) → T(E)₂.
#[derive(Clone, Debug)]
pub struct TangentBundle {
    /// T(E) as an algebra.
    pub total: Arc<FiniteAlgebra>,
    /// T(X) as an algebra.
    pub base: Arc<FiniteAlgebra>,
    pub kappa: FiniteFunction,
    /// (T q, T(σ) κ⁻¹, T ζ, T ι).
    pub witness: AdditiveBundle,
}

/// Applies T to a bundle. Fails when κ is not a bijection, that is when T
/// does not preserve the pullback E₂.
pub fn tangent_of_bundle(ctx: &Context, b: &BundleData) -> Check<TangentBundle> {
    let (e, x, e2) = (&b.total, &b.base, &b.pairs.algebra);
    let t_q = ctx.t_fn(b.q.map(), e, x)?;
    let t_r1 = ctx.t_fn(b.pairs.left.map(), e2, e)?;
    let t_r2 = ctx.t_fn(b.pairs.right.map(), e2, e)?;
    let target = SetPullback::new(&t_q, &t_q);
    let mut kappa = Vec::with_capacity(t_r1.domain());
    for v in 0..t_r1.domain() {
        let (a, c) = (t_r1.apply(v), t_r2.apply(v));
        match target.index_of(a, c) {
            Some(i) => kappa.push(i),
            None => {
                return Err(CheckFailure::new(
                    vec![v],
                    format!("T(E2) element {v} leaves the pullback"),
                ))
            }
        }
    }
    let kappa = FiniteFunction::new(target.len(), kappa).expect("indices in range");
    let kappa_inv = expect_bijective(&kappa, "T(E2) -> T(E)2")?;
    let sum = ctx.t_fn(b.sum.map(), e2, e)?.compose(&kappa_inv);
    let zero = ctx.t_fn(b.zero.map(), x, e)?;
    let neg = match &b.neg {
        Some(n) => Some(ctx.t_fn(n.map(), e, e)?),
        None => None,
    };
    Ok(TangentBundle {
        total: ctx.tangent_carrier(e)?.product.clone(),
        base: ctx.tangent_carrier(x)?.product.clone(),
        kappa,
        witness: AdditiveBundle {
            q: t_q,
            pairs: target,
            sum,
            zero,
            neg,
        },
    })
}

/// T(E₃) maps bijectively onto the triples of T(E) in a common T(q) fibre.
pub fn triple_pullback_preserved(ctx: &Context, b: &BundleData) -> Check<()> {
    let qr1 = b.q.compose(&b.pairs.left);
    let e3 = pullback(&qr1, &b.q).map_err(TangentError::from)?;
    let e = &b.total;
    let projections = [
        b.pairs.left.map().compose(e3.left.map()),
        b.pairs.right.map().compose(e3.left.map()),
        e3.right.map().clone(),
    ];
    let t_q = ctx.t_fn(b.q.map(), e, &b.base)?;
    let mut t_pi = Vec::with_capacity(3);
    for p in &projections {
        t_pi.push(ctx.t_fn(p, &e3.algebra, e)?);
    }
    let mut seen = HashSet::new();
    for v in 0..t_pi[0].domain() {
        let triple = [t_pi[0].apply(v), t_pi[1].apply(v), t_pi[2].apply(v)];
        let base = t_q.apply(triple[0]);
        if t_q.apply(triple[1]) != base || t_q.apply(triple[2]) != base {
            return Err(CheckFailure::new(
                vec![v],
                format!("T(E3) element {v} leaves the triple pullback"),
            ));
        }
        if !seen.insert(triple) {
            return Err(CheckFailure::new(
                vec![v],
                format!("T(E3) -> T(E)3 is not injective at {v}"),
            ));
        }
    }
    let expected = fibre_triples(&t_q).len();
    if seen.len() != expected {
        return Err(CheckFailure::new(
            vec![seen.len(), expected],
            format!("T(E3) reaches {} of {expected} triples", seen.len()),
        ));
    }
    Ok(())
}

/// The lift universality data: μ: E₂ → T(E), μ(e₁, e₂) = λ e₁ + z_E e₂ in
/// the T(E) → T(X) bundle, and the comparison v ↦ (q e₁, μ v) into the
/// pullback of z_X and T(q), which must be a bijection.
#[derive(Clone, Debug)]
pub struct Universality {
    pub mu: FiniteFunction,
    pub comparison: FiniteFunction,
}

pub fn lift_universality(
    bundle: &AdditiveBundle,
    lift: &FiniteFunction,
    z_total: &FiniteFunction,
    tangent: &AdditiveBundle,
    z_base: &FiniteFunction,
) -> Check<Universality> {
    let mut mu = Vec::with_capacity(bundle.pairs.len());
    for &(a, b) in &bundle.pairs.pairs {
        match tangent.add(lift.apply(a), z_total.apply(b)) {
            Some(v) => mu.push(v),
            None => {
                return Err(CheckFailure::new(
                    vec![a, b],
                    format!("lift of {a} and zero of {b} lie in different fibres"),
                ))
            }
        }
    }
    let mu = FiniteFunction::new(lift.codomain(), mu).expect("indices in range");
    let target = SetPullback::new(z_base, &tangent.q);
    let mut comparison = Vec::with_capacity(mu.domain());
    for (i, &(a, _)) in bundle.pairs.pairs.iter().enumerate() {
        match target.index_of(bundle.q.apply(a), mu.apply(i)) {
            Some(j) => comparison.push(j),
            None => {
                return Err(CheckFailure::new(
                    vec![i],
                    format!("mu({i}) is not over the zero section"),
                ))
            }
        }
    }
    let comparison = FiniteFunction::new(target.len(), comparison).expect("indices in range");
    expect_bijective(&comparison, "E2 -> pullback of z and T(q)")?;
    Ok(Universality { mu, comparison })
}

/// The maps of the universality square, with their carriers as algebras:
/// μ: E₂ → T(E), q ρ₁: E₂ → X, z: X → T(X) and T(q): T(E) → T(X).
#[derive(Clone, Debug)]
pub struct UniversalitySquare {
    pub pairs: Arc<FiniteAlgebra>,
    pub base: Arc<FiniteAlgebra>,
    pub total_tangent: Arc<FiniteAlgebra>,
    pub base_tangent: Arc<FiniteAlgebra>,
    pub mu: FiniteFunction,
    pub q_rho: FiniteFunction,
    pub z_base: FiniteFunction,
    pub t_q: FiniteFunction,
}

impl UniversalitySquare {
    /// The comparison into the pullback of z and T(q) is a bijection.
    pub fn check(&self) -> Check<()> {
        let target = SetPullback::new(&self.z_base, &self.t_q);
        let mut seen = vec![false; target.len()];
        for v in 0..self.mu.domain() {
            match target.index_of(self.q_rho.apply(v), self.mu.apply(v)) {
                Some(j) if !seen[j] => seen[j] = true,
                Some(_) => {
                    return Err(CheckFailure::new(
                        vec![v],
                        format!("comparison is not injective at {v}"),
                    ))
                }
                None => return Err(CheckFailure::new(vec![v], format!("element {v} leaves the pullback"))),
            }
        }
        if let Some(j) = seen.iter().position(|s| !s) {
            return Err(CheckFailure::new(vec![j], format!("comparison misses {j}")));
        }
        Ok(())
    }

    /// The same square with T applied to every map.
    pub fn apply_t(&self, ctx: &Context) -> Check<UniversalitySquare> {
        let pairs = ctx.tangent_carrier(&self.pairs)?.product.clone();
        let base = ctx.tangent_carrier(&self.base)?.product.clone();
        let total_tangent = ctx.tangent_carrier(&self.total_tangent)?.product.clone();
        let base_tangent = ctx.tangent_carrier(&self.base_tangent)?.product.clone();
        Ok(UniversalitySquare {
            mu: ctx.t_fn(&self.mu, &self.pairs, &self.total_tangent)?,
            q_rho: ctx.t_fn(&self.q_rho, &self.pairs, &self.base)?,
            z_base: ctx.t_fn(&self.z_base, &self.base, &self.base_tangent)?,
            t_q: ctx.t_fn(&self.t_q, &self.total_tangent, &self.base_tangent)?,
            pairs,
            base,
            total_tangent,
            base_tangent,
        })
    }
}

/// Checks that T and T² preserve the universality pullback. Returns a note
/// when T² was beyond the limits; T itself being beyond them is an error.
pub fn universality_preserved(ctx: &Context, square: &UniversalitySquare, scan: &mut Scan) -> Option<String> {
    scan.tick(square.mu.domain() as u64);
    if let Err(e) = check_homomorphism(&square.pairs, &square.total_tangent, &square.mu) {
        scan.fail(vec![], format!("mu is not a homomorphism: {e}"));
        return None;
    }
    let once = match square.apply_t(ctx).and_then(|s| s.check().map(|_| s)) {
        Ok(s) => s,
        Err(f) => {
            f.record(scan);
            return None;
        }
    };
    scan.tick(once.mu.domain() as u64);
    match once.apply_t(ctx).and_then(|s| s.check()) {
        Ok(()) => None,
        Err(f) if f.resource => Some(format!("m=2 not checked: {}", f.note)),
        Err(f) => {
            f.record(scan);
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mod_bundle() -> AdditiveBundle {
        // E = {0..6} over X = {0, 1}, fibres Z3.
        let q = FiniteFunction::from_fn(6, 2, |e| e / 3);
        let pairs = SetPullback::new(&q, &q);
        let sum = FiniteFunction::from_fn(pairs.len(), 6, |i| {
            let (a, b) = pairs.pairs[i];
            (a / 3) * 3 + (a % 3 + b % 3) % 3
        });
        AdditiveBundle {
            q,
            pairs,
            sum,
            zero: FiniteFunction::from_fn(2, 6, |x| 3 * x),
            neg: Some(FiniteFunction::from_fn(6, 6, |e| (e / 3) * 3 + (3 - e % 3) % 3)),
        }
    }

    #[test]
    fn fibrewise_group_passes() {
        let mut scan = Scan::new();
        mod_bundle().check(&mut scan);
        assert!(!scan.failed());
    }

    #[test]
    fn broken_sum_is_caught() {
        let mut b = mod_bundle();
        let i = b.pairs.index_of(1, 2).unwrap();
        let mut values = b.sum.values().to_vec();
        values[i] = 1;
        b.sum = FiniteFunction::new(6, values).unwrap();
        let mut scan = Scan::new();
        b.check(&mut scan);
        assert!(scan.failed());
    }

    #[test]
    fn identity_is_a_bundle_morphism() {
        let b = mod_bundle();
        let mut scan = Scan::new();
        check_bundle_morphism(
            &FiniteFunction::identity(6),
            &FiniteFunction::identity(2),
            &b,
            &b,
            &mut scan,
        );
        assert!(!scan.failed());
        let swap = FiniteFunction::from_fn(6, 6, |e| (e + 3) % 6);
        let mut scan = Scan::new();
        check_bundle_morphism(&swap, &FiniteFunction::identity(2), &b, &b, &mut scan);
        assert!(scan.failed());
    }

    #[test]
    fn bijectivity_witnesses() {
        let f = FiniteFunction::new(3, vec![0, 0, 1]).unwrap();
        assert_eq!(expect_bijective(&f, "f").unwrap_err().witness, vec![0, 1]);
    }
}
