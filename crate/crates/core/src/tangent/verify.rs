//! Exhaustive checks of the tangent structure axioms.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{
    diagonal, product, terminal, terminal_map, zero_morphism, FiniteAlgebra, FiniteFunction, Homomorphism,
};
use crate::report::{AxiomEntry, AxiomReport, Scan, Status};

use super::bundle::{
    check_bundle_morphism, expect_bijective, expect_equal, lift_universality, tangent_of_bundle,
    triple_pullback_preserved, universality_preserved, CheckFailure, TangentBundle, UniversalitySquare,
};
use super::{Context, SecondOrder, TangentError, TangentSpace};

/// Registry of the tangent checks, in report order.
pub const TANGENT_AXIOMS: [&str; 11] = [
    "naturality",
    "additive_bundle",
    "lift_bundle_morphism",
    "lift_coassociativity",
    "flip_involution",
    "flip_yang_baxter",
    "flip_bundle_morphism",
    "lift_flip_coherence",
    "lift_universality",
    "lift_universality_preserved",
    "cartesian",
];

/// Entries that need T² (depth 2) and T³ (depth 3) in full.
const NEEDS_DEPTH_2: [&str; 5] = [
    "lift_bundle_morphism",
    "flip_involution",
    "flip_bundle_morphism",
    "lift_flip_coherence",
    "lift_universality",
];
const NEEDS_DEPTH_3: [&str; 3] = [
    "lift_coassociativity",
    "flip_yang_baxter",
    "lift_universality_preserved",
];

/// Where T³ components go under c_T, T(c) and their composites: output
/// position i holds input component `OCTONARY_SWAP[i]`.
const OCTONARY_SWAP: [usize; 8] = [0, 4, 2, 6, 1, 5, 3, 7];

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentSizes {
    #[serde(rename = "T")]
    pub t: Option<usize>,
    #[serde(rename = "T2")]
    pub t2: Option<usize>,
    #[serde(rename = "T3")]
    pub t3: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TangentReport {
    pub axioms: Vec<AxiomEntry>,
    pub sizes: TangentSizes,
}

impl TangentReport {
    pub fn entry(&self, id: &str) -> Option<&AxiomEntry> {
        self.axioms.iter().find(|e| e.id == id)
    }

    pub fn all_passed(&self) -> bool {
        self.axioms.iter().all(|e| e.status == Status::Pass)
    }

    pub fn has_failures(&self) -> bool {
        self.axioms.iter().any(|e| e.status == Status::Fail)
    }

    pub fn to_axiom_report(&self) -> AxiomReport {
        AxiomReport {
            entries: self.axioms.clone(),
        }
    }
}

struct Scans(Vec<Scan>);

impl Scans {
    fn get(&mut self, id: &str) -> &mut Scan {
        let i = TANGENT_AXIOMS.iter().position(|a| *a == id).expect("registered axiom");
        &mut self.0[i]
    }

    /// Marks `ids` unavailable: skipped on resource limits, failed otherwise.
    fn unavailable(&mut self, ids: &[&str], what: &str, e: &TangentError) {
        for id in ids {
            let scan = self.get(id);
            if e.is_resource() {
                scan.skip(format!("{what}: {e}"));
            } else {
                scan.fail(vec![], format!("{what}: {e}"));
            }
        }
    }
}

/// Records a failure of an optional part: resource limits become coverage
/// notes, real failures fail the entry.
fn partial(scan: &mut Scan, f: CheckFailure) {
    if f.resource {
        scan.note(f.note);
    } else {
        scan.fail(f.witness, f.note);
    }
}

/// Identity, the zero endomorphism, η, t, Δ and π₁ on X.
pub fn default_homs(ctx: &Context, x: &Arc<FiniteAlgebra>) -> Vec<Homomorphism> {
    let mut homs = vec![Homomorphism::identity(x)];
    if let Ok(z) = zero_morphism(x, x) {
        homs.push(z);
    }
    if let Ok(r) = ctx.reflect(x) {
        homs.push(r.unit.clone());
    }
    homs.push(terminal_map(x, &terminal(x.signature())));
    if ctx
        .admit_product(
            x.signature(),
            || format!("{} x {}", x.name(), x.name()),
            x.size() * x.size(),
        )
        .is_ok()
    {
        if let Ok((pw, d)) = diagonal(x) {
            homs.push(d);
            homs.push(pw.projections[0].clone());
        }
    }
    homs
}

/// Runs the registry on `ts` and the given homomorphisms up to `depth`
/// iterations of T.
pub fn verify_tangent(ts: &TangentSpace, homs: &[Homomorphism], depth: usize) -> TangentReport {
    let ctx = ts.context();
    let mut scans = Scans(TANGENT_AXIOMS.iter().map(|_| Scan::new()).collect());
    let mut sizes = TangentSizes {
        t: Some(ts.size()),
        ..TangentSizes::default()
    };

    check_first_order_bundle(ts, scans.get("additive_bundle"));
    check_cartesian(ctx, &ts.base, scans.get("cartesian"));

    if depth < 2 {
        for id in NEEDS_DEPTH_2 {
            scans.get(id).skip("needs depth 2");
        }
    }
    if depth < 3 {
        for id in NEEDS_DEPTH_3 {
            scans.get(id).skip("needs depth 3");
        }
    }

    let mut spaces: HashMap<Arc<FiniteAlgebra>, Arc<TangentSpace>> = HashMap::new();
    spaces.insert(ts.base.clone(), Arc::new(ts.clone()));
    for (index, f) in homs.iter().enumerate() {
        if let Err(e) = check_naturality(ctx, &mut spaces, index, f, depth, scans.get("naturality")) {
            partial(scans.get("naturality"), e);
        }
    }

    if depth >= 2 {
        let staged = ts.second().and_then(|s| Ok((s.clone(), ts.iterated()?.clone())));
        match staged {
            Err(e) => {
                let mut ids = NEEDS_DEPTH_2.to_vec();
                if depth >= 3 {
                    ids.extend(NEEDS_DEPTH_3);
                }
                scans.unavailable(&ids, "T(T(X))", &e);
                if e.is_resource() {
                    scans
                        .get("additive_bundle")
                        .note(format!("T of the bundle not checked: {e}"));
                }
            }
            Ok((second, iter)) => {
                sizes.t2 = Some(second.square.product.size());
                match tangent_of_bundle(ctx, &ts.bundle) {
                    Err(f) => {
                        if f.resource {
                            for id in NEEDS_DEPTH_2.iter().chain(&NEEDS_DEPTH_3) {
                                scans.get(id).skip(f.note.clone());
                            }
                        } else {
                            let ids: Vec<&str> = NEEDS_DEPTH_2.iter().chain(&NEEDS_DEPTH_3).copied().collect();
                            for id in ids
                                .iter()
                                .take(if depth >= 3 { ids.len() } else { NEEDS_DEPTH_2.len() })
                            {
                                scans.get(id).fail(vec![], format!("prerequisite: {}", f.note));
                            }
                            scans.get("additive_bundle").fail(f.witness, f.note);
                        }
                    }
                    Ok(tb) => {
                        let bundle = scans.get("additive_bundle");
                        tb.witness.check(bundle);
                        if let Err(f) = triple_pullback_preserved(ctx, &ts.bundle) {
                            partial(bundle, f);
                        }
                        check_second_order(ts, &second, &iter, &tb, &mut scans);
                        if depth < 3 {
                            scans
                                .get("lift_flip_coherence")
                                .note("the T(T(T(X))) part needs depth 3");
                        } else {
                            match iter.second() {
                                Err(e) => {
                                    scans.unavailable(&NEEDS_DEPTH_3, "T(T(T(X)))", &e);
                                    if e.is_resource() {
                                        scans
                                            .get("lift_flip_coherence")
                                            .note(format!("the T(T(T(X))) part not checked: {e}"));
                                    }
                                }
                                Ok(iter_second) => {
                                    sizes.t3 = Some(iter_second.square.product.size());
                                    check_third_order(ts, &second, &iter, iter_second, &tb, &mut scans);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    TangentReport {
        axioms: scans
            .0
            .into_iter()
            .zip(TANGENT_AXIOMS)
            .map(|(s, id)| s.into_entry(id))
            .collect(),
        sizes,
    }
}

fn check_first_order_bundle(ts: &TangentSpace, scan: &mut Scan) {
    ts.bundle.check_homomorphisms(scan);
    ts.bundle.witness().check(scan);
    let has_negation = ts.reflection.witness.neg.is_some();
    if has_negation != ts.n().is_some() {
        scan.fail(vec![], "negation on T(X) does not match the negation on L(X)");
    }
}

fn space(
    ctx: &Context,
    spaces: &mut HashMap<Arc<FiniteAlgebra>, Arc<TangentSpace>>,
    x: &Arc<FiniteAlgebra>,
) -> Result<Arc<TangentSpace>, TangentError> {
    if let Some(ts) = spaces.get(x) {
        return Ok(ts.clone());
    }
    let ts = TangentSpace::build(ctx, x)?;
    spaces.insert(x.clone(), ts.clone());
    Ok(ts)
}

/// p, s, z, n, ℓ and c commute with T(f).
fn check_naturality(
    ctx: &Context,
    spaces: &mut HashMap<Arc<FiniteAlgebra>, Arc<TangentSpace>>,
    index: usize,
    f: &Homomorphism,
    depth: usize,
    scan: &mut Scan,
) -> Result<(), CheckFailure> {
    let label = |what: &str| {
        format!(
            "{what} for map {index} ({} -> {})",
            f.source().name(),
            f.target().name()
        )
    };
    let ta = space(ctx, spaces, f.source())?;
    let tb = space(ctx, spaces, f.target())?;
    let tf = ctx.t_fn(f.map(), f.source(), f.target())?;
    let at = [index];

    expect_equal(
        scan,
        &at,
        &tb.p().map().compose(&tf),
        &f.map().compose(ta.p().map()),
        &label("p"),
    );
    expect_equal(
        scan,
        &at,
        &tf.compose(ta.z().map()),
        &tb.z().map().compose(f.map()),
        &label("z"),
    );

    let (pa, pb) = (&ta.bundle.pairs.set, &tb.bundle.pairs.set);
    let mut t2f = Vec::with_capacity(pa.len());
    for &(u, v) in &pa.pairs {
        match pb.index_of(tf.apply(u), tf.apply(v)) {
            Some(j) => t2f.push(j),
            None => return Err(CheckFailure::new(vec![index, u, v], label("T(f) leaves the pullback"))),
        }
    }
    let t2f = FiniteFunction::new(pb.len(), t2f).expect("indices in range");
    expect_equal(
        scan,
        &at,
        &tf.compose(ta.s().map()),
        &tb.s().map().compose(&t2f),
        &label("s"),
    );
    if let (Some(na), Some(nb)) = (ta.n(), tb.n()) {
        expect_equal(scan, &at, &tf.compose(na.map()), &nb.map().compose(&tf), &label("n"));
    }

    if depth < 2 {
        return Ok(());
    }
    let (sa, sb) = match (ta.second(), tb.second()) {
        (Ok(sa), Ok(sb)) => (sa, sb),
        (Err(e), _) | (_, Err(e)) => return Err(CheckFailure::from(e.clone()).annotate(&label("lift and flip"))),
    };
    let ttf = ctx
        .t_fn(&tf, ta.algebra(), tb.algebra())
        .map_err(|e| CheckFailure::from(e).annotate(&label("lift and flip")))?;
    expect_equal(
        scan,
        &at,
        &ttf.compose(sa.ell.map()),
        &sb.ell.map().compose(&tf),
        &label("lift"),
    );
    expect_equal(
        scan,
        &at,
        &ttf.compose(sa.flip.map()),
        &sb.flip.map().compose(&ttf),
        &label("flip"),
    );
    Ok(())
}

/// ⟨Tπ₁, Tπ₂⟩: T(X × Y) → T(X) × T(Y) is a bijection for Y = X and Y = ∗,
/// and T(∗) is terminal.
fn check_cartesian(ctx: &Context, x: &Arc<FiniteAlgebra>, scan: &mut Scan) {
    let star = terminal(x.signature());
    match ctx.tangent_carrier(&star) {
        Ok(t) => {
            scan.expect(
                t.product.size() == 1,
                || vec![t.product.size()],
                || "T(*) is not terminal".into(),
            );
        }
        Err(e) => scan.fail(vec![], format!("T(*): {e}")),
    }
    for (j, y) in [x.clone(), star].iter().enumerate() {
        let outcome = (|| -> Result<(), CheckFailure> {
            ctx.admit_product(
                x.signature(),
                || format!("{} x {}", x.name(), y.name()),
                x.size() * y.size(),
            )?;
            let pw = product(x, y).map_err(TangentError::from)?;
            let t1 = ctx.t_fn(pw.projections[0].map(), &pw.product, x)?;
            let t2 = ctx.t_fn(pw.projections[1].map(), &pw.product, y)?;
            scan.tick(t1.domain() as u64);
            let comparison = FiniteFunction::pair(&t1, &t2);
            expect_bijective(&comparison, &format!("T({} x {}) -> T x T", x.name(), y.name()))?;
            Ok(())
        })();
        if let Err(mut f) = outcome {
            f.witness.insert(0, j);
            partial(scan, f);
        }
    }
}

fn check_second_order(
    ts: &TangentSpace,
    second: &SecondOrder,
    iter: &TangentSpace,
    tb: &TangentBundle,
    scans: &mut Scans,
) {
    let ell = second.ell.map();
    let flip = second.flip.map();
    let base = ts.bundle.witness();

    let scan = scans.get("lift_bundle_morphism");
    check_bundle_morphism(ell, ts.z().map(), &base, &tb.witness, scan);
    let factored = FiniteFunction::product(ts.z().map(), &second.zhat);
    expect_equal(scan, &[], ell, &factored, "lift against z x zhat");

    let scan = scans.get("flip_involution");
    expect_equal(
        scan,
        &[],
        &flip.compose(flip),
        &FiniteFunction::identity(flip.domain()),
        "c c against 1",
    );

    let scan = scans.get("flip_bundle_morphism");
    check_bundle_morphism(
        flip,
        &FiniteFunction::identity(ts.size()),
        &tb.witness,
        &iter.bundle.witness(),
        scan,
    );

    let scan = scans.get("lift_flip_coherence");
    expect_equal(scan, &[], &flip.compose(ell), ell, "c l against l");

    let scan = scans.get("lift_universality");
    match lift_universality(&base, ell, iter.z().map(), &tb.witness, ts.z().map()) {
        Err(f) => f.record(scan),
        Ok(u) => {
            // μ((x, a), (x, b)) = ((x, b), ẑ(a))
            let square = &second.square;
            let expected = FiniteFunction::from_fn(base.pairs.len(), square.product.size(), |i| {
                let (v1, v2) = base.pairs.pairs[i];
                let (x, a) = ts.carrier.split(v1);
                let (_, b) = ts.carrier.split(v2);
                square.pair(ts.carrier.pair(x, b), second.zhat.apply(a))
            });
            expect_equal(scan, &[], &u.mu, &expected, "mu against <1 x pi2, zhat pi1 pi2>");
        }
    }
}

fn check_third_order(
    ts: &TangentSpace,
    second: &SecondOrder,
    iter: &TangentSpace,
    iter_second: &SecondOrder,
    tb: &TangentBundle,
    scans: &mut Scans,
) {
    let ctx = ts.context();
    let t = ts.algebra();
    let t2 = &second.square.product;
    let ell = second.ell.map();
    let flip = second.flip.map();
    let (ell_t, flip_t) = (iter_second.ell.map(), iter_second.flip.map());

    let t_ell = ctx.t_fn(ell, t, t2);
    let t_flip = ctx.t_fn(flip, t2, t2);
    let decomposition = octonary(ts, second, iter_second);

    let scan = scans.get("lift_coassociativity");
    match &t_ell {
        Err(e) => CheckFailure::from(e.clone()).record(scan),
        Ok(t_ell) => {
            let lhs = t_ell.compose(ell);
            if expect_equal(scan, &[], &lhs, &ell_t.compose(ell), "T(l) l against l_T l") {
                match (&decomposition, &lift_line(ts, second)) {
                    (Ok(d), Ok(line)) => {
                        for v in 0..lhs.domain() {
                            let (x, a) = ts.carrier.split(v);
                            let got = d.table[lhs.apply(v)];
                            let want = [
                                x,
                                line.zero_l,
                                line.zero_l,
                                line.zero_ll,
                                line.zero_l,
                                line.zero_ll,
                                line.zero_ll,
                                line.top.apply(a),
                            ];
                            if !scan.expect(
                                got == want,
                                || vec![v],
                                || format!("T(l) l at {v} decomposes as {got:?}, expected {want:?}"),
                            ) {
                                break;
                            }
                        }
                    }
                    (Err(e), _) | (_, Err(e)) => partial(scan, CheckFailure::from(e.clone()).annotate("components")),
                }
            }
        }
    }

    let scan = scans.get("flip_yang_baxter");
    match &t_flip {
        Err(e) => CheckFailure::from(e.clone()).record(scan),
        Ok(t_flip) => {
            let lhs = t_flip.compose(flip_t).compose(t_flip);
            let rhs = flip_t.compose(t_flip).compose(flip_t);
            if expect_equal(scan, &[], &lhs, &rhs, "T(c) c_T T(c) against c_T T(c) c_T") {
                match &decomposition {
                    Ok(d) => {
                        if let Some((a, b)) = d.collision {
                            scan.fail(vec![a, b], format!("components do not separate {a} and {b}"));
                        }
                        for w in 0..lhs.domain() {
                            let input = d.table[w];
                            let want: [usize; 8] = std::array::from_fn(|i| input[OCTONARY_SWAP[i]]);
                            let got = d.table[lhs.apply(w)];
                            if !scan.expect(
                                got == want,
                                || vec![w],
                                || format!("Yang-Baxter at {w} gives {got:?}, expected {want:?}"),
                            ) {
                                break;
                            }
                        }
                    }
                    Err(e) => partial(scan, CheckFailure::from(e.clone()).annotate("components")),
                }
            }
        }
    }

    let scan = scans.get("lift_flip_coherence");
    match (&t_ell, &t_flip) {
        (Ok(t_ell), Ok(t_flip)) => {
            let lhs = t_ell.compose(flip);
            let rhs = flip_t.compose(t_flip).compose(ell_t);
            expect_equal(scan, &[], &lhs, &rhs, "T(l) c against c_T T(c) l_T");
        }
        (Err(e), _) | (_, Err(e)) => partial(scan, CheckFailure::from(e.clone()).annotate("T(l) c")),
    }

    let scan = scans.get("lift_universality_preserved");
    let square = UniversalitySquare {
        pairs: ts.bundle.pairs.algebra.clone(),
        base: ts.base.clone(),
        total_tangent: t2.clone(),
        base_tangent: t.clone(),
        mu: match lift_universality(&ts.bundle.witness(), ell, iter.z().map(), &tb.witness, ts.z().map()) {
            Ok(u) => u.mu,
            Err(f) => return f.record(scan),
        },
        q_rho: ts.p().map().compose(ts.bundle.pairs.left.map()),
        z_base: ts.z().map().clone(),
        t_q: tb.witness.q.clone(),
    };
    if let Some(note) = universality_preserved(ctx, &square, scan) {
        scan.note(note);
    }
}

impl CheckFailure {
    fn annotate(mut self, what: &str) -> Self {
        self.note = format!("{what}: {}", self.note);
        self
    }
}

/// Components of T³ elements, with a collision if they fail to separate.
struct Octonary {
    table: Vec<[usize; 8]>,
    collision: Option<(usize, usize)>,
}

/// Splits T³(X) into (x, a, b, c, d, e, f, g) with x ∈ X; a, b, d ∈ L;
/// c, e, f ∈ LL; g ∈ LLL, through ω at every level.
fn octonary(ts: &TangentSpace, second: &SecondOrder, iter_second: &SecondOrder) -> Result<Octonary, TangentError> {
    let ctx = ts.context();
    let omega1 = &second.omega;
    let omega2 = &iter_second.omega;
    let l = &ts.reflection.reflected;
    let ll = omega1.target.right().clone();
    let l_omega1 = ctx.lift(&omega1.forward)?;
    let omega3 = ctx.omega(l, &ll)?;
    let lt = second.square.right().size();
    let lt2 = iter_second.square.right().size();
    let nl = l.size();
    let n = iter_second.square.product.size();

    let mut table = Vec::with_capacity(n);
    let mut seen = HashMap::with_capacity(n);
    let mut collision = None;
    for w in 0..n {
        let (u, m) = (w / lt2, w % lt2);
        let (v, k) = (u / lt, u % lt);
        let (x, a) = (v / nl, v % nl);
        let (b, c) = omega1.target.split(omega1.forward.apply(k));
        let (m1, m2) = omega2.target.split(omega2.forward.apply(m));
        let (d, e) = omega1.target.split(omega1.forward.apply(m1));
        let (f, g) = omega3.target.split(omega3.forward.apply(l_omega1.apply(m2)));
        let parts = [x, a, b, c, d, e, f, g];
        if let Some(&first) = seen.get(&parts) {
            collision.get_or_insert((first, w));
        }
        seen.entry(parts).or_insert(w);
        table.push(parts);
    }
    Ok(Octonary { table, collision })
}

/// Zeros and the last component L(ν⁻¹) ν⁻¹ of T(ℓ) ℓ.
struct LiftLine {
    zero_l: usize,
    zero_ll: usize,
    top: FiniteFunction,
}

fn lift_line(ts: &TangentSpace, second: &SecondOrder) -> Result<LiftLine, TangentError> {
    let ctx = ts.context();
    let rl = ctx.reflect(&ts.reflection.reflected)?;
    let l_nu_inv = ctx.lift(&second.nu.inverse)?;
    Ok(LiftLine {
        zero_l: ts.reflection.witness.zero,
        zero_ll: rl.witness.zero,
        top: l_nu_inv.map().compose(second.nu.inverse.map()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{generate, GeneratorSpec};
    use crate::reflect::Mode;
    use crate::tangent::Budget;

    fn report(spec: GeneratorSpec, mode: Mode, depth: usize) -> TangentReport {
        let ctx = Context::with_mode(mode, Budget::default());
        let x = Arc::new(generate(&spec).unwrap());
        let ts = TangentSpace::build(&ctx, &x).unwrap();
        let homs = default_homs(&ctx, &x);
        verify_tangent(&ts, &homs, depth)
    }

    #[test]
    fn z3_passes_everything() {
        let r = report(GeneratorSpec::CyclicGroup(3), Mode::Ab, 3);
        for e in &r.axioms {
            assert_eq!(e.status, Status::Pass, "{e:?}");
        }
        assert_eq!(r.sizes.t3, Some(3 * 3 * 3 * 3 * 3 * 3 * 3 * 3));
    }

    #[test]
    fn shallow_depth_skips() {
        let r = report(GeneratorSpec::CyclicGroup(2), Mode::Ab, 1);
        assert_eq!(r.entry("naturality").unwrap().status, Status::Pass);
        assert_eq!(r.entry("flip_yang_baxter").unwrap().status, Status::Skipped);
        assert_eq!(
            r.entry("flip_involution").unwrap().note.as_deref(),
            Some("needs depth 2")
        );
        assert_eq!(r.sizes.t2, None);
    }

    #[test]
    fn report_json_shape() {
        let r = report(GeneratorSpec::CyclicGroup(2), Mode::Terminal, 3);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["axioms"].as_array().unwrap().len(), 11);
        assert_eq!(v["sizes"]["T"], 2);
        assert_eq!(v["axioms"][0]["id"], "naturality");
    }
}
