//! Reports for differential bundles and the round trip through L-algebras.

use std::sync::Arc;

use crate::algebra::{check_homomorphism, FiniteAlgebra, FiniteFunction};
use crate::report::{AxiomReport, Scan};
use crate::tangent::bundle::{
    check_bundle_morphism, expect_bijective, expect_equal, lift_universality, tangent_of_bundle,
    triple_pullback_preserved, universality_preserved, CheckFailure, UniversalitySquare,
};
use crate::tangent::{Context, TangentSpace};

use super::{
    build_diff_bundle, compare, derive_negation, diff_object_to_l_algebra, rosicky_violation, BundleError,
    DifferentialBundle, DifferentialObject, LAlgebra,
};

/// Checks on a differential object.
pub const DIFF_OBJECT_AXIOMS: [&str; 2] = ["equalizer", "l_algebra"];

/// Registry of the differential bundle checks, in report order.
pub const DIFF_BUNDLE_AXIOMS: [&str; 9] = [
    "bundle_witness",
    "lift_morphism_z",
    "lift_morphism_zeta",
    "lift_square",
    "lift_universality",
    "lift_universality_preserved",
    "pullbacks_preserved",
    "rosicky_square",
    "negation",
];

/// Checks linking a bundle to the product bundle rebuilt from its kernel.
pub const COMPARISON_AXIOMS: [&str; 5] = [
    "kernel_algebra",
    "phi_bijective",
    "phi_over_base",
    "phi_linear",
    "phi_inverse",
];

/// Round trip entries: building, verifying, the kernel isomorphism and then
/// the comparison checks.
pub const ROUNDTRIP_AXIOMS: [&str; 8] = [
    "build",
    "diff_bundle",
    "kernel_iso",
    "kernel_algebra",
    "phi_bijective",
    "phi_over_base",
    "phi_linear",
    "phi_inverse",
];

struct Scans {
    ids: &'static [&'static str],
    scans: Vec<Scan>,
}

impl Scans {
    fn new(ids: &'static [&'static str]) -> Self {
        Self {
            ids,
            scans: ids.iter().map(|_| Scan::new()).collect(),
        }
    }

    fn get(&mut self, id: &str) -> &mut Scan {
        let i = self.ids.iter().position(|a| *a == id).expect("registered check");
        &mut self.scans[i]
    }

    fn unavailable(&mut self, ids: &[&str], what: &str, e: &BundleError) {
        for id in ids {
            let scan = self.get(id);
            if e.is_resource() {
                scan.skip(format!("{what}: {e}"));
            } else {
                scan.fail(vec![], format!("{what}: {e}"));
            }
        }
    }

    fn into_report(self) -> AxiomReport {
        AxiomReport {
            entries: self
                .scans
                .into_iter()
                .zip(self.ids)
                .map(|(s, id)| s.into_entry(id))
                .collect(),
        }
    }
}

/// The equalizer property and the passage back to an L-algebra.
pub fn verify_diff_object(ctx: &Context, d: &DifferentialObject) -> AxiomReport {
    let mut scans = Scans::new(&DIFF_OBJECT_AXIOMS);
    if let Err(e) = d.check_equalizer(ctx) {
        let witness = match &e {
            BundleError::Equalizer { element, .. } => vec![*element],
            _ => vec![],
        };
        scans.get("equalizer").fail(witness, e.to_string());
    }
    scans.get("equalizer").tick(d.lift.domain() as u64);
    if let Err(e) = diff_object_to_l_algebra(ctx, d) {
        scans.unavailable(&["l_algebra"], "structure map", &e);
    }
    scans.into_report()
}

pub fn verify_diff_bundle(ctx: &Context, d: &DifferentialBundle) -> AxiomReport {
    let mut scans = Scans::new(&DIFF_BUNDLE_AXIOMS);
    let (e, x) = (d.total(), d.base());
    let witness = d.bundle.witness();

    {
        let scan = scans.get("bundle_witness");
        d.bundle.check_homomorphisms(scan);
        witness.check(scan);
    }

    let spaces = TangentSpace::build(ctx, e).and_then(|te| Ok((te, TangentSpace::build(ctx, x)?)));
    let (te, tx) = match spaces {
        Ok(s) => s,
        Err(err) => {
            scans.unavailable(&DIFF_BUNDLE_AXIOMS[1..], "T(E) or T(X)", &err.into());
            return scans.into_report();
        }
    };
    {
        let scan = scans.get("bundle_witness");
        scan.tick(e.size() as u64);
        if let Err(err) = check_homomorphism(e, te.algebra(), &d.lift) {
            scan.fail(vec![], format!("lift is not a homomorphism: {err}"));
        }
    }

    match rosicky_violation(ctx, d) {
        Ok(None) => scans.get("rosicky_square").tick(e.size() as u64),
        Ok(Some(v)) => scans
            .get("rosicky_square")
            .fail(vec![v], format!("Rosicky square fails at {v}")),
        Err(err) => scans.unavailable(&["rosicky_square"], "T(q)", &err),
    }

    check_bundle_morphism(
        &d.lift,
        d.bundle.zero.map(),
        &witness,
        &te.bundle.witness(),
        scans.get("lift_morphism_zeta"),
    );

    match te.ell() {
        Err(err) => scans.unavailable(&["lift_square"], "lift of T(E)", &err.clone().into()),
        Ok(ell) => match ctx.t_fn(&d.lift, e, te.algebra()) {
            Err(err) => scans.unavailable(&["lift_square"], "T(lambda)", &err.into()),
            Ok(t_lift) => {
                let lhs = t_lift.compose(&d.lift);
                let rhs = ell.map().compose(&d.lift);
                expect_equal(
                    scans.get("lift_square"),
                    &[],
                    &lhs,
                    &rhs,
                    "T(lambda) lambda against l lambda",
                );
            }
        },
    }

    match tangent_of_bundle(ctx, &d.bundle) {
        Err(f) => {
            let note = f.note.clone();
            f.record(scans.get("pullbacks_preserved"));
            for id in ["lift_morphism_z", "lift_universality", "lift_universality_preserved"] {
                if scans.get("pullbacks_preserved").failed() {
                    scans.get(id).fail(vec![], format!("prerequisite: {note}"));
                } else {
                    scans.get(id).skip(note.clone());
                }
            }
        }
        Ok(tb) => {
            let scan = scans.get("pullbacks_preserved");
            scan.tick(tb.kappa.domain() as u64);
            tb.witness.check(scan);
            if let Err(f) = triple_pullback_preserved(ctx, &d.bundle) {
                if f.resource {
                    scan.note(f.note);
                } else {
                    scan.fail(f.witness, f.note);
                }
            }

            check_bundle_morphism(
                &d.lift,
                tx.z().map(),
                &witness,
                &tb.witness,
                scans.get("lift_morphism_z"),
            );

            match lift_universality(&witness, &d.lift, te.z().map(), &tb.witness, tx.z().map()) {
                Err(f) => {
                    let note = f.note.clone();
                    f.record(scans.get("lift_universality"));
                    scans
                        .get("lift_universality_preserved")
                        .fail(vec![], format!("prerequisite: {note}"));
                }
                Ok(u) => {
                    scans.get("lift_universality").tick(u.comparison.domain() as u64);
                    let square = UniversalitySquare {
                        pairs: d.bundle.pairs.algebra.clone(),
                        base: x.clone(),
                        total_tangent: te.algebra().clone(),
                        base_tangent: tx.algebra().clone(),
                        mu: u.mu,
                        q_rho: d.bundle.q.map().compose(d.bundle.pairs.left.map()),
                        z_base: tx.z().map().clone(),
                        t_q: tb.witness.q.clone(),
                    };
                    let scan = scans.get("lift_universality_preserved");
                    if let Some(note) = universality_preserved(ctx, &square, scan) {
                        scan.note(note);
                    }
                }
            }
        }
    }

    check_negation(ctx, d, scans.get("negation"));
    scans.into_report()
}

fn check_negation(ctx: &Context, d: &DifferentialBundle, scan: &mut Scan) {
    let witness = d.bundle.witness();
    let derived = match derive_negation(ctx, d) {
        Ok(n) => n,
        Err(e) if e.is_resource() => return scan.skip(e.to_string()),
        Err(e) => return scan.fail(vec![], e.to_string()),
    };
    let iota = match (derived, &witness.neg) {
        (Some(n), given) => {
            if let Some(given) = given {
                expect_equal(scan, &[], &n, given, "derived negation against the bundle's");
            }
            n
        }
        (None, Some(given)) => given.clone(),
        (None, None) => return scan.skip("no negation in this mode"),
    };
    let q = &witness.q;
    for v in 0..q.domain() {
        let i = iota.apply(v);
        let ok = q.apply(i) == q.apply(v) && witness.add(v, i) == Some(witness.zero.apply(q.apply(v)));
        if !scan.expect(ok, || vec![v], || format!("{i} is not a fibre negative of {v}")) {
            return;
        }
    }
}

fn record(scan: &mut Scan, e: BundleError) {
    if e.is_resource() {
        scan.skip(e.to_string());
    } else {
        scan.fail(vec![], e.to_string());
    }
}

/// The comparison of a bundle with the product bundle over its kernel
/// algebra: φ is a bijective linear bundle morphism over X, and the
/// explicit φ⁻¹ of the construction is its inverse.
pub fn comparison_report(ctx: &Context, d: &DifferentialBundle) -> AxiomReport {
    let mut scans = Scans::new(&COMPARISON_AXIOMS);
    fill_comparison(ctx, d, &mut scans);
    scans.into_report()
}

fn fill_comparison(ctx: &Context, d: &DifferentialBundle, scans: &mut Scans) {
    let cmp = match compare(ctx, d) {
        Ok(c) => c,
        Err(e) => return scans.unavailable(&COMPARISON_AXIOMS, "kernel construction", &e),
    };
    scans.get("kernel_algebra").tick(cmp.decomposition.fill_domain() as u64);
    let (phi, rebuilt) = (&cmp.phi, &cmp.rebuilt);

    let scan = scans.get("phi_bijective");
    scan.tick(phi.domain() as u64);
    let inverse = match expect_bijective(phi, "phi") {
        Ok(inv) => Some(inv),
        Err(f) => {
            f.record(scan);
            None
        }
    };

    let q_rebuilt = rebuilt.bundle.q.map().compose(phi);
    expect_equal(
        scans.get("phi_over_base"),
        &[],
        &q_rebuilt,
        d.bundle.q.map(),
        "q' phi against q",
    );

    let scan = scans.get("phi_linear");
    scan.tick(phi.domain() as u64);
    if let Err(e) = check_homomorphism(d.total(), rebuilt.total(), phi) {
        scan.fail(vec![], format!("phi is not a homomorphism: {e}"));
    }
    let identity = FiniteFunction::identity(d.base().size());
    check_bundle_morphism(phi, &identity, &d.bundle.witness(), &rebuilt.bundle.witness(), scan);
    match ctx.t_fn(phi, d.total(), rebuilt.total()) {
        Ok(t_phi) => {
            expect_equal(
                scan,
                &[],
                &t_phi.compose(&d.lift),
                &rebuilt.lift.compose(phi),
                "T(phi) lambda against lambda' phi",
            );
        }
        Err(e) => record(scan, e.into()),
    }

    let scan = scans.get("phi_inverse");
    match inverse {
        Some(inv) => {
            expect_equal(
                scan,
                &[],
                &cmp.phi_inverse,
                &inv,
                "constructed inverse against the table inverse",
            );
        }
        None => scan.fail(vec![], "phi has no inverse to compare with"),
    }
}

/// A round trip report together with the bundle verification it ran.
#[derive(Clone, Debug)]
pub struct Roundtrip {
    pub report: AxiomReport,
    pub bundle: Option<AxiomReport>,
}

/// D(X, alg), its verification, D♭ and the comparison back.
pub fn roundtrip_check(ctx: &Context, x: &Arc<FiniteAlgebra>, alg: &LAlgebra) -> AxiomReport {
    roundtrip(ctx, x, alg).report
}

pub fn roundtrip(ctx: &Context, x: &Arc<FiniteAlgebra>, alg: &LAlgebra) -> Roundtrip {
    let mut scans = Scans::new(&ROUNDTRIP_AXIOMS);
    let d = match build_diff_bundle(ctx, x, alg) {
        Ok(d) => d,
        Err(e) => {
            scans.unavailable(&ROUNDTRIP_AXIOMS, "building the bundle", &e);
            return Roundtrip {
                report: scans.into_report(),
                bundle: None,
            };
        }
    };
    scans.get("build").tick(d.total().size() as u64);

    let report = verify_diff_bundle(ctx, &d);
    let scan = scans.get("diff_bundle");
    scan.tick(report.entries.iter().map(|e| e.cost).sum());
    if let Some(f) = report.failures().next() {
        scan.fail(
            f.witness.clone().unwrap_or_default(),
            format!("{}: {}", f.id, f.note.clone().unwrap_or_default()),
        );
    }
    for s in report
        .entries
        .iter()
        .filter(|e| e.note.is_some() && e.status != crate::report::Status::Fail)
    {
        scan.note(format!("{}: {}", s.id, s.note.as_deref().unwrap_or_default()));
    }

    if let Err(f) = check_kernel_iso(ctx, x, alg, &d) {
        f.record(scans.get("kernel_iso"));
    }
    fill_comparison(ctx, &d, &mut scans);
    Roundtrip {
        report: scans.into_report(),
        bundle: Some(report),
    }
}

/// j: A → ker(π₁), a ↦ (0, a), is an isomorphism of L-algebras onto the
/// kernel algebra that D♭ returns.
fn check_kernel_iso(
    ctx: &Context,
    x: &Arc<FiniteAlgebra>,
    alg: &LAlgebra,
    d: &DifferentialBundle,
) -> Result<(), CheckFailure> {
    let zero = x
        .zero()
        .ok_or_else(|| CheckFailure::new(vec![], format!("{} has no zero", x.name())))?;
    let k = super::diff_bundle_to_l_algebra(ctx, d).map_err(|e| {
        let resource = e.is_resource();
        CheckFailure {
            resource,
            ..CheckFailure::new(vec![], e.to_string())
        }
    })?;
    let na = alg.size();
    let mut j = Vec::with_capacity(na);
    for a in 0..na {
        match k.kernel.position(zero * na + a) {
            Some(p) => j.push(p),
            None => return Err(CheckFailure::new(vec![a], format!("(0, {a}) is not in the kernel"))),
        }
    }
    let j = FiniteFunction::new(k.kernel.elements.len(), j).expect("in range");
    expect_bijective(&j, "A -> ker(q)")?;
    check_homomorphism(&alg.carrier, &k.algebra.carrier, &j)
        .map_err(|e| CheckFailure::new(vec![], format!("A -> ker(q) is not a homomorphism: {e}")))?;
    let lj = ctx.lift_fn(&j, &alg.carrier, &k.algebra.carrier)?;
    let lhs = j.compose(&alg.structure);
    let rhs = k.algebra.structure.compose(&lj);
    if let Some(m) = lhs.first_difference(&rhs) {
        return Err(CheckFailure::new(vec![m], format!("structure maps disagree at {m}")));
    }
    Ok(())
}
