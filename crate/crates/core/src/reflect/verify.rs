use std::sync::Arc;

use crate::algebra::{product, terminal, FiniteAlgebra, FiniteFunction, Homomorphism};
use crate::report::{AxiomReport, Scan};

use super::{
    check_coequalizer, closure_work, induced_hom, nu_from, AssignmentEngine, Mode, ReflectError, ReflectionResult,
};

/// Registry of the assignment checks, in report order.
pub const ASSIGNMENT_AXIOMS: [&str; 11] = [
    "witness_monoid",
    "witness_group",
    "coequalizer",
    "nu_iso",
    "nu_coherence",
    "omega_iso",
    "terminal_preserved",
    "eckmann_hilton",
    "naturality",
    "functor_laws",
    "monad_unit",
];

/// Objects and sampled homomorphisms the assignment is checked on.
#[derive(Clone, Debug, Default)]
pub struct TestFamily {
    pub algebras: Vec<Arc<FiniteAlgebra>>,
    pub homs: Vec<Homomorphism>,
    /// Products whose reflection would exceed this many closure steps are
    /// left out of the ω check and noted instead.
    pub max_work: Option<u64>,
}

fn prerequisite(scan: &mut Scan, name: &str, e: &ReflectError) {
    scan.skip(format!("prerequisite failed on {name}: {e}"));
}

pub fn verify_assignment(engine: &AssignmentEngine, family: &TestFamily) -> AxiomReport {
    let mode = engine.mode();
    let mut scans: Vec<Scan> = (0..ASSIGNMENT_AXIOMS.len()).map(|_| Scan::new()).collect();
    let [monoid, group, coeq, nu_iso, nu_coh, omega_iso, term, eh, natural, functor, monad] = &mut scans[..] else {
        unreachable!()
    };

    for (index, x) in family.algebras.iter().enumerate() {
        let name = x.name();
        let raw = match engine.reflect_unchecked(x) {
            Ok(r) => r,
            Err(e) => {
                monoid.fail(vec![index], format!("{name}: {e}"));
                continue;
            }
        };
        let w = &raw.witness;
        monoid.tick((w.size * w.size * w.size) as u64);
        if let Err(e) = w.check_monoid().and_then(|_| w.check_plus_homomorphic(&raw.reflected)) {
            let mut witness = vec![index];
            witness.extend(failure_elements(&e));
            monoid.fail(witness, format!("{name}: {e}"));
        }

        group.tick((w.size * w.size) as u64);
        match (mode, raw.validation()) {
            (Mode::Ab, Err(e @ (ReflectError::MissingInverse { .. } | ReflectError::AmbiguousInverse { .. }))) => {
                let mut witness = vec![index];
                witness.extend(failure_elements(&e));
                group.fail(witness, format!("{name}: {e}"));
            }
            (Mode::Cmon, _) => group.skip("cmon mode carries no negation"),
            (Mode::Identity, _) if w.neg.is_none() => group.skip(format!("{name} has no negation in identity mode")),
            _ => {}
        }

        if x.is_pointed() {
            coeq.tick(x.size() as u64);
            if let Err(e) = check_coequalizer(x, &raw.unit, &raw.projection) {
                coeq.fail(
                    vec![index].into_iter().chain(failure_elements(&e)).collect(),
                    format!("{name}: {e}"),
                );
            }
        }

        let rx = match engine.reflect(x) {
            Ok(r) => r,
            Err(e) => {
                for s in [&mut *nu_iso, &mut *nu_coh, &mut *omega_iso, &mut *eh, &mut *monad] {
                    prerequisite(s, name, &e);
                }
                continue;
            }
        };
        let rl = match engine.reflect(&rx.reflected) {
            Ok(r) => r,
            Err(e) => {
                nu_iso.fail(vec![index], format!("L({name}) does not reflect: {e}"));
                continue;
            }
        };
        nu_iso.tick(rl.size() as u64);
        match nu_from(&rx, &rl) {
            Err(e) => nu_iso.fail(vec![index], format!("{name}: {e}")),
            Ok(nu) => {
                check_nu_coherence(engine, index, &rx, &rl, &nu.forward, nu_coh);
                check_monad_unit(engine, index, &rx, &nu.forward, monad);
            }
        }
        check_eckmann_hilton(engine, index, &rx, &rl, eh);

        let star = terminal(x.signature());
        let mut partners: Vec<Arc<FiniteAlgebra>> = family
            .algebras
            .iter()
            .filter(|y| y.signature() == x.signature())
            .cloned()
            .collect();
        partners.push(star);
        for (j, y) in partners.iter().enumerate() {
            let work = closure_work(x.signature(), x.size() * y.size());
            if family.max_work.is_some_and(|limit| work > limit) {
                omega_iso.note(format!("{name} x {} not checked: about {work} closure steps", y.name()));
                continue;
            }
            omega_iso.tick(1);
            if let Err(e) = engine.omega(x, y) {
                omega_iso.fail(vec![index, j], format!("{name} x {}: {e}", y.name()));
            }
        }

        functor.tick(rx.size() as u64);
        match engine.lift(&Homomorphism::identity(x)) {
            Ok(l) if l.map() == &FiniteFunction::identity(rx.size()) => {}
            Ok(l) => functor.fail(
                vec![
                    index,
                    l.map()
                        .first_difference(&FiniteFunction::identity(rx.size()))
                        .unwrap_or(0),
                ],
                format!("L(1) is not 1 on {name}"),
            ),
            Err(e) => functor.fail(vec![index], format!("L(1) on {name}: {e}")),
        }
    }

    let mut seen_signatures = Vec::new();
    for x in &family.algebras {
        if seen_signatures.contains(x.signature()) {
            continue;
        }
        seen_signatures.push(x.signature().clone());
        let star = terminal(x.signature());
        term.tick(1);
        match engine.reflect(&star) {
            Ok(r) if r.size() == 1 => {}
            Ok(r) => term.fail(vec![r.size()], "L(*) is not terminal"),
            Err(e) => term.fail(vec![], format!("L(*): {e}")),
        }
    }

    for (index, f) in family.homs.iter().enumerate() {
        check_hom_naturality(engine, index, f, natural);
        for (j, g) in family.homs.iter().enumerate() {
            if **g.source() != **f.target() {
                continue;
            }
            functor.tick(f.source().size() as u64);
            let composite = g.compose(f);
            let lifted = engine.lift(&composite).and_then(|lgf| {
                let lg = engine.lift(g)?;
                let lf = engine.lift(f)?;
                Ok((lgf, lg.compose(&lf)))
            });
            match lifted {
                Ok((lhs, rhs)) => {
                    if let Some(c) = lhs.map().first_difference(rhs.map()) {
                        functor.fail(vec![index, j, c], "L(g f) differs from L(g) L(f)");
                    }
                }
                Err(e) => functor.fail(vec![index, j], format!("composition: {e}")),
            }
        }
    }

    AxiomReport {
        entries: scans
            .into_iter()
            .zip(ASSIGNMENT_AXIOMS)
            .map(|(s, id)| s.into_entry(id))
            .collect(),
    }
}

fn failure_elements(e: &ReflectError) -> Vec<usize> {
    match e {
        ReflectError::Associativity { witness } => witness.to_vec(),
        ReflectError::Commutativity { witness } => witness.to_vec(),
        ReflectError::Unit { element }
        | ReflectError::MissingInverse { element }
        | ReflectError::UnitNotSurjective { class: element }
        | ReflectError::NotCoequalizing { element } => vec![*element],
        ReflectError::AmbiguousInverse { element, first, second } => vec![*element, *first, *second],
        ReflectError::PlusNotHomomorphic { left, right, .. } => left.iter().chain(right).copied().collect(),
        _ => Vec::new(),
    }
}

fn check_nu_coherence(
    engine: &AssignmentEngine,
    index: usize,
    rx: &ReflectionResult,
    rl: &ReflectionResult,
    nu: &Homomorphism,
    scan: &mut Scan,
) {
    let result = engine.reflect(&rl.reflected).and_then(|rll| {
        let nu_l = nu_from(rl, &rll)?;
        let lifted = induced_hom(nu, &rll, rl)?;
        Ok((nu_l.forward, lifted))
    });
    match result {
        Ok((nu_l, lifted)) => {
            scan.tick(nu_l.map().domain() as u64);
            if let Some(c) = nu_l.map().first_difference(lifted.map()) {
                scan.fail(
                    vec![index, c],
                    format!("{}: nu of L(X) differs from L(nu)", rx.input.name()),
                );
            }
        }
        Err(e) => scan.fail(vec![index], format!("{}: {e}", rx.input.name())),
    }
}

fn check_monad_unit(
    engine: &AssignmentEngine,
    index: usize,
    rx: &ReflectionResult,
    nu: &Homomorphism,
    scan: &mut Scan,
) {
    let id = FiniteFunction::identity(rx.size());
    let rl = match engine.reflect(&rx.reflected) {
        Ok(r) => r,
        Err(e) => return scan.fail(vec![index], e.to_string()),
    };
    scan.tick(2 * rx.size() as u64);
    if let Some(c) = nu.map().compose(rl.unit.map()).first_difference(&id) {
        scan.fail(vec![index, c], "nu after the unit of L(X) is not the identity");
    }
    match engine.lift(&rx.unit) {
        Ok(l_eta) => {
            if let Some(c) = nu.map().compose(l_eta.map()).first_difference(&id) {
                scan.fail(vec![index, c], "nu after L(eta) is not the identity");
            }
        }
        Err(e) => scan.fail(vec![index], format!("L(eta): {e}")),
    }
}

fn check_eckmann_hilton(
    engine: &AssignmentEngine,
    index: usize,
    rx: &ReflectionResult,
    rl: &ReflectionResult,
    scan: &mut Scan,
) {
    let name = rx.input.name();
    let l = &rx.reflected;
    let m = l.size();
    let outcome = (|| -> Result<(), ReflectError> {
        // L(+) ∘ ω⁻¹ = + on LL.
        let ll = product(l, l)?;
        let plus = Homomorphism::new(
            ll.product.clone(),
            l.clone(),
            FiniteFunction::new(m, rx.witness.plus.clone())?,
        )?;
        let lifted_plus = engine.lift(&plus)?;
        let omega = engine.omega(l, l)?;
        let lhs = lifted_plus.compose(&omega.inverse);
        let rhs = FiniteFunction::new(rl.size(), rl.witness.plus.clone())?;
        scan.tick(rhs.domain() as u64);
        if let Some(c) = lhs.map().first_difference(&rhs) {
            scan.fail(
                vec![index, c],
                format!("{name}: L(+) after inverse omega differs from + on LL"),
            );
        }
        // 0 on LL is L(0) ∘ t⁻¹.
        let star = terminal(l.signature());
        let zero = Homomorphism::new(star.clone(), l.clone(), FiniteFunction::constant(1, m, rx.witness.zero))?;
        let lifted_zero = engine.lift(&zero)?;
        scan.tick(1);
        if lifted_zero.apply(0) != rl.witness.zero {
            scan.fail(vec![index], format!("{name}: L(0) differs from 0 on LL"));
        }
        // − on LL is L(−).
        if let (Some(neg), Some(neg_l)) = (&rx.witness.neg, &rl.witness.neg) {
            let neg = Homomorphism::new(l.clone(), l.clone(), FiniteFunction::new(m, neg.clone())?)?;
            let lifted_neg = engine.lift(&neg)?;
            scan.tick(neg_l.len() as u64);
            if let Some(c) = lifted_neg.map().values().iter().zip(neg_l).position(|(a, b)| a != b) {
                scan.fail(vec![index, c], format!("{name}: L(-) differs from - on LL"));
            }
        }
        Ok(())
    })();
    if let Err(e) = outcome {
        scan.fail(vec![index], format!("{name}: {e}"));
    }
}

fn check_hom_naturality(engine: &AssignmentEngine, index: usize, f: &Homomorphism, scan: &mut Scan) {
    let outcome = (|| -> Result<(), ReflectError> {
        let rx = engine.reflect(f.source())?;
        let ry = engine.reflect(f.target())?;
        // induced_hom itself asserts that L(f) preserves +, 0 and −.
        let lf = induced_hom(f, &rx, &ry)?;
        scan.tick(f.source().size() as u64);
        for x in 0..f.source().size() {
            if lf.apply(rx.unit.apply(x)) != ry.unit.apply(f.apply(x)) {
                scan.fail(vec![index, x], "unit is not natural");
                break;
            }
        }
        Ok(())
    })();
    if let Err(e) = outcome {
        scan.fail(vec![index], e.to_string());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{generate, GeneratorSpec};
    use crate::report::Status;

    fn alg(spec: GeneratorSpec) -> Arc<FiniteAlgebra> {
        Arc::new(generate(&spec).unwrap())
    }

    fn family(specs: Vec<GeneratorSpec>) -> TestFamily {
        let algebras: Vec<_> = specs.into_iter().map(alg).collect();
        let homs = algebras.iter().map(Homomorphism::identity).collect();
        TestFamily {
            algebras,
            homs,
            max_work: Some(200_000_000),
        }
    }

    #[test]
    fn abelian_family_passes() {
        use GeneratorSpec::*;
        let f = family(vec![
            CyclicGroup(2),
            CyclicGroup(4),
            Symmetric(3),
            DirectProduct(vec![Symmetric(3), CyclicGroup(2)]),
        ]);
        let report = verify_assignment(&AssignmentEngine::new(Mode::Ab), &f);
        assert_eq!(report.ids(), ASSIGNMENT_AXIOMS.to_vec());
        assert!(!report.has_failures(), "{report:?}");
        assert_eq!(report.count(Status::Skipped), 0);
        let note = report.entry("omega_iso").unwrap().note.clone().unwrap();
        assert!(note.contains("not checked"), "{note}");
    }

    #[test]
    fn terminal_mode_passes_anything() {
        let f = family(vec![GeneratorSpec::Symmetric(3), GeneratorSpec::LeftZeroMonoid]);
        let report = verify_assignment(&AssignmentEngine::new(Mode::Terminal), &f);
        assert!(!report.has_failures(), "{report:?}");
    }

    #[test]
    fn identity_mode_rejects_noncommutative_monoid() {
        let f = family(vec![GeneratorSpec::LeftZeroMonoid]);
        let report = verify_assignment(&AssignmentEngine::new(Mode::Identity), &f);
        let e = report.entry("witness_monoid").unwrap();
        assert_eq!(e.status, Status::Fail);
        assert!(e.witness.as_ref().unwrap().len() >= 3, "{e:?}");
    }

    #[test]
    fn ab_mode_reports_missing_inverse() {
        let f = family(vec![GeneratorSpec::Semilattice2]);
        let report = verify_assignment(&AssignmentEngine::new(Mode::Ab), &f);
        let e = report.entry("witness_group").unwrap();
        assert_eq!(e.status, Status::Fail);
        assert_eq!(e.witness, Some(vec![0, 1]));
        assert!(e.note.as_ref().unwrap().contains('1'), "{e:?}");
    }
}
