//! Acceptance battery. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tanalg::algebra::{product, FiniteAlgebra, FiniteFunction, Homomorphism};
use tanalg::bundles::{build_diff_object, diff_object_to_l_algebra, roundtrip, verify_diff_object, LAlgebra};
use tanalg::catalog::{generate, standard_catalog, GeneratorSpec};
use tanalg::congruence::{brute_force_least_congruence, generate_congruence};
use tanalg::reflect::{group_commutator_oracle, verify_assignment, AssignmentEngine, Mode, TestFamily};
use tanalg::suite::{run_suite_with_threads, SuiteConfig};
use tanalg::tangent::{default_homs, verify_tangent, Budget, Context, TangentSpace};
use tanalg::{AxiomReport, Status};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn alg(spec: GeneratorSpec) -> Arc<FiniteAlgebra> {
    Arc::new(generate(&spec).expect("catalog spec generates"))
}

fn ctx(mode: Mode) -> Context {
    Context::with_mode(mode, Budget::default())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.1?}, limit {limit:?}"))?;
    Ok(took)
}

fn op(x: &FiniteAlgebra, name: &str) -> usize {
    x.signature()
        .op_index(name)
        .unwrap_or_else(|| panic!("{} has no `{name}`", x.name()))
}

/// Labels of the cosets of the commutator subgroup, found by closing the
/// set of commutators under multiplication.
fn commutator_cosets(g: &FiniteAlgebra) -> Vec<usize> {
    let n = g.size();
    let mul = op(g, "mul");
    let inv = op(g, "inv");
    let m = |a: usize, b: usize| g.apply(mul, &[a, b]);
    let i = |a: usize| g.apply(inv, &[a]);
    let mut inside = vec![false; n];
    for a in 0..n {
        for b in 0..n {
            inside[m(m(i(a), i(b)), m(a, b))] = true;
        }
    }
    loop {
        let members: Vec<usize> = (0..n).filter(|&a| inside[a]).collect();
        let mut grew = false;
        for &a in &members {
            for &b in &members {
                if !inside[m(a, b)] {
                    inside[m(a, b)] = true;
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut labels = vec![usize::MAX; n];
    let mut next = 0;
    for a in 0..n {
        if labels[a] != usize::MAX {
            continue;
        }
        for k in (0..n).filter(|&k| inside[k]) {
            labels[m(a, k)] = next;
        }
        next += 1;
    }
    labels
}

/// True when `f` and `g` induce the same partition of their domain.
fn same_partition(f: &[usize], g: &[usize]) -> bool {
    f.len() == g.len() && (0..f.len()).all(|a| (0..f.len()).all(|b| (f[a] == f[b]) == (g[a] == g[b])))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let engine = AssignmentEngine::new(Mode::Ab);
    let expected = [("S3", 2), ("D4", 4), ("Q8", 4)];
    let mut orders = Vec::new();
    for spec in [
        GeneratorSpec::CyclicGroup(2),
        GeneratorSpec::CyclicGroup(3),
        GeneratorSpec::CyclicGroup(4),
        GeneratorSpec::CyclicGroup(6),
        GeneratorSpec::Klein4,
        GeneratorSpec::Symmetric(3),
        GeneratorSpec::Dihedral(4),
        GeneratorSpec::Quaternion8,
    ] {
        let g = alg(spec.clone());
        let name = spec.name();
        let r = engine.reflect(&g).map_err(|e| format!("{name}: {e}"))?;
        let oracle = group_commutator_oracle(&g).map_err(|e| format!("{name} oracle: {e}"))?;
        ensure(r.size() == oracle.algebra.size(), || {
            format!(
                "{name}: |L| = {} but the oracle has {}",
                r.size(),
                oracle.algebra.size()
            )
        })?;
        let cosets = commutator_cosets(&g);
        let index = cosets.iter().max().map_or(0, |m| m + 1);
        ensure(index == r.size(), || {
            format!("{name}: [G : [G,G]] = {index}, |L| = {}", r.size())
        })?;
        ensure(same_partition(r.unit.map().values(), &cosets), || {
            format!("{name}: unit classes differ from commutator cosets")
        })?;

        // The mediating map L(G) -> oracle sends η(g) to η'(g).
        let mut phi = vec![usize::MAX; r.size()];
        for x in 0..g.size() {
            let (a, b) = (r.unit.apply(x), oracle.unit.apply(x));
            ensure(phi[a] == usize::MAX || phi[a] == b, || {
                format!("{name}: units disagree at {x}")
            })?;
            phi[a] = b;
        }
        let phi = FiniteFunction::new(oracle.algebra.size(), phi).map_err(|e| e.to_string())?;
        ensure(phi.is_bijective(), || format!("{name}: mediating map is not bijective"))?;
        Homomorphism::new(r.reflected.clone(), oracle.algebra.clone(), phi)
            .map_err(|e| format!("{name}: mediating map: {e}"))?;
        if let Some(&(_, want)) = expected.iter().find(|(n, _)| *n == name) {
            ensure(r.size() == want, || {
                format!("|Ab({name})| = {}, expected {want}", r.size())
            })?;
        }
        orders.push(format!("{name}:{}", r.size()));
    }
    let took = within(start, Duration::from_secs(30))?;
    Ok(format!(
        "8 groups agree with the commutator oracle ({}) in {took:.1?}",
        orders.join(" ")
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut algebras = 0;
    let mut trials = 0;
    for spec in standard_catalog() {
        let x = alg(spec.clone());
        if x.size() > 5 {
            continue;
        }
        algebras += 1;
        let n = x.size();
        for _ in 0..100 {
            let k = rng.gen_range(0..=3);
            let seeds: Vec<(usize, usize)> = (0..k).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
            let fast = generate_congruence(&x, &seeds).map_err(|e| e.to_string())?;
            let slow = brute_force_least_congruence(&x, &seeds).map_err(|e| e.to_string())?;
            ensure(same_partition(fast.labels(), slow.labels()), || {
                format!(
                    "{} with seeds {seeds:?}: {:?} vs {:?}",
                    spec.name(),
                    fast.labels(),
                    slow.labels()
                )
            })?;
            trials += 1;
        }
    }
    let took = within(start, Duration::from_secs(60))?;
    Ok(format!(
        "{trials} seed sets over {algebras} algebras match brute force in {took:.1?}"
    ))
}

fn criterion_3() -> Outcome {
    let mut parts = Vec::new();
    for (spec, mode) in [
        (GeneratorSpec::Symmetric(3), Mode::Ab),
        (GeneratorSpec::LeftZeroMonoid, Mode::Cmon),
        (GeneratorSpec::NonassocLoop5, Mode::Ab),
    ] {
        let start = Instant::now();
        let x = alg(spec.clone());
        let c = ctx(mode);
        let ts = TangentSpace::build(&c, &x).map_err(|e| e.to_string())?;
        let report = verify_tangent(&ts, &default_homs(&c, &x), 3);
        let name = spec.name();
        ensure(report.axioms.len() == 11, || {
            format!("{name}: {} entries", report.axioms.len())
        })?;
        if let Some(f) = report.axioms.iter().find(|e| e.status == Status::Fail) {
            return Err(format!("{name}: {} fails at {:?}", f.id, f.witness));
        }
        let skipped = report.axioms.iter().filter(|e| e.status == Status::Skipped).count();
        ensure(skipped == 0, || format!("{name}: {skipped} entries skipped"))?;
        if name == "S3" {
            ensure(report.sizes.t3 == Some(768), || {
                format!("|T3(S3)| = {:?}", report.sizes.t3)
            })?;
        }
        let took = within(start, Duration::from_secs(120))?;
        parts.push(format!("{name}/{mode} {took:.1?}"));
    }
    Ok(format!("11/11 on each, |T3(S3)| = 768 ({})", parts.join(", ")))
}

fn criterion_4() -> Outcome {
    let g = alg(GeneratorSpec::Symmetric(3));
    let c = ctx(Mode::Ab);
    let ts = TangentSpace::build(&c, &g).map_err(|e| e.to_string())?;
    let n = g.size();
    let (mul, inv, e) = (op(&g, "mul"), op(&g, "inv"), g.zero().expect("groups are pointed"));
    let m = |a: usize, b: usize| g.apply(mul, &[a, b]);

    // [h] is read through the unit, after checking it realises G/[G,G].
    let eta = ts.reflection.unit.map();
    ensure(same_partition(eta.values(), &commutator_cosets(&g)), || {
        "unit is not G -> G/[G,G]".into()
    })?;
    let t = |a: usize, h: usize| ts.carrier.pair(a, eta.apply(h));

    let second = ts.second().map_err(|e| e.to_string())?;
    let t_alg = ts.algebra();
    let iter = ts.iterated().map_err(|e| e.to_string())?;
    let eta_t = iter.reflection.unit.map();
    ensure(same_partition(eta_t.values(), &commutator_cosets(t_alg)), || {
        "unit of T(S3) is not abelianization".into()
    })?;
    // An element of Ab(T G) = Ab(G) x Ab(Ab G) written ([k], [j]) is the class of (k, [j]).
    let tt = |first: usize, k: usize, j: usize| second.square.pair(first, eta_t.apply(t(k, j)));

    let mut checked = 0;
    for a in 0..n {
        ensure(ts.z().apply(a) == t(a, e), || format!("z({a})"))?;
        for h in 0..n {
            ensure(ts.p().apply(t(a, h)) == a, || format!("p({a},[{h}])"))?;
            let neg = ts.n().ok_or("no negation on T(S3)")?;
            ensure(neg.apply(t(a, h)) == t(a, g.apply(inv, &[h])), || {
                format!("n({a},[{h}])")
            })?;
            ensure(second.ell.apply(t(a, h)) == tt(t(a, e), e, h), || {
                format!("l({a},[{h}])")
            })?;
            for h2 in 0..n {
                let i = ts
                    .bundle
                    .pairs
                    .set
                    .index_of(t(a, h), t(a, h2))
                    .ok_or("pair missing from T2")?;
                ensure(ts.s().apply(i) == t(a, m(h, h2)), || format!("s({a},[{h}],[{h2}])"))?;
                for k in 0..n {
                    let lhs = second.flip.apply(tt(t(a, h), k, h2));
                    ensure(lhs == tt(t(a, k), h, h2), || format!("c(({a},[{h}]),([{k}],[{h2}]))"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!(
        "p, s, z, n, l, c match the group formulas pointwise ({checked} flip points)"
    ))
}

/// Every pair of operations commutes, so each operation is a homomorphism.
fn is_entropic(x: &FiniteAlgebra) -> bool {
    let n = x.size();
    let ops = x.signature().operations();
    for (fi, f) in ops.iter().enumerate() {
        for (gi, g) in ops.iter().enumerate() {
            let (p, q) = (f.arity, g.arity);
            let cells = n.pow((p * q) as u32);
            for flat in 0..cells {
                let mut rest = flat;
                let mut grid = vec![0; p * q];
                for v in grid.iter_mut() {
                    *v = rest % n;
                    rest /= n;
                }
                let rows: Vec<usize> = (0..p).map(|i| x.apply(gi, &grid[i * q..(i + 1) * q])).collect();
                let cols: Vec<usize> = (0..q)
                    .map(|j| x.apply(fi, &(0..p).map(|i| grid[i * q + j]).collect::<Vec<_>>()))
                    .collect();
                if x.apply(fi, &rows) != x.apply(gi, &cols) {
                    return false;
                }
            }
        }
    }
    true
}

fn has_negatives(x: &FiniteAlgebra) -> bool {
    let zero = x.zero().expect("catalog algebras are pointed");
    (0..x.size()).all(|a| (0..x.size()).any(|b| x.plus(a, b) == zero))
}

fn criterion_5() -> Outcome {
    let mut objects = Vec::new();
    for spec in standard_catalog() {
        let x = alg(spec.clone());
        if x.size() > 8 || !is_entropic(&x) {
            continue;
        }
        let mode = if has_negatives(&x) { Mode::Ab } else { Mode::Cmon };
        let c = ctx(mode);
        let a = LAlgebra::canonical(&c, &x).map_err(|e| format!("{}: {e}", spec.name()))?;
        let d = build_diff_object(&a);
        let back = diff_object_to_l_algebra(&c, &d).map_err(|e| format!("{}: {e}", spec.name()))?;
        ensure(back.structure == a.structure, || {
            format!("{}: structure map changed", spec.name())
        })?;
        let report = verify_diff_object(&c, &d);
        ensure(!report.has_failures(), || {
            format!("{}: {:?}", spec.name(), report.failures().next())
        })?;
        objects.push((spec.name(), c, d));
    }
    ensure(objects.len() >= 8, || {
        format!("only {} abelian algebras", objects.len())
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x1a3bda);
    let mutable: Vec<_> = objects.iter().filter(|(_, _, d)| d.carrier.size() > 1).collect();
    let mut detected = 0;
    let trials = 100;
    for _ in 0..trials {
        let (_, c, d) = mutable[rng.gen_range(0..mutable.len())];
        let mut lift = d.lift.values().to_vec();
        let v = rng.gen_range(0..lift.len());
        let codomain = d.lift.codomain();
        let old = lift[v];
        lift[v] = (old + rng.gen_range(1..codomain)) % codomain;
        let mut bad = d.clone();
        bad.lift = FiniteFunction::new(codomain, lift).map_err(|e| e.to_string())?;
        if verify_diff_object(c, &bad).has_failures() {
            detected += 1;
        }
    }
    ensure(detected == trials, || format!("{detected}/{trials} mutations detected"))?;
    let names: Vec<&str> = objects.iter().map(|(n, _, _)| n.as_str()).collect();
    Ok(format!(
        "round trip identical on {} ({}); {detected}/{trials} mutations detected",
        names.len(),
        names.join(" ")
    ))
}

fn no_failures(report: &AxiomReport) -> Result<(), String> {
    match report.failures().next() {
        Some(f) => Err(format!(
            "{} fails at {:?}: {}",
            f.id,
            f.witness,
            f.note.clone().unwrap_or_default()
        )),
        None => Ok(()),
    }
}

fn criterion_6() -> Outcome {
    use GeneratorSpec::*;
    let start = Instant::now();
    let pairs = [
        (Symmetric(3), Some(CyclicGroup(2)), Mode::Ab),
        (CyclicGroup(4), Some(CyclicGroup(2)), Mode::Ab),
        (CyclicGroup(3), Some(CyclicGroup(3)), Mode::Ab),
        (Klein4, Some(CyclicGroup(2)), Mode::Ab),
        (CyclicGroup(2), Some(Klein4), Mode::Ab),
        (CyclicGroup(2), Some(CyclicGroup(3)), Mode::Ab),
        (Symmetric(3), None, Mode::Ab),
        (LeftZeroMonoid, Some(CyclicMonoid(3)), Mode::Cmon),
        (NonassocLoop5, Some(CyclicLoop(3)), Mode::Ab),
        (RingZnModmul(4), Some(RingTrivialMul(vec![2, 2])), Mode::Ab),
    ];
    let mut skipped = 0;
    for (base, fibre, mode) in pairs {
        let label = format!("{} x {}", base.name(), fibre.as_ref().map_or("1".into(), |f| f.name()));
        let c = ctx(mode);
        let x = alg(base);
        let a = match fibre {
            Some(f) => LAlgebra::canonical(&c, &alg(f)),
            None => LAlgebra::terminal(&c, &x),
        }
        .map_err(|e| format!("{label}: {e}"))?;
        let r = roundtrip(&c, &x, &a);
        no_failures(&r.report).map_err(|e| format!("{label} round trip: {e}"))?;
        let bundle = r.bundle.ok_or_else(|| format!("{label}: bundle not built"))?;
        no_failures(&bundle).map_err(|e| format!("{label} bundle: {e}"))?;
        let phi = r.report.entry("phi_bijective").ok_or("no phi_bijective entry")?;
        ensure(phi.status == Status::Pass, || {
            format!("{label}: phi_bijective {:?}", phi.status)
        })?;
        skipped += r.report.count(Status::Skipped) + bundle.count(Status::Skipped);
    }
    let took = within(start, Duration::from_secs(120))?;
    Ok(format!(
        "10 pairs round-trip with bijective phi, {skipped} entries skipped, in {took:.1?}"
    ))
}

fn criterion_7() -> Outcome {
    use GeneratorSpec::*;
    let mut checked = Vec::new();
    for spec in [Symmetric(3), LeftZeroMonoid, NonassocLoop5, Quaternion8] {
        let x = alg(spec.clone());
        let c = ctx(Mode::Terminal);
        let ts = TangentSpace::build(&c, &x).map_err(|e| e.to_string())?;
        let name = spec.name();
        // β = z: X -> T(X); every structure map is the identity through it.
        let beta = Homomorphism::new(x.clone(), ts.algebra().clone(), ts.z().map().clone())
            .map_err(|e| format!("{name}: {e}"))?;
        ensure(beta.map().is_bijective(), || {
            format!("{name}: X -> T(X) is not bijective")
        })?;
        let iter = ts.iterated().map_err(|e| e.to_string())?;
        let second = ts.second().map_err(|e| e.to_string())?;
        let beta2 = iter.z().map().compose(beta.map());
        ensure(beta2.is_bijective(), || format!("{name}: X -> T2(X) is not bijective"))?;
        for v in 0..x.size() {
            let b = beta.apply(v);
            ensure(ts.p().apply(b) == v, || format!("{name}: p not identity at {v}"))?;
            let i = ts.bundle.pairs.set.index_of(b, b).ok_or("pair missing")?;
            ensure(ts.s().apply(i) == b, || format!("{name}: s not identity at {v}"))?;
            if let Some(n) = ts.n() {
                ensure(n.apply(b) == b, || format!("{name}: n not identity at {v}"))?;
            }
            ensure(second.ell.apply(b) == beta2.apply(v), || {
                format!("{name}: l not identity at {v}")
            })?;
            ensure(second.flip.apply(beta2.apply(v)) == beta2.apply(v), || {
                format!("{name}: c not identity at {v}")
            })?;
        }
        checked.push(format!("{name}/terminal"));
    }
    for spec in [
        CyclicGroup(4),
        Klein4,
        CyclicMonoid(3),
        DirectProduct(vec![CyclicGroup(2), CyclicGroup(4)]),
    ] {
        let x = alg(spec.clone());
        let c = ctx(Mode::Identity);
        let ts = TangentSpace::build(&c, &x).map_err(|e| e.to_string())?;
        let name = spec.name();
        let square = product(&x, &x).map_err(|e| e.to_string())?;
        let eta = ts.reflection.unit.map();
        // β(a, b) = (a, η(b)): X x X -> T(X), over π₁.
        let beta = FiniteFunction::from_fn(square.product.size(), ts.size(), |i| {
            let (a, b) = square.split(i);
            ts.carrier.pair(a, eta.apply(b))
        });
        ensure(beta.is_bijective(), || {
            format!("{name}: X x X -> T(X) is not bijective")
        })?;
        let beta = Homomorphism::new(square.product.clone(), ts.algebra().clone(), beta)
            .map_err(|e| format!("{name}: {e}"))?;
        for i in 0..square.product.size() {
            ensure(ts.p().apply(beta.apply(i)) == square.split(i).0, || {
                format!("{name}: p is not the first projection")
            })?;
        }
        checked.push(format!("{name}/identity"));
    }
    Ok(format!("explicit isomorphisms for {}", checked.join(" ")))
}

fn criterion_8() -> Outcome {
    let lz3 = alg(GeneratorSpec::LeftZeroMonoid);
    let family = TestFamily {
        algebras: vec![lz3.clone()],
        homs: vec![Homomorphism::identity(&lz3)],
        max_work: None,
    };
    let report = verify_assignment(&AssignmentEngine::new(Mode::Identity), &family);
    let monoid = report.entry("witness_monoid").ok_or("no witness_monoid entry")?;
    ensure(monoid.status == Status::Fail, || {
        format!("LZ3 identity: witness_monoid is {:?}", monoid.status)
    })?;
    let w1 = monoid
        .witness
        .clone()
        .filter(|w| !w.is_empty())
        .ok_or("LZ3: no witness")?;

    let sl2 = alg(GeneratorSpec::Semilattice2);
    let family = TestFamily {
        algebras: vec![sl2.clone()],
        homs: vec![Homomorphism::identity(&sl2)],
        max_work: None,
    };
    let report = verify_assignment(&AssignmentEngine::new(Mode::Ab), &family);
    let group = report.entry("witness_group").ok_or("no witness_group entry")?;
    ensure(group.status == Status::Fail, || {
        format!("SL2 ab: witness_group is {:?}", group.status)
    })?;
    let w2 = group
        .witness
        .clone()
        .filter(|w| !w.is_empty())
        .ok_or("SL2: no witness")?;
    // The named element really has no inverse in L(SL2) = SL2.
    let culprit = *w2.last().unwrap_or(&0);
    let zero = sl2.zero().ok_or("SL2 is pointed")?;
    ensure((0..sl2.size()).all(|b| sl2.plus(culprit, b) != zero), || {
        format!("{culprit} has an inverse")
    })?;
    Ok(format!(
        "identity on LZ3: witness_monoid at {w1:?}; ab on SL2: witness_group at {w2:?} ({})",
        group.note.clone().unwrap_or_default()
    ))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let config = SuiteConfig::default();
    let first = serde_json::to_vec(&run_suite_with_threads(&config, 1)).map_err(|e| e.to_string())?;
    let second_report = run_suite_with_threads(&config, 4);
    let second = serde_json::to_vec(&second_report).map_err(|e| e.to_string())?;
    ensure(first == second, || "the two runs differ".into())?;
    ensure(second_report.ok, || {
        format!(
            "suite not ok: {} failed sections",
            second_report.summary.sections_failed
        )
    })?;
    Ok(format!(
        "two runs, {} bytes each, identical, in {:.1?}",
        first.len(),
        start.elapsed()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("reflection vs commutator oracle", criterion_1),
        ("congruence vs brute force", criterion_2),
        ("tangent axioms at depth 3", criterion_3),
        ("closed forms on S3", criterion_4),
        ("differential objects", criterion_5),
        ("differential bundles", criterion_6),
        ("mode sanity", criterion_7),
        ("negative detection", criterion_8),
        ("suite determinism", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match result {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
