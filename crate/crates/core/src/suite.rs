//! The fixed battery behind `tanalg suite`: every verifier over the
//! catalog, then a coverage check that each registry id passed somewhere.
//!
//! Every task gets its own engine, so costs and notes do not depend on
//! which thread ran what. The report is assembled in task order.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{product, FiniteAlgebra, FiniteFunction, Homomorphism};
use crate::bundles::{
    build_diff_object, roundtrip, verify_diff_bundle, verify_diff_object, DifferentialBundle, LAlgebra,
    DIFF_BUNDLE_AXIOMS, DIFF_OBJECT_AXIOMS, ROUNDTRIP_AXIOMS,
};
use crate::catalog::{find_isomorphism, generate, laws::Variety, standard_catalog, GeneratorSpec};
use crate::congruence::{brute_force_least_congruence, generate_congruence};
use crate::reflect::{
    group_commutator_oracle, loop_commutator_oracle, mediating_iso, ring_square_oracle, verify_assignment,
    AssignmentEngine, Mode, TestFamily, ASSIGNMENT_AXIOMS,
};
use crate::report::{AxiomEntry, AxiomReport, Scan, Status};
use crate::tangent::{default_homs, verify_tangent, Budget, Context, TangentSizes, TangentSpace, TANGENT_AXIOMS};

pub const ORACLE_CHECKS: [&str; 2] = ["same_order", "unit_agreement"];
pub const CONGRUENCE_CHECKS: [&str; 1] = ["least_congruence"];
pub const MODE_SHAPE_CHECKS: [&str; 2] = ["terminal_collapse", "identity_square"];

/// Every registry the suite must cover, by name.
pub const REGISTRIES: [(&str, &[&str]); 8] = [
    ("assignment", &ASSIGNMENT_AXIOMS),
    ("oracle", &ORACLE_CHECKS),
    ("congruence", &CONGRUENCE_CHECKS),
    ("tangent", &TANGENT_AXIOMS),
    ("mode_shape", &MODE_SHAPE_CHECKS),
    ("diff_object", &DIFF_OBJECT_AXIOMS),
    ("diff_bundle", &DIFF_BUNDLE_AXIOMS),
    ("roundtrip", &ROUNDTRIP_AXIOMS),
];

/// Carriers above this size are left out of the brute-force comparison.
const CONGRUENCE_MAX_SIZE: usize = 5;
const CONGRUENCE_SEED: u64 = 0xC0_4617;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub carrier_budget: usize,
    pub work_limit: u64,
    pub depth: usize,
    pub congruence_trials: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let budget = Budget::default();
        Self {
            carrier_budget: budget.carrier,
            work_limit: budget.work,
            depth: 3,
            congruence_trials: 100,
        }
    }
}

impl SuiteConfig {
    pub fn from_budget(budget: Budget) -> Self {
        Self {
            carrier_budget: budget.carrier,
            work_limit: budget.work,
            ..Self::default()
        }
    }

    fn budget(&self) -> Budget {
        Budget {
            carrier: self.carrier_budget,
            work: self.work_limit,
        }
    }
}

/// One verifier run. Sections with `expect_fail` are negative checks: they
/// are ok when each listed entry fails with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub registry: String,
    pub subject: String,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expect_fail: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sizes: Option<TangentSizes>,
    pub ok: bool,
    pub entries: Vec<AxiomEntry>,
}

impl Section {
    fn new(registry: &str, subject: impl Into<String>, mode: Mode, entries: Vec<AxiomEntry>) -> Self {
        Self::expecting(registry, subject, mode, entries, &[])
    }

    fn expecting(
        registry: &str,
        subject: impl Into<String>,
        mode: Mode,
        entries: Vec<AxiomEntry>,
        fail: &[&str],
    ) -> Self {
        let expect_fail: Vec<String> = fail.iter().map(|s| s.to_string()).collect();
        let ok = if expect_fail.is_empty() {
            entries.iter().all(|e| e.status != Status::Fail)
        } else {
            expect_fail.iter().all(|id| {
                entries.iter().any(|e| {
                    &e.id == id && e.status == Status::Fail && e.witness.as_ref().is_some_and(|w| !w.is_empty())
                })
            })
        };
        Self {
            registry: registry.to_string(),
            subject: subject.into(),
            mode,
            expect_fail,
            sizes: None,
            ok,
            entries,
        }
    }

    pub fn is_negative(&self) -> bool {
        !self.expect_fail.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub sections: usize,
    pub sections_failed: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub detections: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub sections: Vec<Section>,
    pub coverage: Vec<AxiomEntry>,
    pub summary: Summary,
    pub ok: bool,
}

impl SuiteReport {
    pub fn failed_sections(&self) -> impl Iterator<Item = &Section> {
        self.sections.iter().filter(|s| !s.ok)
    }

    pub fn section(&self, registry: &str, subject: &str, mode: Mode) -> Option<&Section> {
        self.sections
            .iter()
            .find(|s| s.registry == registry && s.subject == subject && s.mode == mode)
    }
}

#[derive(Clone, Debug)]
enum Task {
    Assignment {
        spec: GeneratorSpec,
        mode: Mode,
        fail: &'static [&'static str],
    },
    Oracle(GeneratorSpec),
    Congruence {
        index: usize,
        spec: GeneratorSpec,
    },
    Tangent {
        spec: GeneratorSpec,
        mode: Mode,
    },
    ModeShape {
        spec: GeneratorSpec,
        mode: Mode,
    },
    DiffObject {
        spec: GeneratorSpec,
        mode: Mode,
    },
    Bundle {
        base: GeneratorSpec,
        fibre: Option<GeneratorSpec>,
        mode: Mode,
    },
    TangentBundle {
        spec: GeneratorSpec,
        mode: Mode,
    },
}

/// Catalog entries that are fixed points of the abelian reflection, or of
/// the commutative one for monoids.
fn is_abelian(spec: &GeneratorSpec) -> bool {
    use GeneratorSpec::*;
    match spec {
        CyclicGroup(_) | Klein4 | CyclicMonoid(_) | Semilattice2 | CyclicLoop(_) | RingTrivialMul(_) => true,
        DirectProduct(parts) => parts.iter().all(is_abelian),
        _ => false,
    }
}

fn has_inverses(spec: &GeneratorSpec) -> bool {
    !matches!(spec, GeneratorSpec::LeftZeroMonoid | GeneratorSpec::Semilattice2)
}

fn plan() -> Vec<Task> {
    use GeneratorSpec::*;
    let catalog = standard_catalog();
    let mut tasks = Vec::new();

    for spec in &catalog {
        let ab_fail: &'static [&'static str] = if has_inverses(spec) { &[] } else { &["witness_group"] };
        tasks.push(Task::Assignment {
            spec: spec.clone(),
            mode: Mode::Ab,
            fail: ab_fail,
        });
        tasks.push(Task::Assignment {
            spec: spec.clone(),
            mode: Mode::Cmon,
            fail: &[],
        });
        tasks.push(Task::Assignment {
            spec: spec.clone(),
            mode: Mode::Terminal,
            fail: &[],
        });
        if is_abelian(spec) {
            tasks.push(Task::Assignment {
                spec: spec.clone(),
                mode: Mode::Identity,
                fail: &[],
            });
        } else if *spec == LeftZeroMonoid {
            tasks.push(Task::Assignment {
                spec: spec.clone(),
                mode: Mode::Identity,
                fail: &["witness_monoid"],
            });
        }
    }

    for spec in &catalog {
        if matches!(spec.variety(), Variety::Group | Variety::Ring | Variety::Loop) {
            tasks.push(Task::Oracle(spec.clone()));
        }
    }

    for (index, spec) in catalog.iter().enumerate() {
        tasks.push(Task::Congruence {
            index,
            spec: spec.clone(),
        });
    }

    for (spec, mode) in [
        (Symmetric(3), Mode::Ab),
        (LeftZeroMonoid, Mode::Cmon),
        (NonassocLoop5, Mode::Ab),
        (CyclicGroup(3), Mode::Ab),
        (RingTrivialMul(vec![2, 2]), Mode::Ab),
        (CyclicGroup(4), Mode::Identity),
        (Symmetric(3), Mode::Terminal),
    ] {
        tasks.push(Task::Tangent { spec, mode });
    }

    for (spec, mode) in [
        (Symmetric(3), Mode::Terminal),
        (LeftZeroMonoid, Mode::Terminal),
        (CyclicGroup(4), Mode::Identity),
        (Klein4, Mode::Identity),
        (CyclicMonoid(3), Mode::Identity),
    ] {
        tasks.push(Task::ModeShape { spec, mode });
    }

    for spec in &catalog {
        let small = generate(spec).map(|a| a.size() <= 8).unwrap_or(false);
        if small && is_abelian(spec) {
            if has_inverses(spec) {
                tasks.push(Task::DiffObject {
                    spec: spec.clone(),
                    mode: Mode::Ab,
                });
            }
            if spec.variety() == Variety::Monoid {
                tasks.push(Task::DiffObject {
                    spec: spec.clone(),
                    mode: Mode::Cmon,
                });
            }
        }
    }

    for (base, fibre, mode) in [
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
    ] {
        tasks.push(Task::Bundle { base, fibre, mode });
    }
    tasks.push(Task::TangentBundle {
        spec: Symmetric(3),
        mode: Mode::Ab,
    });
    tasks.push(Task::TangentBundle {
        spec: CyclicGroup(3),
        mode: Mode::Ab,
    });
    tasks
}

fn algebra(spec: &GeneratorSpec) -> Result<Arc<FiniteAlgebra>, String> {
    generate(spec).map(Arc::new).map_err(|e| e.to_string())
}

/// A section holding one failed entry per registry id, for inputs that
/// could not even be built.
fn broken(registry: &str, subject: String, mode: Mode, ids: &[&str], why: &str) -> Section {
    let entries = ids
        .iter()
        .map(|id| {
            let mut s = Scan::new();
            s.fail(vec![], why);
            s.into_entry(id)
        })
        .collect();
    Section::new(registry, subject, mode, entries)
}

fn run_task(task: &Task, config: &SuiteConfig) -> Vec<Section> {
    let budget = config.budget();
    match task {
        Task::Assignment { spec, mode, fail } => {
            let x = match algebra(spec) {
                Ok(x) => x,
                Err(e) => return vec![broken("assignment", spec.name(), *mode, &ASSIGNMENT_AXIOMS, &e)],
            };
            let ctx = Context::with_mode(*mode, budget);
            let mut homs = vec![Homomorphism::identity(&x)];
            homs.extend(
                default_homs(&ctx, &x)
                    .into_iter()
                    .filter(|h| h.source() == h.target())
                    .skip(1),
            );
            let family = TestFamily {
                algebras: vec![x],
                homs,
                max_work: Some(config.work_limit),
            };
            let report = verify_assignment(&AssignmentEngine::new(*mode), &family);
            vec![Section::expecting(
                "assignment",
                spec.name(),
                *mode,
                report.entries,
                fail,
            )]
        }
        Task::Oracle(spec) => vec![oracle_section(spec)],
        Task::Congruence { index, spec } => congruence_section(*index, spec, config.congruence_trials)
            .into_iter()
            .collect(),
        Task::Tangent { spec, mode } => {
            let x = match algebra(spec) {
                Ok(x) => x,
                Err(e) => return vec![broken("tangent", spec.name(), *mode, &TANGENT_AXIOMS, &e)],
            };
            let ctx = Context::with_mode(*mode, budget);
            let ts = match TangentSpace::build(&ctx, &x) {
                Ok(ts) => ts,
                Err(e) => return vec![broken("tangent", spec.name(), *mode, &TANGENT_AXIOMS, &e.to_string())],
            };
            let report = verify_tangent(&ts, &default_homs(&ctx, &x), config.depth);
            let mut section = Section::new("tangent", spec.name(), *mode, report.axioms);
            section.sizes = Some(report.sizes);
            vec![section]
        }
        Task::ModeShape { spec, mode } => vec![mode_shape_section(spec, *mode, budget)],
        Task::DiffObject { spec, mode } => {
            let ctx = Context::with_mode(*mode, budget);
            let built = algebra(spec).and_then(|a| LAlgebra::canonical(&ctx, &a).map_err(|e| e.to_string()));
            match built {
                Ok(alg) => {
                    let report = verify_diff_object(&ctx, &build_diff_object(&alg));
                    vec![Section::new("diff_object", spec.name(), *mode, report.entries)]
                }
                Err(e) => vec![broken("diff_object", spec.name(), *mode, &DIFF_OBJECT_AXIOMS, &e)],
            }
        }
        Task::Bundle { base, fibre, mode } => {
            let ctx = Context::with_mode(*mode, budget);
            let subject = format!(
                "{} over {}",
                fibre.as_ref().map_or("*".into(), |f| f.name()),
                base.name()
            );
            let inputs = algebra(base).and_then(|x| {
                let alg = match fibre {
                    Some(f) => LAlgebra::canonical(&ctx, &algebra(f)?),
                    None => LAlgebra::terminal(&ctx, &x),
                };
                Ok((x, alg.map_err(|e| e.to_string())?))
            });
            let (x, alg) = match inputs {
                Ok(v) => v,
                Err(e) => return vec![broken("roundtrip", subject, *mode, &ROUNDTRIP_AXIOMS, &e)],
            };
            let r = roundtrip(&ctx, &x, &alg);
            let mut out = Vec::new();
            if let Some(bundle) = r.bundle {
                out.push(Section::new("diff_bundle", subject.clone(), *mode, bundle.entries));
            }
            out.push(Section::new("roundtrip", subject, *mode, r.report.entries));
            out
        }
        Task::TangentBundle { spec, mode } => {
            let ctx = Context::with_mode(*mode, budget);
            let subject = format!("T({})", spec.name());
            let built = algebra(spec).and_then(|x| {
                let ts = TangentSpace::build(&ctx, &x).map_err(|e| e.to_string())?;
                DifferentialBundle::tangent(&ts).map_err(|e| e.to_string())
            });
            match built {
                Ok(d) => vec![Section::new(
                    "diff_bundle",
                    subject,
                    *mode,
                    verify_diff_bundle(&ctx, &d).entries,
                )],
                Err(e) => vec![broken("diff_bundle", subject, *mode, &DIFF_BUNDLE_AXIOMS, &e)],
            }
        }
    }
}

/// The engine's reflection against the textbook quotient: same order, and
/// a mediating isomorphism carrying one unit to the other.
fn oracle_section(spec: &GeneratorSpec) -> Section {
    let x = match algebra(spec) {
        Ok(x) => x,
        Err(e) => return broken("oracle", spec.name(), Mode::Ab, &ORACLE_CHECKS, &e),
    };
    let oracle = match spec.variety() {
        Variety::Ring => ring_square_oracle(&x),
        Variety::Loop => loop_commutator_oracle(&x),
        _ => group_commutator_oracle(&x),
    };
    let (oracle, ours) = match oracle.and_then(|o| Ok((o, AssignmentEngine::new(Mode::Ab).reflect(&x)?))) {
        Ok(v) => v,
        Err(e) => return broken("oracle", spec.name(), Mode::Ab, &ORACLE_CHECKS, &e.to_string()),
    };
    let mut order = Scan::new();
    order.expect(
        ours.size() == oracle.algebra.size() && find_isomorphism(&ours.reflected, &oracle.algebra).is_some(),
        || vec![ours.size(), oracle.algebra.size()],
        || {
            format!(
                "L({}) has order {}, the oracle {}",
                x.name(),
                ours.size(),
                oracle.algebra.size()
            )
        },
    );
    let mut unit = Scan::new();
    unit.tick(x.size() as u64);
    if mediating_iso(&ours.unit, &oracle.unit).is_none() {
        unit.fail(vec![], "no isomorphism carries the engine's unit to the oracle's");
    }
    Section::new(
        "oracle",
        spec.name(),
        Mode::Ab,
        vec![order.into_entry(ORACLE_CHECKS[0]), unit.into_entry(ORACLE_CHECKS[1])],
    )
}

/// Random seed sets closed by the engine and by the partition scan.
fn congruence_section(index: usize, spec: &GeneratorSpec, trials: usize) -> Option<Section> {
    let x = algebra(spec).ok()?;
    if x.size() > CONGRUENCE_MAX_SIZE {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(CONGRUENCE_SEED ^ index as u64);
    let n = x.size();
    let mut scan = Scan::new();
    for trial in 0..trials {
        let count = rng.gen_range(1..=3);
        let seeds: Vec<(usize, usize)> = (0..count).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        let outcome =
            generate_congruence(&x, &seeds).and_then(|fast| Ok((fast, brute_force_least_congruence(&x, &seeds)?)));
        let ok = match &outcome {
            Ok((fast, slow)) => fast.labels() == slow.labels(),
            Err(_) => false,
        };
        let flat: Vec<usize> = seeds.iter().flat_map(|&(a, b)| [a, b]).collect();
        if !scan.expect(
            ok,
            || [vec![trial], flat].concat(),
            || format!("trial {trial}: {outcome:?}"),
        ) {
            break;
        }
    }
    Some(Section::new(
        "congruence",
        spec.name(),
        Mode::Cmon,
        vec![scan.into_entry(CONGRUENCE_CHECKS[0])],
    ))
}

/// Terminal mode: p is a bijection and every other map is its inverse or
/// an identity. Identity mode: T(X) is X × X with p = π₁ and z = ⟨1, 0⟩.
fn mode_shape_section(spec: &GeneratorSpec, mode: Mode, budget: Budget) -> Section {
    let id = if mode == Mode::Terminal {
        MODE_SHAPE_CHECKS[0]
    } else {
        MODE_SHAPE_CHECKS[1]
    };
    let x = match algebra(spec) {
        Ok(x) => x,
        Err(e) => return broken("mode_shape", spec.name(), mode, &[id], &e),
    };
    let ctx = Context::with_mode(mode, budget);
    let mut scan = Scan::new();
    match TangentSpace::build(&ctx, &x) {
        Err(e) => scan.fail(vec![], e.to_string()),
        Ok(ts) if mode == Mode::Terminal => terminal_shape(&ts, &mut scan),
        Ok(ts) => identity_shape(&ts, &mut scan),
    }
    Section::new("mode_shape", spec.name(), mode, vec![scan.into_entry(id)])
}

fn terminal_shape(ts: &TangentSpace, scan: &mut Scan) {
    let n = ts.base.size();
    scan.tick(n as u64);
    if ts.size() != n || !ts.p().map().is_bijective() {
        return scan.fail(vec![ts.size()], "p is not a bijection onto X");
    }
    let zp = ts.z().map().compose(ts.p().map());
    if let Some(v) = zp.first_difference(&FiniteFunction::identity(n)) {
        return scan.fail(vec![v], "z p is not the identity");
    }
    if let Some(neg) = ts.n() {
        if let Some(v) = neg.map().first_difference(&FiniteFunction::identity(n)) {
            return scan.fail(vec![v], "n is not the identity");
        }
    }
    match (ts.iterated(), ts.ell(), ts.flip()) {
        (Ok(t2), Ok(ell), Ok(flip)) => {
            let z_t = t2.z().map();
            if let Some(v) = ell.map().first_difference(z_t) {
                return scan.fail(vec![v], "the lift is not the zero section of T(T(X))");
            }
            if let Some(v) = flip.map().first_difference(&FiniteFunction::identity(t2.size())) {
                scan.fail(vec![v], "the flip is not the identity");
            }
        }
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => scan.skip(e.to_string()),
    }
}

fn identity_shape(ts: &TangentSpace, scan: &mut Scan) {
    let x = &ts.base;
    let n = x.size();
    let square = match product(x, x) {
        Ok(w) => w,
        Err(e) => return scan.fail(vec![], e.to_string()),
    };
    scan.tick((n * n) as u64);
    if ts.algebra().tables() != square.product.tables() {
        return scan.fail(vec![ts.size()], "T(X) differs from X x X");
    }
    if let Some(v) = ts.p().map().first_difference(square.projections[0].map()) {
        return scan.fail(vec![v], "p differs from the first projection");
    }
    let zero = x.zero().unwrap_or(0);
    let pair = FiniteFunction::from_fn(n, n * n, |a| a * n + zero);
    if let Some(v) = ts.z().map().first_difference(&pair) {
        scan.fail(vec![v], "z differs from <1, 0>");
    }
}

pub fn run_suite(config: &SuiteConfig) -> SuiteReport {
    let threads = thread::available_parallelism().map_or(1, |n| n.get());
    run_suite_with_threads(config, threads)
}

pub fn run_suite_with_threads(config: &SuiteConfig, threads: usize) -> SuiteReport {
    let tasks = plan();
    let results: Vec<Mutex<Vec<Section>>> = tasks.iter().map(|_| Mutex::new(Vec::new())).collect();
    let next = AtomicUsize::new(0);
    thread::scope(|scope| {
        for _ in 0..threads.max(1).min(tasks.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(task) = tasks.get(i) else { break };
                *results[i].lock().expect("no panics while holding the lock") = run_task(task, config);
            });
        }
    });
    let sections: Vec<Section> = results
        .into_iter()
        .flat_map(|m| m.into_inner().expect("no panics while holding the lock"))
        .collect();
    assemble(*config, sections)
}

fn assemble(config: SuiteConfig, sections: Vec<Section>) -> SuiteReport {
    let coverage = coverage(&sections);
    let mut summary = Summary {
        sections: sections.len(),
        ..Summary::default()
    };
    for s in &sections {
        summary.sections_failed += usize::from(!s.ok);
        if s.is_negative() {
            summary.detections += usize::from(s.ok);
            continue;
        }
        for e in &s.entries {
            match e.status {
                Status::Pass => summary.passed += 1,
                Status::Fail => summary.failed += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
    }
    let ok = summary.sections_failed == 0 && coverage.iter().all(|e| e.status == Status::Pass);
    SuiteReport {
        config,
        sections,
        coverage,
        summary,
        ok,
    }
}

/// One entry per registry id: pass when some positive section passed it.
fn coverage(sections: &[Section]) -> Vec<AxiomEntry> {
    let mut out = Vec::new();
    for (registry, ids) in REGISTRIES {
        for id in ids {
            let hits = sections
                .iter()
                .filter(|s| s.registry == registry && !s.is_negative())
                .filter(|s| s.entries.iter().any(|e| e.id == *id && e.status == Status::Pass))
                .count();
            let mut scan = Scan::new();
            scan.tick(hits as u64);
            if hits == 0 {
                scan.fail(vec![], "never passed in any section");
            }
            out.push(scan.into_entry(&format!("{registry}/{id}")));
        }
    }
    out
}

/// The assignment report for one catalog entry, as the suite builds it.
pub fn assignment_report(spec: &GeneratorSpec, mode: Mode, config: &SuiteConfig) -> AxiomReport {
    let task = Task::Assignment {
        spec: spec.clone(),
        mode,
        fail: &[],
    };
    AxiomReport {
        entries: run_task(&task, config).into_iter().flat_map(|s| s.entries).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plan_covers_every_registry() {
        let tasks = plan();
        let has = |f: fn(&Task) -> bool| tasks.iter().any(f);
        assert!(has(|t| matches!(t, Task::Oracle(_))));
        assert!(has(|t| matches!(t, Task::Congruence { .. })));
        assert!(has(|t| matches!(
            t,
            Task::ModeShape {
                mode: Mode::Identity,
                ..
            }
        )));
        assert!(has(|t| matches!(
            t,
            Task::ModeShape {
                mode: Mode::Terminal,
                ..
            }
        )));
        assert_eq!(tasks.iter().filter(|t| matches!(t, Task::Bundle { .. })).count(), 10);
    }

    #[test]
    fn negative_sections_need_a_witness() {
        let mut s = Scan::new();
        s.fail(vec![], "no witness");
        let section = Section::expecting(
            "assignment",
            "x",
            Mode::Ab,
            vec![s.into_entry("witness_group")],
            &["witness_group"],
        );
        assert!(!section.ok);
        let mut s = Scan::new();
        s.fail(vec![0, 1], "missing inverse");
        let section = Section::expecting(
            "assignment",
            "x",
            Mode::Ab,
            vec![s.into_entry("witness_group")],
            &["witness_group"],
        );
        assert!(section.ok);
    }

    #[test]
    fn coverage_flags_unexercised_ids() {
        let c = coverage(&[]);
        assert_eq!(c.len(), REGISTRIES.iter().map(|(_, ids)| ids.len()).sum::<usize>());
        assert!(c.iter().all(|e| e.status == Status::Fail));
    }

    #[test]
    fn mode_shapes_hold() {
        for (spec, mode) in [
            (GeneratorSpec::Symmetric(3), Mode::Terminal),
            (GeneratorSpec::CyclicGroup(4), Mode::Identity),
        ] {
            let s = mode_shape_section(&spec, mode, Budget::default());
            assert!(s.ok && s.entries[0].status == Status::Pass, "{s:?}");
        }
    }

    #[test]
    fn oracle_agrees_on_s3_and_rings() {
        for spec in [
            GeneratorSpec::Symmetric(3),
            GeneratorSpec::RingZnModmul(4),
            GeneratorSpec::NonassocLoop5,
        ] {
            let s = oracle_section(&spec);
            assert!(s.ok, "{s:?}");
        }
    }
}
