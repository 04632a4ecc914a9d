use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tanalg::bundles::{build_diff_bundle, roundtrip, LAlgebra};
use tanalg::tangent::{default_homs, verify_tangent};
use tanalg::{generate_congruence, AssignmentEngine, Budget, Context, GeneratorSpec, Mode, TangentSpace};
use tanalg_bench::{algebra, groups};

fn reflection(c: &mut Criterion) {
    let mut g = c.benchmark_group("reflect_ab");
    for spec in groups() {
        let x = algebra(spec.clone());
        g.bench_with_input(BenchmarkId::from_parameter(spec.name()), &x, |b, x| {
            b.iter(|| AssignmentEngine::new(Mode::Ab).reflect_unchecked(x).unwrap())
        });
    }
    g.finish();
}

fn congruence(c: &mut Criterion) {
    let x = algebra(GeneratorSpec::Symmetric(4));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let seeds: Vec<(usize, usize)> = (0..3).map(|_| (rng.gen_range(0..24), rng.gen_range(0..24))).collect();
    c.bench_function("congruence_S4", |b| b.iter(|| generate_congruence(&x, &seeds).unwrap()));
}

fn tangent(c: &mut Criterion) {
    let mut g = c.benchmark_group("tangent");
    g.sample_size(10);
    for (spec, mode) in [
        (GeneratorSpec::Symmetric(3), Mode::Ab),
        (GeneratorSpec::LeftZeroMonoid, Mode::Cmon),
        (GeneratorSpec::NonassocLoop5, Mode::Ab),
    ] {
        let x = algebra(spec.clone());
        g.bench_function(BenchmarkId::new("build", spec.name()), |b| {
            b.iter(|| TangentSpace::build(&Context::with_mode(mode, Budget::default()), &x).unwrap())
        });
        g.bench_function(BenchmarkId::new("verify_depth3", spec.name()), |b| {
            b.iter(|| {
                let ctx = Context::with_mode(mode, Budget::default());
                let ts = TangentSpace::build(&ctx, &x).unwrap();
                verify_tangent(&ts, &default_homs(&ctx, &x), 3)
            })
        });
    }
    g.finish();
}

fn bundle(c: &mut Criterion) {
    let mut g = c.benchmark_group("bundle");
    g.sample_size(10);
    let x = algebra(GeneratorSpec::Symmetric(3));
    let a = algebra(GeneratorSpec::CyclicGroup(2));
    g.bench_function("build_S3_Z2", |b| {
        b.iter(|| {
            let ctx = Context::with_mode(Mode::Ab, Budget::default());
            let alg = LAlgebra::canonical(&ctx, &a).unwrap();
            build_diff_bundle(&ctx, &x, &alg).unwrap()
        })
    });
    g.bench_function("roundtrip_S3_Z2", |b| {
        b.iter(|| {
            let ctx = Context::with_mode(Mode::Ab, Budget::default());
            let alg = LAlgebra::canonical(&ctx, &a).unwrap();
            roundtrip(&ctx, &x, &alg)
        })
    });
    g.finish();
}

criterion_group!(kernels, reflection, congruence, tangent, bundle);
criterion_main!(kernels);
