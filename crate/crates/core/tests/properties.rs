use std::sync::Arc;

use proptest::prelude::*;

use tanalg::algebra::FiniteAlgebra;
use tanalg::catalog::{self, check_variety, generate, standard_catalog, GeneratorSpec};
use tanalg::congruence::generate_congruence;
use tanalg::reflect::{AssignmentEngine, Mode};
use tanalg::tangent::{Budget, Context, TangentSpace};

fn catalog_upto(n: usize) -> Vec<Arc<FiniteAlgebra>> {
    standard_catalog()
        .iter()
        .map(|s| Arc::new(generate(s).unwrap()))
        .filter(|x| x.size() <= n)
        .collect()
}

fn small() -> impl Strategy<Value = Arc<FiniteAlgebra>> {
    prop::sample::select(catalog_upto(8))
}

/// Conjugate of `x` by a permutation.
fn relabel(x: &FiniteAlgebra, perm: &[usize]) -> FiniteAlgebra {
    let n = x.size();
    let mut inverse = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        inverse[p] = i;
    }
    let tables = x
        .signature()
        .operations()
        .iter()
        .zip(x.tables())
        .map(|(op, table)| {
            (0..n.pow(op.arity as u32))
                .map(|flat| {
                    let mut rest = flat;
                    let mut src = 0;
                    let mut scale = 1;
                    for _ in 0..op.arity {
                        src += inverse[rest % n] * scale;
                        rest /= n;
                        scale *= n;
                    }
                    perm[table[src]]
                })
                .collect()
        })
        .collect();
    FiniteAlgebra::new(x.name(), x.signature().clone(), n, tables).unwrap()
}

fn with_perm() -> impl Strategy<Value = (Arc<FiniteAlgebra>, Vec<usize>)> {
    small().prop_flat_map(|x| {
        let perm = Just((0..x.size()).collect::<Vec<_>>()).prop_shuffle();
        (Just(x), perm)
    })
}

fn with_seeds() -> impl Strategy<Value = (Arc<FiniteAlgebra>, Vec<(usize, usize)>)> {
    small().prop_flat_map(|x| {
        let n = x.size();
        (Just(x), prop::collection::vec((0..n, 0..n), 0..4))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn json_round_trips((x, perm) in with_perm()) {
        let y = relabel(&x, &perm);
        prop_assert_eq!(catalog::parse(&catalog::serialize(&y)).unwrap(), y);
    }

    #[test]
    fn congruence_contains_seeds_and_is_compatible((x, seeds) in with_seeds()) {
        let c = generate_congruence(&x, &seeds).unwrap();
        let l = c.labels();
        for &(a, b) in &seeds {
            prop_assert_eq!(l[a], l[b]);
        }
        let n = x.size();
        for (i, op) in x.signature().operations().iter().enumerate() {
            if op.arity != 2 {
                continue;
            }
            for (a, b, c2, d) in (0..n * n * n * n).map(|k| (k % n, k / n % n, k / n / n % n, k / n / n / n)) {
                if l[a] == l[b] && l[c2] == l[d] {
                    prop_assert_eq!(l[x.apply(i, &[a, c2])], l[x.apply(i, &[b, d])]);
                }
            }
        }
    }

    #[test]
    fn congruence_is_idempotent((x, seeds) in with_seeds()) {
        let c = generate_congruence(&x, &seeds).unwrap();
        let mut more = seeds.clone();
        for class in c.classes() {
            more.extend(class.windows(2).map(|w| (w[0], w[1])));
        }
        let again = generate_congruence(&x, &more).unwrap();
        prop_assert_eq!(again.labels(), c.labels());
    }

    #[test]
    fn reflection_size_is_invariant_under_relabelling((x, perm) in with_perm(), mode in prop::sample::select(vec![Mode::Ab, Mode::Cmon])) {
        let y = Arc::new(relabel(&x, &perm));
        let a = AssignmentEngine::new(mode).reflect_unchecked(&x).unwrap();
        let b = AssignmentEngine::new(mode).reflect_unchecked(&y).unwrap();
        prop_assert_eq!(a.size(), b.size());
    }

    #[test]
    fn unit_is_a_surjective_homomorphism(x in small()) {
        let r = AssignmentEngine::new(Mode::Cmon).reflect(&x).unwrap();
        prop_assert!(r.unit.map().is_surjective());
        prop_assert!(tanalg::Homomorphism::new(x.clone(), r.reflected.clone(), r.unit.map().clone()).is_ok());
    }

    #[test]
    fn z_is_a_section_of_p(x in small()) {
        let ts = TangentSpace::build(&Context::with_mode(Mode::Cmon, Budget::default()), &x).unwrap();
        let pz = ts.p().map().compose(ts.z().map());
        prop_assert!((0..x.size()).all(|v| pz.apply(v) == v));
        prop_assert_eq!(ts.size(), x.size() * ts.fibre_size());
    }

    #[test]
    fn random_magmas_are_seed_deterministic(seed in any::<u64>(), size in 1usize..7) {
        let spec = GeneratorSpec::RandomJtMagma { seed, size };
        let a = generate(&spec).unwrap();
        prop_assert_eq!(&a, &generate(&spec).unwrap());
        prop_assert!(check_variety(&a, spec.variety()).is_ok());
    }
}
