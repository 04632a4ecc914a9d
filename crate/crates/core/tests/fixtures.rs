//! The frozen catalog under `fixtures/`. Set `TANALG_WRITE_FIXTURES=1` to
//! regenerate it from the generators.

use std::path::PathBuf;
use std::sync::Arc;

use tanalg::algebra::FiniteAlgebra;
use tanalg::catalog::{self, find_isomorphism, generate, standard_catalog, CatalogError, GeneratorSpec};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn path(spec: &GeneratorSpec) -> PathBuf {
    root().join(spec.family()).join(format!("{}.json", spec.name()))
}

fn pretty(x: &FiniteAlgebra) -> String {
    let mut s = serde_json::to_string_pretty(&catalog::to_value(x)).unwrap();
    s.push('\n');
    s
}

#[test]
fn catalog_matches_frozen_fixtures() {
    let write = std::env::var("TANALG_WRITE_FIXTURES").is_ok_and(|v| v == "1");
    for spec in standard_catalog() {
        let x = generate(&spec).unwrap();
        let p = path(&spec);
        if write {
            std::fs::create_dir_all(p.parent().unwrap()).unwrap();
            std::fs::write(&p, pretty(&x)).unwrap();
        }
        let frozen = catalog::parse_file(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
        assert_eq!(frozen, x, "{} drifted from its generator", spec.name());
        catalog::check_variety(&frozen, spec.variety()).unwrap();
    }
}

/// Conjugates every table by `perm`: element i of `x` becomes `perm[i]`.
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
            let cells = n.pow(op.arity as u32);
            (0..cells)
                .map(|flat| {
                    let mut rest = flat;
                    let mut args = vec![0; op.arity];
                    for slot in args.iter_mut().rev() {
                        *slot = inverse[rest % n];
                        rest /= n;
                    }
                    let mut src = 0;
                    for &a in &args {
                        src = src * n + a;
                    }
                    perm[table[src]]
                })
                .collect()
        })
        .collect();
    FiniteAlgebra::new(x.name(), x.signature().clone(), n, tables).unwrap()
}

#[test]
fn s3_fixture_is_s3_up_to_ordering() {
    let spec = GeneratorSpec::Symmetric(3);
    let fixture = catalog::parse_file(&path(&spec)).unwrap();
    let shuffled = relabel(&fixture, &[3, 5, 0, 4, 1, 2]);
    assert_ne!(shuffled, fixture);
    let s3 = generate(&spec).unwrap();
    let iso = find_isomorphism(&shuffled, &s3).expect("relabelled S3 is still S3");
    let (a, b) = (Arc::new(shuffled), Arc::new(s3));
    tanalg::Homomorphism::new(a, b, iso).expect("found map is a homomorphism");
}

#[test]
fn broken_fixture_names_operation_and_index() {
    let p = root().join("invalid/broken.json");
    let err = catalog::parse_file(&p).expect_err("entry 3 is out of range");
    assert!(
        matches!(err, CatalogError::Algebra(_) | CatalogError::Table { .. }),
        "{err:?}"
    );
    let text = err.to_string();
    assert!(text.contains("mul"), "{text}");
    assert!(text.contains("[1, 2]"), "{text}");
}
