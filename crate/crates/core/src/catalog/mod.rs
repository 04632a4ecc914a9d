//! Built-in generators and the JSON algebra format.

pub mod json;
pub mod laws;

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{product_many, AlgebraError, FiniteAlgebra, FiniteFunction, Signature};

pub use json::{parse, parse_file, parse_lenient, serialize, to_value};
pub use laws::{check_variety, detect, LawViolation, Variety};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("generator output violates its laws: {0}")]
    Laws(#[from] LawViolation),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("malformed json: {0}")]
    Json(String),
    #[error("operation `{op}` at {path:?}: {message}")]
    Table {
        op: String,
        path: Vec<usize>,
        message: String,
    },
    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

/// Largest carrier a generator will produce.
pub const MAX_SIZE: usize = 64;

/// Seed for the loop search. Changing it changes the frozen fixture.
pub const LOOP_SEARCH_SEED: u64 = 0x5eed_100b;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorSpec {
    /// Z_n as a group.
    CyclicGroup(usize),
    /// The dihedral group of order 2n.
    Dihedral(usize),
    /// S_n for n ≤ 4, permutations in lexicographic order.
    Symmetric(usize),
    Quaternion8,
    Klein4,
    /// {e, x, y} with xa = x and ya = y for a ≠ e.
    LeftZeroMonoid,
    /// Random table with a two-sided identity at 0.
    RandomJtMagma {
        seed: u64,
        size: usize,
    },
    NonassocLoop5,
    RingZnModmul(usize),
    /// Z_{n₁} × … with zero multiplication.
    RingTrivialMul(Vec<usize>),
    DirectProduct(Vec<GeneratorSpec>),
    /// {0, 1} under max: a commutative monoid that is not a group.
    Semilattice2,
    /// Z_n in the monoid signature.
    CyclicMonoid(usize),
    /// Z_n in the loop signature.
    CyclicLoop(usize),
}

impl GeneratorSpec {
    /// Fixture family directory.
    pub fn family(&self) -> &'static str {
        match self {
            GeneratorSpec::CyclicGroup(_) => "cyclic_group",
            GeneratorSpec::Dihedral(_) => "dihedral",
            GeneratorSpec::Symmetric(_) => "symmetric",
            GeneratorSpec::Quaternion8 => "quaternion8",
            GeneratorSpec::Klein4 => "klein4",
            GeneratorSpec::LeftZeroMonoid => "leftzero_monoid_plus_identity",
            GeneratorSpec::RandomJtMagma { .. } => "random_jt_magma",
            GeneratorSpec::NonassocLoop5 => "nonassoc_loop5",
            GeneratorSpec::RingZnModmul(_) => "ring_zn_modmul",
            GeneratorSpec::RingTrivialMul(_) => "ring_trivial_mul",
            GeneratorSpec::DirectProduct(_) => "direct_product",
            GeneratorSpec::Semilattice2 => "semilattice2",
            GeneratorSpec::CyclicMonoid(_) => "cyclic_monoid",
            GeneratorSpec::CyclicLoop(_) => "cyclic_loop",
        }
    }

    /// Short name, also the fixture file stem.
    pub fn name(&self) -> String {
        match self {
            GeneratorSpec::CyclicGroup(n) => format!("Z{n}"),
            GeneratorSpec::Dihedral(n) => format!("D{n}"),
            GeneratorSpec::Symmetric(n) => format!("S{n}"),
            GeneratorSpec::Quaternion8 => "Q8".into(),
            GeneratorSpec::Klein4 => "K4".into(),
            GeneratorSpec::LeftZeroMonoid => "LZ3".into(),
            GeneratorSpec::RandomJtMagma { seed, size } => format!("M{size}s{seed}"),
            GeneratorSpec::NonassocLoop5 => "L5".into(),
            GeneratorSpec::RingZnModmul(n) => format!("R{n}"),
            GeneratorSpec::RingTrivialMul(orders) => {
                let parts: Vec<String> = orders.iter().map(|n| n.to_string()).collect();
                format!("N{}", parts.join("x"))
            }
            GeneratorSpec::DirectProduct(parts) => {
                let parts: Vec<String> = parts.iter().map(|p| p.name()).collect();
                parts.join("x")
            }
            GeneratorSpec::Semilattice2 => "SL2".into(),
            GeneratorSpec::CyclicMonoid(n) => format!("CM{n}"),
            GeneratorSpec::CyclicLoop(n) => format!("CL{n}"),
        }
    }

    /// The variety whose laws the output satisfies.
    pub fn variety(&self) -> Variety {
        match self {
            GeneratorSpec::CyclicGroup(_)
            | GeneratorSpec::Dihedral(_)
            | GeneratorSpec::Symmetric(_)
            | GeneratorSpec::Quaternion8
            | GeneratorSpec::Klein4 => Variety::Group,
            GeneratorSpec::LeftZeroMonoid | GeneratorSpec::Semilattice2 | GeneratorSpec::CyclicMonoid(_) => {
                Variety::Monoid
            }
            GeneratorSpec::RandomJtMagma { .. } => Variety::PointedMagma,
            GeneratorSpec::NonassocLoop5 | GeneratorSpec::CyclicLoop(_) => Variety::Loop,
            GeneratorSpec::RingZnModmul(_) | GeneratorSpec::RingTrivialMul(_) => Variety::Ring,
            GeneratorSpec::DirectProduct(parts) => parts.first().map_or(Variety::Group, |p| p.variety()),
        }
    }
}

pub fn group_signature() -> Arc<Signature> {
    Arc::new(Signature::jt(&[("mul", 2), ("inv", 1), ("e", 0)], "e", "mul"))
}

/// Also the signature of pointed magmas.
pub fn monoid_signature() -> Arc<Signature> {
    Arc::new(Signature::jt(&[("mul", 2), ("e", 0)], "e", "mul"))
}

pub fn loop_signature() -> Arc<Signature> {
    Arc::new(Signature::jt(
        &[("mul", 2), ("ldiv", 2), ("rdiv", 2), ("e", 0)],
        "e",
        "mul",
    ))
}

pub fn ring_signature() -> Arc<Signature> {
    Arc::new(Signature::jt(
        &[("add", 2), ("mul", 2), ("neg", 1), ("zero", 0)],
        "zero",
        "add",
    ))
}

fn unsupported(msg: impl Into<String>) -> CatalogError {
    CatalogError::Unsupported(msg.into())
}

/// Group from a multiplication table whose identity is element 0.
fn group_from_mul(name: String, n: usize, mul: Vec<usize>) -> Result<FiniteAlgebra, CatalogError> {
    let inv = (0..n)
        .map(|a| {
            (0..n)
                .find(|&b| mul[a * n + b] == 0)
                .ok_or_else(|| unsupported(format!("{name}: {a} has no inverse")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FiniteAlgebra::from_named(
        name,
        group_signature(),
        n,
        vec![("mul", mul), ("inv", inv), ("e", vec![0])],
    )?)
}

fn cyclic_table(n: usize) -> Vec<usize> {
    (0..n * n).map(|i| (i / n + i % n) % n).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn loop_from_mul(name: String, n: usize, mul: Vec<usize>) -> Result<FiniteAlgebra, CatalogError> {
    let mut ldiv = vec![0; n * n];
    let mut rdiv = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let c = mul[a * n + b];
            ldiv[a * n + c] = b;
            rdiv[c * n + b] = a;
        }
    }
    Ok(FiniteAlgebra::from_named(
        name,
        loop_signature(),
        n,
        vec![("mul", mul), ("ldiv", ldiv), ("rdiv", rdiv), ("e", vec![0])],
    )?)
}

/// Backtracking search for a normalized Latin square (row and column 0 are
/// the identity), trying symbols in a seeded order. Returns the first
/// nonassociative loop found, with a failing triple.
pub fn search_nonassociative_loop(n: usize, seed: u64) -> Result<(FiniteAlgebra, [usize; 3]), CatalogError> {
    if n < 5 {
        return Err(unsupported("every loop of order below 5 is a group"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cells = vec![usize::MAX; n * n];
    for i in 0..n {
        cells[i] = i;
        cells[i * n] = i;
    }
    let order: Vec<Vec<usize>> = (0..n * n)
        .map(|_| {
            let mut symbols: Vec<usize> = (0..n).collect();
            symbols.shuffle(&mut rng);
            symbols
        })
        .collect();

    fn fill(cell: usize, n: usize, cells: &mut [usize], order: &[Vec<usize>], found: &mut Option<Vec<usize>>) {
        if found.is_some() {
            return;
        }
        if cell == n * n {
            let m = |a: usize, b: usize| cells[a * n + b];
            let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| m(m(a, b), c) == m(a, m(b, c)))));
            if !assoc {
                *found = Some(cells.to_vec());
            }
            return;
        }
        let (r, c) = (cell / n, cell % n);
        if r == 0 || c == 0 {
            return fill(cell + 1, n, cells, order, found);
        }
        for &s in &order[cell] {
            let clash = (0..n).any(|k| cells[r * n + k] == s || cells[k * n + c] == s);
            if !clash {
                cells[cell] = s;
                fill(cell + 1, n, cells, order, found);
                cells[cell] = usize::MAX;
                if found.is_some() {
                    return;
                }
            }
        }
    }

    let mut found = None;
    fill(0, n, &mut cells, &order, &mut found);
    let mul = found.ok_or_else(|| unsupported(format!("no nonassociative loop of order {n}")))?;
    let alg = loop_from_mul(format!("L{n}"), n, mul)?;
    let witness = laws::associativity_witness(&alg, "mul").expect("search only accepts nonassociative squares");
    Ok((alg, witness))
}

pub fn generate(spec: &GeneratorSpec) -> Result<FiniteAlgebra, CatalogError> {
    let name = spec.name();
    let alg = match spec {
        GeneratorSpec::CyclicGroup(n) => {
            let n = *n;
            if n == 0 || n > MAX_SIZE {
                return Err(unsupported(format!("cyclic group of order {n}")));
            }
            group_from_mul(name, n, cyclic_table(n))?
        }
        GeneratorSpec::Dihedral(n) => {
            let n = *n;
            if n < 1 || 2 * n > MAX_SIZE {
                return Err(unsupported(format!("dihedral group of order {}", 2 * n)));
            }
            // r^i is i, s·r^i is n + i.
            let m = 2 * n;
            let mul = (0..m * m)
                .map(|k| {
                    let (a, b) = (k / m, k % m);
                    let (fa, ia) = (a / n, a % n);
                    let (fb, ib) = (b / n, b % n);
                    match (fa, fb) {
                        (0, 0) => (ia + ib) % n,
                        (0, 1) => n + (ib + n - ia) % n,
                        (1, 0) => n + (ia + ib) % n,
                        _ => (ib + n - ia) % n,
                    }
                })
                .collect();
            group_from_mul(name, m, mul)?
        }
        GeneratorSpec::Symmetric(n) => {
            let n = *n;
            if !(1..=4).contains(&n) {
                return Err(unsupported(format!("symmetric group S{n} (n must be 1..=4)")));
            }
            let perms = permutations(n);
            let k = perms.len();
            let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed under composition");
            let mut mul = Vec::with_capacity(k * k);
            for a in &perms {
                for b in &perms {
                    let composite: Vec<usize> = (0..n).map(|i| a[b[i]]).collect();
                    mul.push(index(&composite));
                }
            }
            group_from_mul(name, k, mul)?
        }
        GeneratorSpec::Quaternion8 => {
            // Index is unit + 4·sign with units 1, i, j, k.
            const UNIT: [[(usize, usize); 4]; 4] = [
                [(0, 0), (1, 0), (2, 0), (3, 0)],
                [(1, 0), (0, 1), (3, 0), (2, 1)],
                [(2, 0), (3, 1), (0, 1), (1, 0)],
                [(3, 0), (2, 0), (1, 1), (0, 1)],
            ];
            let mul = (0..64)
                .map(|k| {
                    let (a, b) = (k / 8, k % 8);
                    let (u, s) = UNIT[a % 4][b % 4];
                    u + 4 * ((s + a / 4 + b / 4) % 2)
                })
                .collect();
            group_from_mul(name, 8, mul)?
        }
        GeneratorSpec::Klein4 => group_from_mul(name, 4, (0..16).map(|k| (k / 4) ^ (k % 4)).collect())?,
        GeneratorSpec::LeftZeroMonoid => {
            let mul = (0..9)
                .map(|k| {
                    let (a, b) = (k / 3, k % 3);
                    if a == 0 {
                        b
                    } else {
                        a
                    }
                })
                .collect();
            FiniteAlgebra::from_named(name, monoid_signature(), 3, vec![("mul", mul), ("e", vec![0])])?
        }
        GeneratorSpec::Semilattice2 => FiniteAlgebra::from_named(
            name,
            monoid_signature(),
            2,
            vec![("mul", vec![0, 1, 1, 1]), ("e", vec![0])],
        )?,
        GeneratorSpec::CyclicMonoid(n) => {
            let n = *n;
            if n == 0 || n > MAX_SIZE {
                return Err(unsupported(format!("cyclic monoid of order {n}")));
            }
            FiniteAlgebra::from_named(
                name,
                monoid_signature(),
                n,
                vec![("mul", cyclic_table(n)), ("e", vec![0])],
            )?
        }
        GeneratorSpec::CyclicLoop(n) => {
            let n = *n;
            if n == 0 || n > MAX_SIZE {
                return Err(unsupported(format!("cyclic loop of order {n}")));
            }
            loop_from_mul(name, n, cyclic_table(n))?
        }
        GeneratorSpec::RandomJtMagma { seed, size } => {
            let n = *size;
            if n == 0 || n > MAX_SIZE {
                return Err(unsupported(format!("magma of size {n}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mul = (0..n * n)
                .map(|k| {
                    let (a, b) = (k / n, k % n);
                    if a == 0 {
                        b
                    } else if b == 0 {
                        a
                    } else {
                        rng.gen_range(0..n)
                    }
                })
                .collect();
            FiniteAlgebra::from_named(name, monoid_signature(), n, vec![("mul", mul), ("e", vec![0])])?
        }
        GeneratorSpec::NonassocLoop5 => search_nonassociative_loop(5, LOOP_SEARCH_SEED)?.0,
        GeneratorSpec::RingZnModmul(n) => {
            let n = *n;
            if n == 0 || n > MAX_SIZE {
                return Err(unsupported(format!("ring Z{n}")));
            }
            FiniteAlgebra::from_named(
                name,
                ring_signature(),
                n,
                vec![
                    ("add", cyclic_table(n)),
                    ("mul", (0..n * n).map(|k| (k / n) * (k % n) % n).collect()),
                    ("neg", (0..n).map(|a| (n - a) % n).collect()),
                    ("zero", vec![0]),
                ],
            )?
        }
        GeneratorSpec::RingTrivialMul(orders) => {
            let n: usize = orders.iter().product();
            if orders.is_empty() || orders.contains(&0) || n > MAX_SIZE {
                return Err(unsupported(format!("trivial ring over {orders:?}")));
            }
            // Mixed-radix digits, first factor most significant.
            let digits = |mut v: usize| {
                let mut d = vec![0; orders.len()];
                for (slot, &m) in d.iter_mut().zip(orders).rev() {
                    *slot = v % m;
                    v /= m;
                }
                d
            };
            let undigits = |d: &[usize]| d.iter().zip(orders).fold(0, |acc, (&x, &m)| acc * m + x);
            let add = (0..n * n)
                .map(|k| {
                    let (a, b) = (digits(k / n), digits(k % n));
                    let s: Vec<usize> = a.iter().zip(&b).zip(orders).map(|((x, y), m)| (x + y) % m).collect();
                    undigits(&s)
                })
                .collect();
            let neg = (0..n)
                .map(|v| {
                    let s: Vec<usize> = digits(v).iter().zip(orders).map(|(x, m)| (m - x) % m).collect();
                    undigits(&s)
                })
                .collect();
            FiniteAlgebra::from_named(
                name,
                ring_signature(),
                n,
                vec![("add", add), ("mul", vec![0; n * n]), ("neg", neg), ("zero", vec![0])],
            )?
        }
        GeneratorSpec::DirectProduct(parts) => {
            if parts.is_empty() {
                return Err(unsupported("empty direct product"));
            }
            let factors = parts
                .iter()
                .map(|p| generate(p).map(Arc::new))
                .collect::<Result<Vec<_>, _>>()?;
            let size: usize = factors.iter().map(|f| f.size()).product();
            if size > MAX_SIZE {
                return Err(unsupported(format!("direct product of size {size}")));
            }
            let pw = product_many(&factors)?;
            (*pw.product).clone().renamed(name)
        }
    };
    laws::check_variety(&alg, spec.variety())?;
    Ok(alg)
}

/// Every spec the test battery draws on.
pub fn standard_catalog() -> Vec<GeneratorSpec> {
    use GeneratorSpec::*;
    vec![
        CyclicGroup(1),
        CyclicGroup(2),
        CyclicGroup(3),
        CyclicGroup(4),
        CyclicGroup(5),
        CyclicGroup(6),
        CyclicGroup(7),
        CyclicGroup(8),
        Klein4,
        Symmetric(3),
        Dihedral(4),
        Quaternion8,
        Symmetric(4),
        LeftZeroMonoid,
        Semilattice2,
        CyclicMonoid(3),
        RandomJtMagma { seed: 7, size: 3 },
        RandomJtMagma { seed: 11, size: 4 },
        NonassocLoop5,
        CyclicLoop(2),
        CyclicLoop(3),
        RingZnModmul(4),
        RingZnModmul(6),
        RingTrivialMul(vec![2, 2]),
        RingTrivialMul(vec![4]),
        DirectProduct(vec![Symmetric(3), CyclicGroup(2)]),
        DirectProduct(vec![CyclicGroup(2), CyclicGroup(4)]),
    ]
}

/// An isomorphism `a → b` found by backtracking, if one exists. Only meant
/// for small carriers.
pub fn find_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Option<FiniteFunction> {
    if a.size() != b.size() || a.signature() != b.signature() {
        return None;
    }
    let n = a.size();
    let ops: Vec<(usize, usize)> = a
        .signature()
        .operations()
        .iter()
        .enumerate()
        .map(|(i, o)| (i, o.arity))
        .collect();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];

    // Checks every tuple whose arguments are all assigned and involve `x`.
    fn consistent(a: &FiniteAlgebra, b: &FiniteAlgebra, ops: &[(usize, usize)], image: &[usize], x: usize) -> bool {
        let n = a.size();
        for &(op, k) in ops {
            let mut ok = true;
            crate::algebra::for_each_tuple(n, k, |args| {
                if !ok || !(k == 0 || args.contains(&x)) || args.iter().any(|&v| image[v] == usize::MAX) {
                    return;
                }
                let out = a.apply(op, args);
                if image[out] == usize::MAX {
                    return;
                }
                let mapped: Vec<usize> = args.iter().map(|&v| image[v]).collect();
                if b.apply(op, &mapped) != image[out] {
                    ok = false;
                }
            });
            if !ok {
                return false;
            }
        }
        true
    }

    fn go(
        x: usize,
        a: &FiniteAlgebra,
        b: &FiniteAlgebra,
        ops: &[(usize, usize)],
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        let n = a.size();
        if x == n {
            return true;
        }
        for y in 0..n {
            if used[y] {
                continue;
            }
            image[x] = y;
            used[y] = true;
            // Re-check everything touching any assigned element whose value
            // might now be determined.
            if (0..=x).all(|z| consistent(a, b, ops, image, z)) && go(x + 1, a, b, ops, image, used) {
                return true;
            }
            image[x] = usize::MAX;
            used[y] = false;
        }
        false
    }

    if go(0, a, b, &ops, &mut image, &mut used) {
        let f = FiniteFunction::new(n, image).ok()?;
        crate::algebra::check_homomorphism(a, b, &f).ok()?;
        Some(f)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_catalog_entry_satisfies_its_laws() {
        for spec in standard_catalog() {
            let alg = generate(&spec).unwrap_or_else(|e| panic!("{spec:?}: {e}"));
            laws::check_variety(&alg, spec.variety()).unwrap();
            alg.check_unit_law().unwrap();
        }
    }

    #[test]
    fn sizes() {
        let size = |s| generate(&s).unwrap().size();
        assert_eq!(size(GeneratorSpec::Dihedral(4)), 8);
        assert_eq!(size(GeneratorSpec::Symmetric(4)), 24);
        assert_eq!(size(GeneratorSpec::Quaternion8), 8);
        assert_eq!(size(GeneratorSpec::RingTrivialMul(vec![2, 2])), 4);
    }

    #[test]
    fn z4_table() {
        let z4 = generate(&GeneratorSpec::CyclicGroup(4)).unwrap();
        let mul = z4.signature().op_index("mul").unwrap();
        assert_eq!(&z4.table(mul)[4..8], &[1, 2, 3, 0]);
    }

    #[test]
    fn loop_search_is_nonassociative_and_deterministic() {
        let (a, w) = search_nonassociative_loop(5, LOOP_SEARCH_SEED).unwrap();
        let (b, _) = search_nonassociative_loop(5, LOOP_SEARCH_SEED).unwrap();
        assert_eq!(a, b);
        let mul = a.signature().op_index("mul").unwrap();
        let m = |x, y| a.apply(mul, &[x, y]);
        assert_ne!(m(m(w[0], w[1]), w[2]), m(w[0], m(w[1], w[2])));
        assert!(search_nonassociative_loop(4, 1).is_err());
    }

    #[test]
    fn random_magma_is_seed_deterministic() {
        let spec = GeneratorSpec::RandomJtMagma { seed: 3, size: 5 };
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
    }

    #[test]
    fn unsupported_parameters() {
        assert!(generate(&GeneratorSpec::Symmetric(5)).is_err());
        assert!(generate(&GeneratorSpec::CyclicGroup(0)).is_err());
    }

    #[test]
    fn z2_times_z3_is_z6() {
        let p = generate(&GeneratorSpec::DirectProduct(vec![
            GeneratorSpec::CyclicGroup(2),
            GeneratorSpec::CyclicGroup(3),
        ]))
        .unwrap();
        let z6 = generate(&GeneratorSpec::CyclicGroup(6)).unwrap();
        assert!(find_isomorphism(&p, &z6).is_some());
        let s3 = generate(&GeneratorSpec::Symmetric(3)).unwrap();
        assert!(find_isomorphism(&s3, &z6).is_none());
    }
}
