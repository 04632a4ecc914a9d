//! Congruence generation, quotients, kernels and a brute-force oracle.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{
    for_each_tuple, subalgebra, AlgebraError, FiniteAlgebra, FiniteFunction, Homomorphism, Signature,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CongruenceError {
    #[error("seed ({a}, {b}) outside carrier of size {size}")]
    SeedOutOfRange { a: usize, b: usize, size: usize },
    #[error("partition is not compatible with `{op}`: arguments {args:?} with position {position} replaced by {replacement}")]
    NotCompatible {
        op: String,
        args: Vec<usize>,
        position: usize,
        replacement: usize,
    },
    #[error("label table has {found} entries for a carrier of size {expected}")]
    LabelShape { expected: usize, found: usize },
    #[error("brute force limited to {limit} elements, got {size}")]
    TooLarge { size: usize, limit: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Anything that can evaluate operations on a finite carrier. Lets the
/// closure run on `X × X` without materializing its tables.
pub trait OperationSource {
    fn signature(&self) -> &Signature;
    fn size(&self) -> usize;
    fn apply(&self, op: usize, args: &[usize]) -> usize;
}

impl OperationSource for FiniteAlgebra {
    fn signature(&self) -> &Signature {
        FiniteAlgebra::signature(self)
    }

    fn size(&self) -> usize {
        FiniteAlgebra::size(self)
    }

    fn apply(&self, op: usize, args: &[usize]) -> usize {
        FiniteAlgebra::apply(self, op, args)
    }
}

/// `X × X` evaluated componentwise on demand, using the row-major encoding.
pub struct SquareView<'a> {
    base: &'a FiniteAlgebra,
    scratch: std::cell::RefCell<(Vec<usize>, Vec<usize>)>,
}

impl<'a> SquareView<'a> {
    pub fn new(base: &'a FiniteAlgebra) -> Self {
        Self {
            base,
            scratch: Default::default(),
        }
    }
}

impl OperationSource for SquareView<'_> {
    fn signature(&self) -> &Signature {
        self.base.signature()
    }

    fn size(&self) -> usize {
        self.base.size() * self.base.size()
    }

    #[inline]
    fn apply(&self, op: usize, args: &[usize]) -> usize {
        let n = self.base.size();
        let table = self.base.table(op);
        if let [a, b] = *args {
            let l = table[(a / n) * n + b / n];
            let r = table[(a % n) * n + b % n];
            return l * n + r;
        }
        let mut scratch = self.scratch.borrow_mut();
        let (left, right) = &mut *scratch;
        left.clear();
        right.clear();
        for &a in args {
            left.push(a / n);
            right.push(a % n);
        }
        self.base.apply(op, left) * n + self.base.apply(op, right)
    }
}

/// Union-find over `{0..n}` with path halving and union by rank.
#[derive(Clone, Debug)]
pub struct Partition {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl Partition {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn size(&self) -> usize {
        self.parent.len()
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges two classes; false if they were already one.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }

    /// Class labels numbered by least representative.
    pub fn labels(&mut self) -> Vec<usize> {
        let roots: Vec<usize> = (0..self.size()).map(|x| self.find(x)).collect();
        canonical_labels(&roots)
    }
}

/// Renumbers arbitrary labels so that classes are ordered by their least
/// element.
pub fn canonical_labels(raw: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    raw.iter()
        .map(|r| {
            let next = map.len();
            *map.entry(*r).or_insert(next)
        })
        .collect()
}

/// Least congruence containing the seeds.
///
/// Every pair that actually merges two classes goes on a worklist. Popping
/// `(a, b)` merges `f(…a…)` with `f(…b…)` for each operation, position and
/// filling of the other slots. The merged pairs generate the partition, so
/// once each has been pushed through every basic translation the partition
/// is compatible.
pub fn close<A: OperationSource + ?Sized>(alg: &A, seeds: &[(usize, usize)]) -> Partition {
    let n = alg.size();
    let mut p = Partition::new(n);
    let mut work: Vec<(usize, usize)> = Vec::new();
    for &(a, b) in seeds {
        if p.union(a, b) {
            work.push((a, b));
        }
    }
    let ops: Vec<(usize, usize)> = alg
        .signature()
        .operations()
        .iter()
        .enumerate()
        .filter(|(_, o)| o.arity > 0)
        .map(|(i, o)| (i, o.arity))
        .collect();
    let mut args = Vec::new();
    while let Some((a, b)) = work.pop() {
        for &(op, k) in &ops {
            if k == 1 {
                let (fa, fb) = (alg.apply(op, &[a]), alg.apply(op, &[b]));
                if p.union(fa, fb) {
                    work.push((fa, fb));
                }
                continue;
            }
            if k == 2 {
                for c in 0..n {
                    let (fa, fb) = (alg.apply(op, &[a, c]), alg.apply(op, &[b, c]));
                    if p.union(fa, fb) {
                        work.push((fa, fb));
                    }
                    let (fa, fb) = (alg.apply(op, &[c, a]), alg.apply(op, &[c, b]));
                    if p.union(fa, fb) {
                        work.push((fa, fb));
                    }
                }
                continue;
            }
            for pos in 0..k {
                for_each_tuple(n, k - 1, |rest| {
                    args.clear();
                    args.extend_from_slice(&rest[..pos]);
                    args.push(a);
                    args.extend_from_slice(&rest[pos..]);
                    let fa = alg.apply(op, &args);
                    args[pos] = b;
                    let fb = alg.apply(op, &args);
                    if p.union(fa, fb) {
                        work.push((fa, fb));
                    }
                });
            }
        }
    }
    p
}

/// First failure of compatibility, found by swapping one argument for its
/// class representative. That suffices: if every single swap stays in the
/// class, any componentwise-related tuples are linked by a chain of swaps.
pub fn compatibility_violation<A: OperationSource + ?Sized>(
    alg: &A,
    labels: &[usize],
) -> Option<(String, Vec<usize>, usize, usize)> {
    let n = alg.size();
    let mut rep = vec![usize::MAX; n];
    for (x, &l) in labels.iter().enumerate() {
        if rep[l] == usize::MAX {
            rep[l] = x;
        }
    }
    let mut swapped = Vec::new();
    for (op_index, op) in alg.signature().operations().iter().enumerate() {
        let mut found = None;
        for_each_tuple(n, op.arity, |args| {
            if found.is_some() {
                return;
            }
            let base = labels[alg.apply(op_index, args)];
            for pos in 0..args.len() {
                let r = rep[labels[args[pos]]];
                if r == args[pos] {
                    continue;
                }
                swapped.clear();
                swapped.extend_from_slice(args);
                swapped[pos] = r;
                if labels[alg.apply(op_index, &swapped)] != base {
                    found = Some((op.name.clone(), args.to_vec(), pos, r));
                    return;
                }
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// An operation-compatible partition of an algebra.
#[derive(Clone, Debug)]
pub struct Congruence {
    algebra: Arc<FiniteAlgebra>,
    labels: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl PartialEq for Congruence {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

impl Eq for Congruence {}

impl Congruence {
    /// Validates compatibility before accepting the labels.
    pub fn from_labels(algebra: Arc<FiniteAlgebra>, labels: &[usize]) -> Result<Self, CongruenceError> {
        if labels.len() != algebra.size() {
            return Err(CongruenceError::LabelShape {
                expected: algebra.size(),
                found: labels.len(),
            });
        }
        let labels = canonical_labels(labels);
        if let Some((op, args, position, replacement)) = compatibility_violation(&*algebra, &labels) {
            return Err(CongruenceError::NotCompatible {
                op,
                args,
                position,
                replacement,
            });
        }
        Ok(Self::trusted(algebra, labels))
    }

    fn trusted(algebra: Arc<FiniteAlgebra>, labels: Vec<usize>) -> Self {
        let count = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut classes = vec![Vec::new(); count];
        for (x, &l) in labels.iter().enumerate() {
            classes[l].push(x);
        }
        Self {
            algebra,
            labels,
            classes,
        }
    }

    pub fn discrete(algebra: Arc<FiniteAlgebra>) -> Self {
        let labels = (0..algebra.size()).collect();
        Self::trusted(algebra, labels)
    }

    pub fn total(algebra: Arc<FiniteAlgebra>) -> Self {
        let labels = vec![0; algebra.size()];
        Self::trusted(algebra, labels)
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.algebra
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }

    /// Every class of `self` sits inside a class of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        self.classes.iter().all(|c| c.iter().all(|&x| other.related(c[0], x)))
    }
}

fn check_seeds(size: usize, seeds: &[(usize, usize)]) -> Result<(), CongruenceError> {
    match seeds.iter().find(|&&(a, b)| a >= size || b >= size) {
        Some(&(a, b)) => Err(CongruenceError::SeedOutOfRange { a, b, size }),
        None => Ok(()),
    }
}

pub fn generate_congruence(
    algebra: &Arc<FiniteAlgebra>,
    seeds: &[(usize, usize)],
) -> Result<Congruence, CongruenceError> {
    check_seeds(algebra.size(), seeds)?;
    let labels = close(&**algebra, seeds).labels();
    Ok(Congruence::trusted(algebra.clone(), labels))
}

/// Tables of the quotient by a label map, computed on class representatives.
/// Returns the quotient and one representative per class.
pub fn quotient_tables<A: OperationSource + ?Sized>(
    alg: &A,
    labels: &[usize],
    name: impl Into<String>,
    signature: Arc<Signature>,
) -> Result<(FiniteAlgebra, Vec<usize>), AlgebraError> {
    let count = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut reps = vec![usize::MAX; count];
    for (x, &l) in labels.iter().enumerate() {
        if reps[l] == usize::MAX {
            reps[l] = x;
        }
    }
    let mut tables = Vec::with_capacity(signature.len());
    let mut args = Vec::new();
    for (op_index, op) in alg.signature().operations().iter().enumerate() {
        let mut table = Vec::with_capacity(count.pow(op.arity as u32));
        for_each_tuple(count, op.arity, |classes| {
            args.clear();
            args.extend(classes.iter().map(|&c| reps[c]));
            table.push(labels[alg.apply(op_index, &args)]);
        });
        tables.push(table);
    }
    Ok((FiniteAlgebra::new(name, signature, count, tables)?, reps))
}

pub fn quotient(
    algebra: &Arc<FiniteAlgebra>,
    congruence: &Congruence,
) -> Result<(Arc<FiniteAlgebra>, Homomorphism), CongruenceError> {
    if let Some((op, args, position, replacement)) = compatibility_violation(&**algebra, congruence.labels()) {
        return Err(CongruenceError::NotCompatible {
            op,
            args,
            position,
            replacement,
        });
    }
    let (q, _) = quotient_tables(
        &**algebra,
        congruence.labels(),
        format!("{}/~", algebra.name()),
        algebra.signature().clone(),
    )?;
    let q = Arc::new(q);
    let proj = FiniteFunction::new(q.size(), congruence.labels().to_vec())?;
    let proj = Homomorphism::new_unchecked(algebra.clone(), q.clone(), proj);
    Ok((q, proj))
}

/// The kernel `{e : f(e) = 0}` with its inclusion.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub elements: Vec<usize>,
    pub algebra: Arc<FiniteAlgebra>,
    pub inclusion: Homomorphism,
}

impl Kernel {
    /// Position of a source element inside the kernel.
    pub fn position(&self, e: usize) -> Option<usize> {
        self.elements.binary_search(&e).ok()
    }
}

pub fn kernel(f: &Homomorphism) -> Result<Kernel, CongruenceError> {
    let target = f.target();
    let zero = target
        .zero()
        .ok_or_else(|| AlgebraError::NotPointed(target.name().to_string()))?;
    if !f.source().is_pointed() {
        return Err(AlgebraError::NotPointed(f.source().name().to_string()).into());
    }
    let elements: Vec<usize> = (0..f.source().size()).filter(|&e| f.apply(e) == zero).collect();
    let (algebra, inclusion) = subalgebra(f.source(), &elements, format!("ker({})", f.source().name()))?;
    Ok(Kernel {
        elements,
        algebra,
        inclusion,
    })
}

/// Largest carrier the oracle accepts (Bell(7) = 877 partitions).
pub const BRUTE_FORCE_LIMIT: usize = 7;

/// Enumerates every set partition as a restricted growth string.
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for l in 0..=max + 1 {
            prefix.push(l);
            go(prefix, max.max(l), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut prefix = vec![0];
    go(&mut prefix, 0, n, &mut out);
    out
}

/// The least congruence containing the seeds, by scanning all partitions.
/// Independent of [`close`]; used as a test oracle.
pub fn brute_force_least_congruence(
    algebra: &Arc<FiniteAlgebra>,
    seeds: &[(usize, usize)],
) -> Result<Congruence, CongruenceError> {
    let n = algebra.size();
    if n > BRUTE_FORCE_LIMIT {
        return Err(CongruenceError::TooLarge {
            size: n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    check_seeds(n, seeds)?;
    let candidates: Vec<Congruence> = all_partitions(n)
        .into_iter()
        .filter(|l| seeds.iter().all(|&(a, b)| l[a] == l[b]))
        .filter(|l| is_compatible_exhaustive(algebra, l))
        .map(|l| Congruence::trusted(algebra.clone(), l))
        .collect();
    let least = candidates
        .iter()
        .find(|c| candidates.iter().all(|d| c.refines(d)))
        .expect("the total partition always qualifies and congruences form a lattice");
    Ok(least.clone())
}

/// Direct definition: related tuples have related images, every pair tried.
fn is_compatible_exhaustive(algebra: &FiniteAlgebra, labels: &[usize]) -> bool {
    let n = algebra.size();
    for (op_index, op) in algebra.signature().operations().iter().enumerate() {
        let table = algebra.table(op_index);
        let total = n.pow(op.arity as u32);
        let digits = |mut i: usize| {
            let mut d = vec![0; op.arity];
            for slot in d.iter_mut().rev() {
                *slot = i % n;
                i /= n;
            }
            d
        };
        for i in 0..total {
            let a = digits(i);
            for j in i + 1..total {
                let b = digits(j);
                if a.iter().zip(&b).all(|(&x, &y)| labels[x] == labels[y]) && labels[table[i]] != labels[table[j]] {
                    return false;
                }
            }
        }
    }
    true
}
