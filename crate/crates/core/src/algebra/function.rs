use serde::Serialize;

use super::AlgebraError;

/// A total map {0..domain} -> {0..codomain} stored as a value table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteFunction {
    codomain: usize,
    values: Vec<usize>,
}

impl FiniteFunction {
    pub fn new(codomain: usize, values: Vec<usize>) -> Result<Self, AlgebraError> {
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, &v)| v >= codomain) {
            return Err(AlgebraError::FunctionRange { index, value, codomain });
        }
        Ok(Self { codomain, values })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            codomain: n,
            values: (0..n).collect(),
        }
    }

    pub fn constant(domain: usize, codomain: usize, value: usize) -> Self {
        assert!(value < codomain, "constant value out of range");
        Self {
            codomain,
            values: vec![value; domain],
        }
    }

    pub fn from_fn(domain: usize, codomain: usize, f: impl Fn(usize) -> usize) -> Self {
        let values: Vec<usize> = (0..domain).map(f).collect();
        debug_assert!(values.iter().all(|&v| v < codomain));
        Self { codomain, values }
    }

    pub fn domain(&self) -> usize {
        self.values.len()
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn into_values(self) -> Vec<usize> {
        self.values
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.values[x]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &FiniteFunction) -> FiniteFunction {
        assert_eq!(inner.codomain, self.domain(), "composition size mismatch");
        Self {
            codomain: self.codomain,
            values: inner.values.iter().map(|&v| self.values[v]).collect(),
        }
    }

    /// ⟨f, g⟩ into the row-major product of the codomains.
    pub fn pair(f: &FiniteFunction, g: &FiniteFunction) -> FiniteFunction {
        assert_eq!(f.domain(), g.domain(), "pairing needs a common domain");
        Self {
            codomain: f.codomain * g.codomain,
            values: f
                .values
                .iter()
                .zip(&g.values)
                .map(|(&a, &b)| a * g.codomain + b)
                .collect(),
        }
    }

    /// f × g on row-major products.
    pub fn product(f: &FiniteFunction, g: &FiniteFunction) -> FiniteFunction {
        let (gd, gc) = (g.domain(), g.codomain);
        let mut values = Vec::with_capacity(f.domain() * gd);
        for &a in &f.values {
            for &b in &g.values {
                values.push(a * gc + b);
            }
        }
        Self {
            codomain: f.codomain * gc,
            values,
        }
    }

    pub fn is_injective(&self) -> bool {
        self.first_collision().is_none()
    }

    /// Two distinct inputs with equal images, if any.
    pub fn first_collision(&self) -> Option<(usize, usize)> {
        let mut seen = vec![usize::MAX; self.codomain];
        for (x, &v) in self.values.iter().enumerate() {
            if seen[v] != usize::MAX {
                return Some((seen[v], x));
            }
            seen[v] = x;
        }
        None
    }

    pub fn is_surjective(&self) -> bool {
        self.first_missed().is_none()
    }

    pub fn first_missed(&self) -> Option<usize> {
        let mut hit = vec![false; self.codomain];
        for &v in &self.values {
            hit[v] = true;
        }
        hit.iter().position(|h| !h)
    }

    pub fn is_bijective(&self) -> bool {
        self.domain() == self.codomain && self.is_injective()
    }

    pub fn inverse(&self) -> Option<FiniteFunction> {
        if !self.is_bijective() {
            return None;
        }
        let mut values = vec![0; self.codomain];
        for (x, &v) in self.values.iter().enumerate() {
            values[v] = x;
        }
        Some(Self {
            codomain: self.domain(),
            values,
        })
    }

    /// First input where two functions with the same shape disagree.
    pub fn first_difference(&self, other: &FiniteFunction) -> Option<usize> {
        assert_eq!(
            self.domain(),
            other.domain(),
            "comparing functions of different domains"
        );
        self.values.iter().zip(&other.values).position(|(a, b)| a != b)
    }
}

/// The set pullback {(a, b) : f(a) = g(b)} in lexicographic order.
#[derive(Clone, Debug)]
pub struct SetPullback {
    pub pairs: Vec<(usize, usize)>,
    pub left: FiniteFunction,
    pub right: FiniteFunction,
    right_size: usize,
    lookup: Vec<usize>,
}

impl SetPullback {
    pub fn new(f: &FiniteFunction, g: &FiniteFunction) -> Self {
        assert_eq!(f.codomain(), g.codomain(), "pullback needs a common codomain");
        let mut fibres: Vec<Vec<usize>> = vec![Vec::new(); g.codomain()];
        for (b, &c) in g.values().iter().enumerate() {
            fibres[c].push(b);
        }
        let mut pairs = Vec::new();
        for (a, &c) in f.values().iter().enumerate() {
            for &b in &fibres[c] {
                pairs.push((a, b));
            }
        }
        let left = FiniteFunction::from_fn(pairs.len(), f.domain(), |i| pairs[i].0);
        let right = FiniteFunction::from_fn(pairs.len(), g.domain(), |i| pairs[i].1);
        let right_size = g.domain();
        let mut lookup = vec![usize::MAX; f.domain() * right_size];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            lookup[a * right_size + b] = i;
        }
        Self {
            pairs,
            left,
            right,
            right_size,
            lookup,
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn index_of(&self, a: usize, b: usize) -> Option<usize> {
        match self.lookup.get(a * self.right_size + b) {
            Some(&i) if i != usize::MAX => Some(i),
            _ => None,
        }
    }
}

/// Triples (a, b, c) with q(a) = q(b) = q(c), lexicographic.
pub fn fibre_triples(q: &FiniteFunction) -> Vec<(usize, usize, usize)> {
    let mut fibres: Vec<Vec<usize>> = vec![Vec::new(); q.codomain()];
    for (e, &x) in q.values().iter().enumerate() {
        fibres[x].push(e);
    }
    let mut out = Vec::new();
    for a in 0..q.domain() {
        let fibre = &fibres[q.apply(a)];
        for &b in fibre {
            for &c in fibre {
                out.push((a, b, c));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_inverse() {
        let f = FiniteFunction::new(3, vec![2, 0, 1]).unwrap();
        let inv = f.inverse().unwrap();
        assert_eq!(f.compose(&inv), FiniteFunction::identity(3));
        assert_eq!(inv.compose(&f), FiniteFunction::identity(3));
        assert!(FiniteFunction::new(2, vec![0, 2]).is_err());
    }

    #[test]
    fn pair_projections_recover_components() {
        let f = FiniteFunction::new(3, vec![2, 0, 1, 1]).unwrap();
        let g = FiniteFunction::new(2, vec![1, 1, 0, 1]).unwrap();
        let p = FiniteFunction::pair(&f, &g);
        for x in 0..4 {
            assert_eq!(p.apply(x) / 2, f.apply(x));
            assert_eq!(p.apply(x) % 2, g.apply(x));
        }
    }

    #[test]
    fn pullback_of_projection_has_expected_size() {
        // π1: X×Y → X with |X| = 3, |Y| = 2 pulled back along itself gives X×Y×Y.
        let pi1 = FiniteFunction::from_fn(6, 3, |i| i / 2);
        let pb = SetPullback::new(&pi1, &pi1);
        assert_eq!(pb.len(), 12);
        let id = FiniteFunction::identity(3);
        let graph = SetPullback::new(&pi1, &id);
        assert_eq!(graph.len(), 6);
        let c1 = FiniteFunction::constant(3, 2, 1);
        let c2 = FiniteFunction::constant(4, 2, 1);
        assert_eq!(SetPullback::new(&c1, &c2).len(), 12);
    }
}
