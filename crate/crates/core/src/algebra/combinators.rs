//! Product combinators on the row-major pair encoding.
//!
//! With flat left-nested indices the associator and the unitors are
//! identity tables. They are kept so every canonical isomorphism has a home.

use super::FiniteFunction;

/// ⟨f, g⟩.
pub fn pairing(f: &FiniteFunction, g: &FiniteFunction) -> FiniteFunction {
    FiniteFunction::pair(f, g)
}

/// τ: (X×Y)×(Z×W) → (X×Z)×(Y×W), swapping the middle factors.
pub fn interchange_tau(x: usize, y: usize, z: usize, w: usize) -> FiniteFunction {
    FiniteFunction::from_fn(x * y * z * w, x * z * y * w, |v| {
        let (left, right) = (v / (z * w), v % (z * w));
        let (a, b) = (left / y, left % y);
        let (c, d) = (right / w, right % w);
        (a * z + c) * (y * w) + (b * w + d)
    })
}

/// σ: X×Y → Y×X.
pub fn symmetry_sigma(x: usize, y: usize) -> FiniteFunction {
    FiniteFunction::from_fn(x * y, y * x, |v| (v % y) * x + v / y)
}

/// α: (X×Y)×Z → X×(Y×Z).
pub fn assoc_alpha(x: usize, y: usize, z: usize) -> FiniteFunction {
    FiniteFunction::identity(x * y * z)
}

/// λ: ∗×X → X.
pub fn left_unit(x: usize) -> FiniteFunction {
    FiniteFunction::identity(x)
}

/// ρ: X×∗ → X.
pub fn right_unit(x: usize) -> FiniteFunction {
    FiniteFunction::identity(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_swaps_middle() {
        let t = interchange_tau(4, 4, 4, 4);
        let enc = |a: usize, b: usize, c: usize, d: usize| (a * 4 + b) * 16 + (c * 4 + d);
        assert_eq!(t.apply(enc(0, 1, 2, 3)), enc(0, 2, 1, 3));
        assert_eq!(t.compose(&t), FiniteFunction::identity(256));
    }

    #[test]
    fn tau_yang_baxter() {
        // On (X×X)×(X×X) nested twice: (τ×τ)∘τ∘(τ×τ) = τ∘(τ×τ)∘τ.
        let n = 2;
        let t = interchange_tau(n, n, n, n);
        let tt = FiniteFunction::product(&t, &t);
        let big = interchange_tau(n * n, n * n, n * n, n * n);
        let lhs = tt.compose(&big).compose(&tt);
        let rhs = big.compose(&tt).compose(&big);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn sigma_involution_and_pairing_identity() {
        let s = symmetry_sigma(3, 5);
        let back = symmetry_sigma(5, 3);
        assert_eq!(back.compose(&s), FiniteFunction::identity(15));
        let p1 = FiniteFunction::from_fn(15, 3, |v| v / 5);
        let p2 = FiniteFunction::from_fn(15, 5, |v| v % 5);
        assert_eq!(pairing(&p1, &p2), FiniteFunction::identity(15));
        assert_eq!(assoc_alpha(2, 3, 4), FiniteFunction::identity(24));
    }
}
