//! Inputs shared by the benchmarks.

use std::sync::Arc;

use tanalg::{generate, FiniteAlgebra, GeneratorSpec};

pub fn algebra(spec: GeneratorSpec) -> Arc<FiniteAlgebra> {
    Arc::new(generate(&spec).expect("catalog spec generates"))
}

/// Groups of increasing size for the reflection kernels.
pub fn groups() -> Vec<GeneratorSpec> {
    vec![
        GeneratorSpec::CyclicGroup(4),
        GeneratorSpec::Symmetric(3),
        GeneratorSpec::Quaternion8,
        GeneratorSpec::DirectProduct(vec![GeneratorSpec::Symmetric(3), GeneratorSpec::CyclicGroup(2)]),
        GeneratorSpec::Symmetric(4),
    ]
}
