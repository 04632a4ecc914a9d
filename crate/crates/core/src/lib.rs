//! Finite universal algebra engine: reflections onto abelian objects,
//! the tangent structures they induce, and differential bundles.

pub mod algebra;
pub mod bundles;
pub mod catalog;
pub mod congruence;
pub mod reflect;
pub mod report;
pub mod suite;
pub mod tangent;

pub use algebra::{AlgebraError, FiniteAlgebra, FiniteFunction, Homomorphism, Signature};
pub use bundles::{
    build_diff_bundle, build_diff_object, diff_bundle_to_l_algebra, diff_object_to_l_algebra, roundtrip_check,
    verify_diff_bundle, BundleError, DifferentialBundle, DifferentialObject, LAlgebra,
};
pub use catalog::{generate, CatalogError, GeneratorSpec};
pub use congruence::{generate_congruence, Congruence, CongruenceError};
pub use reflect::{AssignmentEngine, Mode, ReflectError, ReflectionResult};
pub use report::{AxiomEntry, AxiomReport, Status};
pub use suite::{run_suite, SuiteConfig, SuiteReport};
pub use tangent::{build_tangent, verify_tangent, Budget, Context, TangentError, TangentReport, TangentSpace};
