//! `m`-periodic complexes of modules: shifts, cones, homotopies, cohomology and the
//! covering / unrolling functors between bounded and periodic complexes.

mod bounded;
mod cohomology;
mod cone;
mod maps;
mod periodic;
mod random;

pub use bounded::{resolution_model, unroll, BoundedComplex, Unrolled};
pub use cohomology::{cohomology, cohomology_dims, induced_map, is_quasi_iso, try_cohomology, Cohomology};
pub use cone::{cone, Cone};
pub use maps::{chain_map_space, homotopic, homotopy_classes_dim, random_chain_map, ChainMap, Homotopy};
pub use periodic::{direct_sum_complex, ContentKey, PeriodicComplex};
pub use random::random_complex;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("d^{{i+1}} d^i != 0 at degree {0}")]
    NotAComplex(usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("differential in degree {0} is not a module map: {1}")]
    BadDifferential(usize, String),
    #[error("not a chain map: {0}")]
    NotAChainMap(String),
    #[error("verification failed: {0}")]
    Verification(String),
}
