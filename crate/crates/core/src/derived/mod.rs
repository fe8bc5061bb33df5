//! Hereditary algebras: Hom dimensions in the periodic derived category, the
//! decomposition into cohomology stalks, and orthogonal sets over type A.

mod hom;
mod typea;

pub use hom::{decompose_check, hom_dm_dim, hom_dm_dim_homotopy};
pub use typea::{indecomposables_type_a, orthogonal_sets, Interval, OrthogonalSet, Summand, DEFAULT_SEARCH_LIMIT};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DerivedError {
    #[error("the Hom formula needs period at least 2")]
    PeriodOne,
    #[error("algebra is not hereditary")]
    NotHereditary,
    #[error("quiver is not of type A: {0}")]
    NotTypeA(String),
    #[error("search over {objects} objects exceeds the limit {limit}")]
    SearchTooLarge { objects: usize, limit: usize },
}
