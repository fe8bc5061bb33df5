//! Bound quiver algebras with monomial relations and their finite-dimensional modules.

mod algebra;
mod homological;
mod module;
mod random;

pub use algebra::{Arrow, Path, Quiver, QuiverAlgebra};
pub use homological::{
    euler_form, ext1_dim, hom_dim, hom_space, projective_cover, projective_resolution, ProjectiveCover,
    ProjectiveResolution,
};
pub use module::{
    composition_factors, direct_sum, image, kernel, quotient_module, section_of_rref, simple_submodule, submodule,
    summand_inclusion, summand_projection, ModuleMap, Representation,
};
pub use random::{random_representation, random_with_dims};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuiverError {
    #[error("quiver has a directed cycle")]
    CyclicQuiver,
    #[error("inadmissible relation: {0}")]
    InadmissibleRelation(String),
    #[error("arrow label {0} used twice")]
    DuplicateLabel(String),
    #[error("arrow {0} has an endpoint outside the vertex range")]
    BadVertex(String),
    #[error("unknown arrow label {0}")]
    UnknownArrow(String),
    #[error("relation {0} does not vanish on the representation")]
    RelationViolated(String),
    #[error("square at arrow {0} does not commute")]
    NotAModuleMap(String),
    #[error("subspace is not stable under arrow {0}")]
    NotASubmodule(String),
    #[error("algebra is not hereditary")]
    NotHereditary,
    #[error("shape mismatch: {0}")]
    Shape(String),
}
