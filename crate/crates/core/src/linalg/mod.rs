//! Exact dense linear algebra over `Q` and `F_p`, and integer Smith normal form.

mod field;
mod matrix;
mod smith;
mod system;

pub use field::{Field, Scalar};
pub use matrix::{Matrix, Rref};
pub use smith::{verify_smith, GroupInvariants, IntMatrix, SmithForm};
pub use system::{BlockSystem, Term};

pub(crate) use smith::invariants_from_diagonal;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("no solution: right-hand side is not in the column span")]
    NoSolution,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{0} is not a prime in [2, 65536)")]
    InvalidField(u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
}
