//! Exact computations with periodic complexes over bound quiver algebras and the
//! Grothendieck groups of their periodic derived categories.

pub mod check;
pub mod cli;
pub mod complex;
pub mod derived;
pub mod grothendieck;
pub mod io;
pub mod linalg;
pub mod quiver;
