//! Support τ-tilting theory for bound quiver algebras and their triangular
//! matrix algebras: algebra construction, module computations, exhaustive
//! mutation-graph exploration, and rule-based finiteness classification.

pub mod algebra;
pub mod classify;
pub mod cli;
pub mod error;
pub mod field;
pub mod linalg;
pub mod quiver;
pub mod repmod;
pub mod tautilt;

pub use error::{Error, Result};
