//! Exact dense linear algebra and the subspace calculus on graded pieces.

pub mod elimination;
mod matrix;
mod subspace;

pub use matrix::{Echelon, Matrix};
pub use subspace::{QuotientMap, Subspace};
