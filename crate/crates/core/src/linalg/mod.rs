//! Exact sparse linear algebra over ℚ and homology of filtered complexes.

mod complex;
mod scalar;
mod sparse;

pub use complex::{chain, chain_sum, FilteredChainComplex, FilteredDegree, FiltrationKind, HomologyTable};
pub use scalar::Rational;
pub use sparse::{SparseMatrix, SparseVec};
