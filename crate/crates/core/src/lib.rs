//! Exact computation of Khovanov homology, Lee homology and the s-invariant
//! of oriented link diagrams, together with the diagram-combinatorial bounds
//! and positivity certificates built on them.

pub mod bounds;
pub mod braid;
pub mod classify;
pub mod diagram;
pub mod error;
pub mod input;
pub mod khovanov;
pub mod lee;
pub mod linalg;
pub mod poly;

pub use braid::{BandWord, BraidWord};
pub use diagram::{Diagram, DiagramStats, Sign};
pub use error::{Error, Result};
