//! Exact computational homological algebra over `Q` and `GF(p)`:
//! truncated chain complexes, simplicial vector spaces, the
//! normalization/denormalization equivalence between them, the induced
//! coalgebra structures, connected coalgebra constructions (cofree
//! objects, limits/colimits, factorizations), and solvers for lifting
//! properties.
//!
//! Everything is finite-dimensional and truncated at a shared top degree
//! `D`; all arithmetic is exact, so every reported equality of matrices is
//! a theorem about the inputs, not an approximation.

pub mod algebra;
pub mod chain;
pub mod coalg;
pub mod cochain;
pub mod cofree;
pub mod cofreeprod;
pub mod colimit;
pub mod comparison;
pub mod doldkan;
pub mod error;
pub mod field;
pub mod lifting;
pub mod linalg;
pub mod matrix;
pub mod sample;
pub mod simplicial;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use matrix::Matrix;
