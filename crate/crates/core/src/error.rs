//! Error type shared across the library.
//!
//! Structural problems (shape mismatches between stored matrices, broken
//! defining equations, invalid characteristics) are reported through
//! [`Error`] so that callers loading untrusted data get a named equation and
//! a degree/level instead of a panic deep inside the linear algebra.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A characteristic that is not a prime number.
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),

    /// Two objects built over different fields were combined.
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    /// A matrix or graded piece has the wrong shape.
    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: String,
        expected: String,
        got: String,
    },

    /// A defining equation of a structure fails.  `law` names the equation
    /// (for example `"d.d = 0"` or `"d_i d_j = d_(j-1) d_i"`), `position`
    /// says at which degree/level (and indices) it fails.
    #[error("invariant {law} fails at {position}")]
    BrokenInvariant { law: String, position: String },

    /// An operation that requires a connected object received one that is
    /// not connected in the required sense.
    #[error("object is not connected: {0}")]
    NotConnected(String),

    /// A degree or level outside the truncation window was requested.
    #[error("degree {degree} outside truncation range 0..={top}")]
    DegreeOutOfRange { degree: usize, top: usize },

    /// A linear solve that was expected to succeed had no solution.
    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),

    /// A lift was requested but none exists (reported, not a bug: lifting
    /// properties are genuine hypotheses on the inputs).
    #[error("no lift exists: {0}")]
    NoLift(String),
}

impl Error {
    pub fn broken(law: impl Into<String>, position: impl Into<String>) -> Self {
        Error::BrokenInvariant {
            law: law.into(),
            position: position.into(),
        }
    }

    pub fn dim(context: impl Into<String>, expected: impl Into<String>, got: impl Into<String>) -> Self {
        Error::DimensionMismatch {
            context: context.into(),
            expected: expected.into(),
            got: got.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
