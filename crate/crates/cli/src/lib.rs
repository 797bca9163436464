//! Library half of the command-line front end: the canonical document
//! format ([`schema`]) and the command implementations ([`commands`]).
//!
//! Everything here is deterministic: the same inputs (and the same seed,
//! for randomized suites) produce byte-identical reports.

pub mod commands;
pub mod schema;

/// Anything that should stop a command before it produces a verdict:
/// malformed documents, broken invariants in loaded data, unusable
/// flags, I/O problems.  These all map to the usage/load exit status;
/// failed assertions inside a successfully-run command are reported in
/// the output instead, with their own exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// The document or flag text does not match the schema.
    #[error("{0}")]
    Schema(String),

    /// A loaded object fails a structural invariant, or inputs are
    /// incompatible with the requested operation.
    #[error(transparent)]
    Core(#[from] homalg::error::Error),

    /// Reading an input or writing a report failed.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;
