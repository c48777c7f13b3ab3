use thiserror::Error;

/// Errors shared across the crate. Variant names follow the per-operation
/// error contracts.
#[derive(Debug, Error)]
pub enum Error {
    /// A document failed to parse or violated its schema.
    #[error("schema error: {0}")]
    Schema(String),

    /// Pruning non-essential letters removed every letter: the shift has no
    /// bi-infinite point.
    #[error("empty shift: no letter survives essentiality pruning")]
    EmptyShift,

    #[error("unknown letter {0:?}")]
    UnknownLetter(String),

    /// An exact enumeration would exceed the configured cap.
    #[error("budget exceeded: enumeration needs {needed} items, cap is {cap}")]
    BudgetExceeded { needed: String, cap: u64 },

    /// The shift could not be certified transitive within the search cap;
    /// operations whose correctness needs the gluing constant refuse to run.
    #[error("shift {name:?} not certified transitive within cap {cap}")]
    NotTransitive { name: String, cap: u64 },

    /// Two routes that must agree disagreed. This falsifies the
    /// implementation, not the theory.
    #[error("inconsistency: {0}")]
    Inconsistency(String),

    #[error("graph has no directed cycle")]
    NoCycle,

    #[error("interval [{a}, {b}] plus boundary letters is not covered by the base word")]
    IntervalOutOfRange { a: i64, b: i64 },

    /// A scripted scenario check failed.
    #[error("assertion failure: {0}")]
    AssertionFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
