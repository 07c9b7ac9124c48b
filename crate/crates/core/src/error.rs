use thiserror::Error;

/// Errors produced by the library.
///
/// Each variant maps to one CLI exit code through [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid chain pair: {0}")]
    InvalidPair(String),

    #[error("invalid transformation: {0}")]
    InvalidTransformation(String),

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("transformations belong to different chain pairs")]
    PairMismatch,

    #[error("enumeration would produce {count} elements, above the cap of {cap}")]
    CapExceeded { count: u128, cap: usize },

    #[error("isomorphism search exceeded its budget of {0} nodes")]
    BudgetExceeded(u64),

    #[error("mapping is not a verified isomorphism: {0}")]
    NotAnIsomorphism(String),

    #[error("structural transport violated: {0}")]
    Violation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Exit code used by the command-line tool: 2 for resource limits, 1 for
    /// semantic mismatches, 3 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } | Error::BudgetExceeded(_) => 2,
            Error::NotAnIsomorphism(_) | Error::Violation(_) => 1,
            _ => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
