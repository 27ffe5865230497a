use std::io;
use thiserror::Error;

/// Everything that can go wrong outside of programmer error. Internal
/// algebraic preconditions (mismatched label counts, wrong poly caps)
/// are asserts, not errors: they cannot be triggered by input files.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input text. `line` is 1-based.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Structurally valid input that violates a semantic requirement
    /// (asymmetric matrix, vertex out of range, non-0/1 entry, ...).
    #[error("{0}")]
    Invalid(String),

    /// Problem size above a configured safety cap.
    #[error("{what} is {requested}, above the cap of {limit}")]
    CapExceeded {
        what: String,
        limit: u64,
        requested: u64,
    },

    /// Residue recombination needs pairwise coprime moduli.
    #[error("moduli {a} and {b} are not coprime")]
    NonCoprimeModuli { a: u64, b: u64 },

    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn cap(what: impl Into<String>, limit: u64, requested: u64) -> Self {
        Error::CapExceeded {
            what: what.into(),
            limit,
            requested,
        }
    }

    /// Process exit code the thin binary maps this error to:
    /// 2 for bad input, 3 for blown caps or resource limits.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
