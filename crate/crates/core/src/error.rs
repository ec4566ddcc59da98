use thiserror::Error;

use crate::kernel::KernelError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ACM (a = {a}, b = {b}): {reason}")]
    InvalidAcm { a: u64, b: u64, reason: String },
    #[error("{x} is not an element of M_{{{a},{b}}}")]
    NotInMonoid { x: u64, a: u64, b: u64 },
    #[error("{0} is not an atom")]
    NotAnAtom(u64),
    #[error("{x} does not divide {y} over the integers")]
    NotIntegerDivisor { x: u64, y: u64 },
    #[error("operation requires a {expected} monoid, got {actual}")]
    ClassMismatch {
        expected: &'static str,
        actual: &'static str,
    },
    #[error("{what}: cap of {cap} exceeded")]
    CapExceeded { what: &'static str, cap: u64 },
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("not available: {0}")]
    Unavailable(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CapExceeded { .. } => 2,
            Error::Kernel(KernelError::SearchCapExceeded { .. }) => 2,
            _ => 1,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
