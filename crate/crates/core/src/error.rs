use std::fmt;

use thiserror::Error;

use crate::groebner::EngineStats;

/// Why a Gröbner computation was abandoned.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbortReason {
    DegreeBound { bound: u32, needed: u32 },
    Timeout,
}

impl fmt::Display for AbortReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AbortReason::DegreeBound { bound, needed } => {
                write!(f, "degree bound {bound} exceeded (needed {needed})")
            }
            AbortReason::Timeout => write!(f, "timeout exceeded"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("ring mismatch: operands live in different rings")]
    RingMismatch,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("variable `{0}` is not mapped by the substitution")]
    UnmappedVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("resource abort: {reason}")]
    Aborted {
        reason: AbortReason,
        stats: EngineStats,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Input(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
