use thiserror::Error;

use crate::partition::Partition;

pub type Result<T, E = CoreError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("invalid partition {parts:?}: {reason}")]
    InvalidPartition { parts: Vec<u64>, reason: &'static str },

    #[error("abacus runner count must be positive")]
    ZeroRunners,

    #[error("runner mismatch: {left}-abacus vs {right}-abacus")]
    RunnerMismatch { left: u64, right: u64 },

    #[error("moduli {s} and {t} are not coprime")]
    NotCoprime { s: u64, t: u64 },

    #[error("no coprime pair in moduli {moduli:?}; the family may be infinite")]
    NoCoprimePair { moduli: Vec<u64> },

    #[error("modulus must be positive")]
    ZeroModulus,

    #[error("parameter {name} = {value} out of range: {reason}")]
    OutOfRange {
        name: &'static str,
        value: u64,
        reason: String,
    },

    #[error("only k in {{0, 1}} is supported, got k = {0}")]
    UnsupportedK(u64),

    #[error("unknown construction {0:?} (expected one of A, B0, B1, C0, C1, E-, E+, L)")]
    UnknownConstruction(String),

    #[error("{0} members tie for the most parts: {1:?}")]
    AmbiguousLongest(usize, Vec<Partition>),

    #[error("empty family has no longest member")]
    EmptyFamily,

    #[error("guard rail exceeded for {claim}: {detail}; try {suggestion}")]
    GuardRail {
        claim: String,
        detail: String,
        suggestion: String,
    },

    #[error("unknown claim {0:?}")]
    UnknownClaim(String),

    #[error("bad parameter grid {0:?}")]
    BadGrid(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}
