use thiserror::Error;

use crate::lattice::CoCloneId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity {arity} out of range (allowed {min}..={max})")]
    ArityOutOfRange { arity: usize, min: usize, max: usize },

    #[error("tuple of length {found} in a relation of arity {expected}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("cannot identify arguments of a unary relation")]
    Underflow,

    #[error("permutation of size {found} applied to arity {expected}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("fingerprints differ in kind or arity bound")]
    KindMismatch,

    #[error("relation is empty")]
    EmptyRelation,

    #[error("catalog entries {0} and {1} share a fingerprint at arity {2}")]
    FingerprintCollision(CoCloneId, CoCloneId, usize),

    #[error("invalid co-clone identifier `{0}`")]
    InvalidCoClone(String),

    #[error("no catalog entry for {0}")]
    NotInCatalog(CoCloneId),

    #[error("relation classifies as {found}, expected {expected}")]
    ClassMismatch { expected: CoCloneId, found: String },

    #[error("derivation step {step}: {reason}")]
    ChainArityError { step: usize, reason: String },

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn arity(arity: usize, min: usize, max: usize) -> Self {
        Error::ArityOutOfRange { arity, min, max }
    }

    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}
