use thiserror::Error;

use crate::scalar::Domain;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("field domain mismatch: expected {expected}, found {found}")]
    DomainMismatch { expected: Domain, found: Domain },

    #[error("substitution q = {at} hits a pole")]
    Pole { at: String },

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("sequence is not admissible: n_psi vanishes at n = {index}")]
    NotAdmissible { index: usize },

    #[error("sequence index {index} is outside the defined range 1..={len}")]
    OutOfRange { index: usize, len: usize },

    #[error("falling factorial ({n})_psi^({k}) needs k <= n")]
    FallingDomain { n: usize, k: usize },

    #[error("matrix is not strictly lower-triangular")]
    NotStrictlyLower,

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("unknown sequence selector {0:?}")]
    BadSelector(String),

    #[error("{0}")]
    WrongSequenceKind(String),

    #[error("unknown identity {0:?}")]
    UnknownIdentity(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}
