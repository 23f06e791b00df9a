use thiserror::Error;

use crate::semiring::SemiringId;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("semiring mismatch: {left} vs {right}")]
    SemiringMismatch { left: SemiringId, right: SemiringId },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("not a unit: {0}")]
    NotAUnit(String),

    #[error("residual undefined: second argument is zero")]
    ResidualByZero,

    #[error("operation undefined for the zero element")]
    ZeroArgument,

    #[error("zero matrix not allowed here")]
    ZeroMatrix,

    #[error("matrix has no inverse: {0}")]
    NotInvertible(String),

    #[error("index out of bounds: {0}")]
    OutOfBounds(String),

    #[error("not a permutation of 1..={0}")]
    NotAPermutation(usize),

    #[error("operator is not invertible")]
    OperatorNotInvertible,

    #[error("operator is not in (U,V) form: {0}")]
    NotUvOperator(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no unit-scaling correspondence between the given bases: {0}")]
    NoCorrespondence(String),

    #[error("cross-ratio fails on the minor with rows ({i},{l}) and columns ({j},{k})")]
    CrossRatio {
        i: usize,
        l: usize,
        j: usize,
        k: usize,
    },

    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
