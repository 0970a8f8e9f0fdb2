use thiserror::Error;

/// Errors shared by the exact-arithmetic layers.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("mixed quadratic contexts: sqrt({0}) and sqrt({1}) in one computation")]
    MixedContexts(u64, u64),

    #[error("{0} is not square-free (or < 2); not a valid field parameter")]
    BadFieldParameter(u64),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("zero vector has no projective class")]
    ZeroVector,

    #[error("operator does not square to the given scalar")]
    NotAScaledInvolution,

    #[error("eigensplit needs a positive scalar; got a non-positive one")]
    NonPositiveSplit,

    #[error("square root of the scalar is not expressible in the current field")]
    SqrtNotInField,

    #[error("non-finite float input")]
    NonFiniteInput,

    #[error("matrix entry is not traceless where required")]
    NotTraceless,

    #[error("trivector is not semistable (quartic invariant vanishes)")]
    NotSemistable,

    #[error("unsupported representation/degree combination: {0}")]
    UnsupportedRep(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(&'static str),

    #[error("seed point is not primitive")]
    NotPrimitive,

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
