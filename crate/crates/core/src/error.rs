use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is not a prime in (2, 2^31)")]
    BadCharacteristic(u64),

    #[error("monomials have mismatched variable counts ({0} vs {1})")]
    MismatchedLength(usize, usize),

    #[error("at most {max} variables are supported, got {got}")]
    TooManyVariables { max: usize, got: usize },

    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("ideal generator `{0}` is not homogeneous")]
    NonHomogeneousIdeal(String),

    #[error("the defining ideal contains a unit; the quotient ring is zero")]
    UnitIdeal,

    #[error("matrix does not admit a consistent grading: {0}")]
    NonHomogeneousMatrix(String),

    #[error("relation {0} does not lie in the span of the generators")]
    RelNotInSpan(usize),

    #[error("module is not of finite length")]
    NotFiniteLength,

    #[error("operation is undefined on the zero module")]
    ZeroModule,

    #[error("ring has depth zero")]
    DepthZero,

    #[error("ring has positive depth {0}")]
    DepthNonzero(usize),

    #[error("ring or module is not artinian")]
    NotArtinian,

    #[error("text parse error: {0}")]
    Parse(String),

    #[error("cache I/O: {0}")]
    Io(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
