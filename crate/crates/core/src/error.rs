use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("subset universe does not match the matrix labels")]
    UniverseMismatch,

    #[error("operands live over different fields ({0} vs {1})")]
    FieldMismatch(String, String),

    #[error("principal submatrix on the pivot set is singular")]
    SingularPrincipalMinor,

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("size {n} exceeds the enumeration cap {cap} (raise it with --max-n)")]
    SizeCapExceeded { n: usize, cap: usize },

    #[error("the zero polynomial has no support")]
    ZeroPolynomial,

    #[error("matrix is not block-diagonal with respect to the given partition")]
    NotBlockDiagonal,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("operator `{0}` has no closed form here")]
    UnsupportedOperator(String),

    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("invalid value: {0}")]
    Invalid(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn internal(message: impl Into<String>) -> Self {
        Error::InternalInvariantViolation(message.into())
    }
}
