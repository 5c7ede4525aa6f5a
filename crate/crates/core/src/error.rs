use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p must be prime (got {0})")]
    NotPrime(u64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix does not have full rank")]
    Singular,
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("lattice containment fails: {0}")]
    NotContained(String),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(String, String),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("rays do not span the ambient space (rank {rank} < {dim})")]
    RaysDoNotSpan { rank: usize, dim: usize },
    #[error("index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("action does not have order {0}")]
    NotOrderP(u64),
    #[error("invalid functional: {0}")]
    InvalidFunctional(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("point is not on the curve")]
    PointNotOnCurve,
    #[error("value must be nonzero")]
    ZeroValue,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("factorization exceeded the iteration cap of {0}")]
    FactorBoundExceeded(u64),
    #[error("enumeration of {0} elements exceeds the supported bound")]
    EnumerationTooLarge(String),
}

impl Error {
    /// True for failures caused by a computational bound rather than bad input.
    pub fn is_bound_error(&self) -> bool {
        matches!(
            self,
            Error::FactorBoundExceeded(_) | Error::EnumerationTooLarge(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
