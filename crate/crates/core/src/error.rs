use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{0} must be nonzero")]
    ZeroVector(&'static str),

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("{0} requires a polyhedral space")]
    NotPolyhedral(&'static str),

    #[error("vector does not have unit norm")]
    NotUnitVector,

    #[error("functional is not a supporting functional at the given point")]
    NotSupportingFunctional,

    #[error("vectors are linearly dependent")]
    LinearlyDependent,

    #[error("point is not a level vector of the operator")]
    NotLevelVector,

    #[error(
        "operator maps between exact and floating-point spaces; mixed arithmetic is unsupported"
    )]
    MixedArithmetic,

    #[error("input too large: {0}")]
    TooLarge(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable code, used in CLI error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::ZeroVector(_) => "zero_vector",
            Error::InvalidSpace(_) => "invalid_space",
            Error::NotPolyhedral(_) => "not_polyhedral",
            Error::NotUnitVector => "not_unit_vector",
            Error::NotSupportingFunctional => "not_supporting_functional",
            Error::LinearlyDependent => "linearly_dependent",
            Error::NotLevelVector => "not_level_vector",
            Error::MixedArithmetic => "mixed_arithmetic",
            Error::TooLarge(_) => "too_large",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Parse(_) => "parse_error",
            Error::Internal(_) => "internal",
        }
    }

    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
