use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenusError {
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("{op} requires constant term {expected}")]
    ConstantTerm { op: &'static str, expected: &'static str },

    #[error("division by a non-unit polynomial in y")]
    NonUnit,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index {index} out of range (max {max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("zero weight at fixed component {component}")]
    ZeroWeight { component: usize },

    #[error("missing {what}")]
    Missing { what: String },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl GenusError {
    pub(crate) fn missing(what: impl Into<String>) -> Self {
        GenusError::Missing { what: what.into() }
    }
}

pub type Result<T, E = GenusError> = std::result::Result<T, E>;
