use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("root finding did not converge after {iterations} iterations (worst residual {residual:e})")]
    RootsNotConverged { iterations: usize, residual: f64, best: Vec<num_complex::Complex64> },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("term is not in the correspondence table: {0}")]
    UnsupportedTerm(String),

    #[error("negative delay {0} is not LT-consistent")]
    NegativeDelay(f64),

    #[error("value at t = 0 is a connect/impulse set, not a number; use evaluate_at_zero")]
    AtOrigin,

    #[error("numerical integration failed: {0}")]
    Numeric(String),

    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::UnsupportedTerm(msg.into())
    }

    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse { position, message: message.into() }
    }
}
