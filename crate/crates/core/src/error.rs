use thiserror::Error;

use crate::funceq::SingularityReport;
use crate::hyers::ConditionReport;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{0} is not a prime below 2^64")]
    NotPrime(String),

    #[error("singular evaluation: {0}")]
    Singular(SingularityReport),

    #[error("inexact exponent: {base}^({exponent}) is not rational")]
    InexactExponent { base: String, exponent: String },

    #[error("vanishing hypothesis fails: {}", .0.diagnosis)]
    HypothesisFailed(Box<ConditionReport>),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
