use thiserror::Error;

use crate::linalg::Inconsistent;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("not well-defined: {0}")]
    NotWellDefined(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("not a group table: {0}")]
    NotAGroup(String),
    #[error("not right dualizable over {algebra}: splitting system rank {} vs augmented {}", .certificate.coefficient_rank, .certificate.augmented_rank)]
    NotRightDualizable { algebra: String, certificate: Inconsistent },
    #[error("not separable: {algebra}: Casimir system rank {} vs augmented {}", .certificate.coefficient_rank, .certificate.augmented_rank)]
    NotSeparable { algebra: String, certificate: Inconsistent },
    #[error("invalid {what}: {detail}")]
    Invalid { what: String, detail: String },
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("no isomorphism found: {0}")]
    NoneFound(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(what: impl Into<String>, detail: impl Into<String>) -> Error {
        Error::Invalid {
            what: what.into(),
            detail: detail.into(),
        }
    }
}
