use thiserror::Error;

use crate::quantities::DbRef;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A physical precondition on an input was violated.
    #[error("{param}: {reason}")]
    Domain { param: &'static str, reason: String },

    #[error("singular fit: {0}")]
    SingularFit(String),

    #[error("cannot combine {lhs} with {rhs}")]
    DbReferenceMismatch { lhs: DbRef, rhs: DbRef },

    #[error("expected a {expected} quantity, got {found}")]
    UnitMismatch { expected: String, found: String },

    #[error("cannot parse quantity '{0}'")]
    QuantityParse(String),

    #[error("missing required column '{0}'")]
    MissingColumn(String),

    #[error("csv: {0}")]
    Csv(String),

    #[error("record '{record}': {source}")]
    Record {
        record: String,
        #[source]
        source: Box<Error>,
    },

    #[error("category '{0}' has no records")]
    EmptyCategory(String),

    #[error("category '{category}' mixes polarisation factors: {offenders}")]
    MixedRho2 { category: String, offenders: String },

    #[error("scenario target mode: {0}")]
    TargetMode(&'static str),
}

impl Error {
    pub(crate) fn domain(param: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            param,
            reason: reason.into(),
        }
    }

    /// Name of the offending parameter for domain errors, looking through
    /// record wrappers.
    pub fn param(&self) -> Option<&'static str> {
        match self {
            Error::Domain { param, .. } => Some(param),
            Error::Record { source, .. } => source.param(),
            _ => None,
        }
    }

    /// Schema and parse failures, as opposed to physics preconditions.
    pub fn is_schema(&self) -> bool {
        match self {
            Error::MissingColumn(_)
            | Error::Csv(_)
            | Error::QuantityParse(_)
            | Error::UnitMismatch { .. } => true,
            Error::Record { source, .. } => source.is_schema(),
            _ => false,
        }
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}

pub(crate) fn require_positive(param: &'static str, x: f64) -> Result<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(Error::domain(param, format!("must be > 0, got {x}")))
    }
}

pub(crate) fn require_non_negative(param: &'static str, x: f64) -> Result<f64> {
    if x.is_finite() && x >= 0.0 {
        Ok(x)
    } else {
        Err(Error::domain(param, format!("must be >= 0, got {x}")))
    }
}

pub(crate) fn require_finite(param: &'static str, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::domain(param, format!("must be finite, got {x}")))
    }
}
