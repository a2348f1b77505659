use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("parameters are not admissible: the hazard is not strictly positive for all t >= 0")]
    InadmissibleParams,

    #[error("regime coefficients requested inside the critically damped band")]
    CriticallyDampedCoefficients,

    #[error("mu = w1 / (w0 * eta) is undefined at eta = 0")]
    UndefinedMu,

    #[error("closed-form critical points are not available in the critically damped band")]
    CriticallyDampedUnsupported,

    #[error("time must be positive, got {0}")]
    NonPositiveTime(f64),

    #[error("missing column `{0}`")]
    MissingColumn(&'static str),

    #[error("row {row}: time `{value}` is not a finite number")]
    NonNumericTime { row: usize, value: String },

    #[error("row {row}: time {value} is not positive")]
    NonPositiveTimeAtRow { row: usize, value: f64 },

    #[error("row {row}: status `{value}` is not 0 or 1")]
    InvalidStatus { row: usize, value: String },

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("dataset contains no events")]
    NoEvents,

    #[error("could not bracket the root of H(t) = {target}")]
    RootNotBracketed { target: f64 },

    #[error("elicited h0 is not positive: S(dt) must be below S(0)")]
    NonPositiveH0,

    #[error("every optimizer start failed to reach a finite log-likelihood")]
    AllStartsFailed,

    #[error("chain stuck: acceptance rate {rate:.4} after adaptation")]
    ChainStuck { rate: f64 },

    #[error("no posterior draws")]
    EmptyDraws,

    #[error("csv: {0}")]
    Csv(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
