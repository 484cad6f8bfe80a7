use thiserror::Error;

/// Errors raised by the statistical routines.
///
/// Degenerate-but-well-formed results (zero within-group variance, all values
/// equal) are not errors; they are carried as flags on the result types.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("sample is empty")]
    EmptySample,

    #[error("stream ended before any value was consumed")]
    EmptyStream,

    #[error("value at position {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    #[error("insufficient data: need at least {needed} observations, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("at least two groups are required, got {0}")]
    FewerThanTwoGroups(usize),

    #[error("exactly two groups are required, got {0}")]
    NotTwoGroups(usize),

    #[error("group '{0}' is empty")]
    EmptyGroup(String),

    #[error("duplicate group label '{0}'")]
    DuplicateLabel(String),

    #[error("total variance is zero; correlation is undefined")]
    ZeroTotalVariance,

    #[error("length mismatch: x has {x} values, y has {y}")]
    LengthMismatch { x: usize, y: usize },

    #[error("predictor has zero variance; slope is undefined")]
    ZeroPredictorVariance,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("continued fraction did not converge within {0} iterations")]
    NoConvergence(usize),

    #[error("invalid study configuration: {0}")]
    Config(String),
}

pub type Result<T, E = StatsError> = std::result::Result<T, E>;
