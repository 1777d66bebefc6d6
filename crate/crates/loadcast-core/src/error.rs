use alloc::string::String;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors returned by this crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A month number outside 1..=12.
    #[error("invalid month number {0}, must be in 1..=12")]
    InvalidMonth(u32),
    /// A series value was NaN or infinite.
    #[error("non-finite value at position {0}")]
    NonFiniteValue(usize),
    /// A consumption value below zero.
    #[error("negative consumption value at position {0}")]
    NegativeValue(usize),
    /// A series or metric input was empty.
    #[error("empty input")]
    EmptyInput,
    /// Not enough observations for the requested operation.
    #[error("{context}: need at least {needed} observations, got {actual}")]
    InsufficientData {
        context: &'static str,
        needed: usize,
        actual: usize,
    },
    /// Holdout length outside 1..len.
    #[error("holdout of {k} months is out of range for a series of length {len}")]
    HoldoutOutOfRange { k: usize, len: usize },
    /// Moving-average window longer than the series.
    #[error("moving-average window {k} exceeds series length {len}")]
    WindowTooLong { k: usize, len: usize },
    /// A seasonal period the models cannot handle.
    #[error("unsupported seasonal period {0}")]
    InvalidPeriod(usize),
    /// Multiplicative models need strictly positive data.
    #[error("multiplicative {0} requires positive data")]
    NonPositiveData(&'static str),
    /// The detrending step produced a non-positive trend value.
    #[error("multiplicative decomposition requires positive data (non-positive trend)")]
    NonPositiveTrend,
    /// A smoothing constant outside [0, 1].
    #[error("smoothing constant {name} = {value} is outside [0, 1]")]
    InvalidSmoothingConstant { name: &'static str, value: f64 },
    /// A smoothing constant the model needs was not supplied.
    #[error("smoothing constant {0} is required for this model")]
    MissingSmoothingConstant(&'static str),
    /// Forecast horizons must be at least one step.
    #[error("forecast horizon must be at least 1")]
    InvalidHorizon,
    /// Fewer rows than columns in a regression design.
    #[error("underdetermined design: {rows} rows for {cols} columns")]
    UnderdeterminedDesign { rows: usize, cols: usize },
    /// The regression design lost full column rank.
    #[error("design matrix is rank deficient")]
    RankDeficient,
    /// Paired sequences of different lengths.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    /// MAPE and approximation errors divide by the actual value.
    #[error("MAPE undefined at zero actual")]
    ZeroActual,
    /// Metric values must be comparable.
    #[error("NaN metric value for approach {0}")]
    NanMetric(u32),
    /// A SARIMA order outside the supported bounds.
    #[error("invalid SARIMA order: {0}")]
    InvalidOrder(&'static str),
    /// Order selection found nothing it could fit.
    #[error("no SARIMA candidate order is fittable on this series")]
    NoCandidateOrder,
    /// An approach failed; carries the approach id for harness reporting.
    #[error("approach {id}: {source}")]
    Approach {
        id: u32,
        source: alloc::boxed::Box<Error>,
    },
    /// Free-form error for input parsing done by callers re-using this enum.
    #[error("{0}")]
    Other(String),
}

impl Error {
    /// Tags an error with the approach id it occurred under.
    pub fn for_approach(self, id: u32) -> Error {
        Error::Approach {
            id,
            source: alloc::boxed::Box::new(self),
        }
    }
}
