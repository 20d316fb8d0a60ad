use thiserror::Error;

/// Validation failures raised by configuration and dynamics entry points.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    #[error("need at least 2 sensors, got K={k}")]
    TooFewSensors { k: usize },

    #[error("{name} must satisfy 1 <= {name} < K, got {name}={value} with K={k}")]
    BadSelectionSize {
        name: &'static str,
        value: usize,
        k: usize,
    },

    #[error("horizon must be at least 1")]
    BadHorizon,

    #[error("weights must have length K={k}, got {len}")]
    WeightLengthMismatch { k: usize, len: usize },

    #[error("weights must be finite and nonnegative with a positive sum")]
    BadWeights,

    #[error("{name} must have length K={k}, got {len}")]
    ProbabilityLengthMismatch {
        name: &'static str,
        k: usize,
        len: usize,
    },

    #[error("{name}[{index}] must lie in [0, 1), got {value}")]
    BadProbability {
        name: &'static str,
        index: usize,
        value: f64,
    },

    #[error("sensor index {index} out of range for K={k}")]
    IndexOutOfRange { index: usize, k: usize },

    #[error("duplicate sensor index {index} in {set}")]
    DuplicateIndex { set: &'static str, index: usize },

    #[error("{set} must select exactly {expected} sensors, got {got}")]
    WrongSelectionSize {
        set: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("outage draws carry {got} {channel} entries, expected {expected}")]
    DrawLengthMismatch {
        channel: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("state tracks {got} sensors, config has {expected}")]
    StateSizeMismatch { expected: usize, got: usize },

    #[error("cannot step from slot {t}: horizon is {horizon}")]
    PastHorizon { t: u32, horizon: u32 },
}
