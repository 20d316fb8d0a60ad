use aoi_core::CoreError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolicyError {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("state cap {cap} exceeded: forward expansion already reached {reached} states")]
    StateCapExceeded { cap: usize, reached: usize },

    #[error("search budget {budget} exceeded: instance spans {required} sequences")]
    SearchBudgetExceeded { budget: u64, required: u128 },

    #[error("deterministic evaluation requires reliable links (p = q = 0)")]
    ErrorlessOnly,

    #[error("fixed sequence has {got} actions, horizon needs {expected}")]
    SequenceLengthMismatch { expected: usize, got: usize },

    #[error("no solved entry for the queried slot-{t} state")]
    StateNotSolved { t: u32 },

    #[error("table format error at line {line}: {message}")]
    TableFormat { line: usize, message: String },
}
