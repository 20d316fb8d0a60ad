use aoi_core::CoreError;
use aoi_policies::PolicyError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error(transparent)]
    Policy(#[from] PolicyError),

    #[error(
        "policy emitted an incompatible action (sample size {sample}, update size {update}) \
         for a network with {k} sensors"
    )]
    InfeasibleAction { sample: usize, update: usize, k: usize },

    #[error("exact expectation would explore more than {cap} branches")]
    PathBudgetExceeded { cap: u64 },
}
