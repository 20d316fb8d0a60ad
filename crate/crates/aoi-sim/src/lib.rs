//! Simulation engine for the relay network.
//!
//! Episodes roll a policy against pregenerated outage tapes, so identical
//! seeds always replay identical channel behavior and different policies can
//! share one tape for paired comparisons. On small instances the same
//! machinery evaluates policies exactly by enumerating every outage outcome
//! with its probability.

mod coupled;
mod episode;
mod error;
mod exact;
mod monte_carlo;
mod tape;
mod trajectory;

pub use coupled::{run_coupled, CoupledReport};
pub use episode::run_episode;
pub use error::SimError;
pub use exact::{exact_expected_value, DEFAULT_PATH_CAP};
pub use monte_carlo::{run_monte_carlo, run_recorded, RunSummary};
pub use tape::{OutageTape, TAPE_RULE_ID};
pub use trajectory::{SlotRecord, Trajectory};
