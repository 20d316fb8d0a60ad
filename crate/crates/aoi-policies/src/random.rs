use aoi_core::{feasible_actions, Action, NetworkConfig};
use rand::Rng;

/// Uniform draw over the feasible actions: every sample-set and update-set
/// combination is equally likely.
///
/// Consumes exactly one index draw from `rng`, so a seeded stream yields a
/// reproducible action sequence.
pub fn random_action<R: Rng + ?Sized>(cfg: &NetworkConfig, rng: &mut R) -> Action {
    let space = feasible_actions(cfg);
    space.action(rng.random_range(0..space.len()))
}
