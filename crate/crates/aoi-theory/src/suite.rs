//! Seeded property sweeps over randomly drawn instances.

use aoi_core::NetworkConfig;
use aoi_policies::PolicySpec;
use aoi_sim::{run_episode, OutageTape, Trajectory};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::checks::{check_age_accounting, check_age_ordering, check_reduction_precedence};
use crate::report::{instance_label, CheckReport, Violation};

/// The reports of one sweep, in generation order.
#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub reports: Vec<CheckReport>,
}

impl SweepOutcome {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(CheckReport::passed)
    }

    pub fn n_pass(&self) -> usize {
        self.reports.iter().filter(|r| r.passed()).count()
    }

    pub fn failures(&self) -> Vec<&CheckReport> {
        self.reports.iter().filter(|r| !r.passed()).collect()
    }
}

fn random_policy_trajectory(cfg: &NetworkConfig, rng: &mut ChaCha8Rng) -> Trajectory {
    let tape = OutageTape::new(cfg, rng.random(), 0);
    run_episode(cfg, &PolicySpec::UniformRandom, &tape, rng.random())
        .expect("generated instances always step cleanly")
}

/// Runs the age-ordering check on `n_instances` error-prone trajectories:
/// random weights, random per-sensor outage probabilities, and a uniformly
/// random policy. The ordering claim has no hypotheses beyond the dynamics,
/// so every report is expected to pass.
pub fn lossy_ordering_sweep(n_instances: usize, seed: u64) -> SweepOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reports = Vec::with_capacity(n_instances);
    for _ in 0..n_instances {
        let k = rng.random_range(2..=6usize);
        let s = rng.random_range(1..k);
        let u = rng.random_range(1..k);
        let horizon = rng.random_range(3..=12u32);
        let weights: Vec<f64> = (0..k).map(|_| rng.random_range(0.1..1.0)).collect();
        let p: Vec<f64> = (0..k).map(|_| rng.random_range(0.05..0.45)).collect();
        let q: Vec<f64> = (0..k).map(|_| rng.random_range(0.05..0.45)).collect();
        let cfg = NetworkConfig::new(k, s, u, horizon, weights, p, q)
            .expect("drawn parameters stay in domain");
        let trajectory = random_policy_trajectory(&cfg, &mut rng);
        reports.push(check_age_ordering(&trajectory));
    }
    SweepOutcome { reports }
}

/// Prefix equality between what the relay gained through `t-1` and what the
/// destinations drained through `t`; the tightness that distinguishes the
/// best schedules from merely feasible ones.
fn greedy_drain_equality(trajectory: &Trajectory) -> CheckReport {
    let name = "greedy-drain-equality";
    let instance = instance_label(trajectory.cfg());
    let mut sampled_before = 0u64;
    let mut drained_through = 0u64;
    for record in trajectory.records() {
        drained_through += record.update_reduction;
        if sampled_before != drained_through {
            return CheckReport::fail(
                name,
                instance,
                Violation {
                    t: record.state.t,
                    k: None,
                    lhs: sampled_before,
                    rhs: drained_through,
                },
            );
        }
        sampled_before += record.sampling_reduction;
    }
    CheckReport::pass(name, instance)
}

/// Runs the errorless identity checks on `n_instances` uniform-weight
/// instances with matching sample and update sizes. Each instance
/// contributes a uniformly random trajectory (accounting and precedence)
/// and a greedy trajectory (the same two plus the drain equality), so every
/// claim is exercised both away from and at its boundary.
pub fn errorless_identity_sweep(n_instances: usize, seed: u64) -> SweepOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reports = Vec::with_capacity(n_instances * 5);
    for _ in 0..n_instances {
        let k = rng.random_range(2..=6usize);
        let s = rng.random_range(1..k);
        let horizon = rng.random_range(3..=12u32);
        let cfg = NetworkConfig::errorless_symmetric(k, s, s, horizon)
            .expect("drawn parameters stay in domain");

        let random_trajectory = random_policy_trajectory(&cfg, &mut rng);
        reports.push(
            check_age_accounting(&random_trajectory)
                .expect("sweep instances are errorless"),
        );
        reports.push(
            check_reduction_precedence(&random_trajectory)
                .expect("sweep instances are errorless"),
        );

        let tape = OutageTape::new(&cfg, rng.random(), 0);
        let greedy_trajectory = run_episode(&cfg, &PolicySpec::Greedy, &tape, 0)
            .expect("generated instances always step cleanly");
        reports.push(
            check_age_accounting(&greedy_trajectory).expect("sweep instances are errorless"),
        );
        reports.push(
            check_reduction_precedence(&greedy_trajectory)
                .expect("sweep instances are errorless"),
        );
        reports.push(greedy_drain_equality(&greedy_trajectory));
    }
    SweepOutcome { reports }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_lossy_ordering_sweep_passes_clean() {
        let outcome = lossy_ordering_sweep(60, 3);
        assert_eq!(outcome.reports.len(), 60);
        assert!(outcome.all_passed(), "failures: {:?}", outcome.failures());
        assert!(outcome
            .reports
            .iter()
            .all(|r| r.name() == "age-ordering"));
    }

    #[test]
    fn the_errorless_identity_sweep_passes_clean() {
        let outcome = errorless_identity_sweep(40, 7);
        assert_eq!(outcome.reports.len(), 200);
        assert!(outcome.all_passed(), "failures: {:?}", outcome.failures());
        let equalities = outcome
            .reports
            .iter()
            .filter(|r| r.name() == "greedy-drain-equality")
            .count();
        assert_eq!(equalities, 40);
    }

    #[test]
    fn sweeps_are_reproducible_and_seed_sensitive() {
        let a: Vec<String> = lossy_ordering_sweep(10, 11)
            .reports
            .iter()
            .map(CheckReport::render_line)
            .collect();
        let b: Vec<String> = lossy_ordering_sweep(10, 11)
            .reports
            .iter()
            .map(CheckReport::render_line)
            .collect();
        assert_eq!(a, b);
        let c: Vec<String> = lossy_ordering_sweep(10, 12)
            .reports
            .iter()
            .map(CheckReport::render_line)
            .collect();
        assert_ne!(a, c);
    }
}
