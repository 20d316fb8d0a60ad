//! Aggregation over independent seeded runs.

use aoi_core::NetworkConfig;
use aoi_policies::PolicySpec;

use crate::episode::run_episode;
use crate::error::SimError;
use crate::tape::{policy_stream_seed, OutageTape};
use crate::trajectory::Trajectory;

/// Aggregate of a run batch for one policy.
///
/// `value_mean` averages the per-run time averages, so its uncertainty
/// follows from the spread of whole-run values, not per-slot ones.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub policy_id: String,
    pub n_runs: usize,
    pub master_seed: u64,
    pub mean_weighted_sum_g: Vec<f64>,
    pub mean_weighted_sum_h: Vec<f64>,
    pub value_mean: f64,
    pub value_sd: f64,
    pub half_width_95: f64,
}

impl RunSummary {
    pub fn standard_error(&self) -> f64 {
        self.value_sd / (self.n_runs as f64).sqrt()
    }
}

pub(crate) struct Batch {
    pub summary: RunSummary,
    pub per_run_values: Vec<f64>,
    pub per_run_slot_sum_h: Vec<Vec<u64>>,
}

pub(crate) fn run_batch(
    cfg: &NetworkConfig,
    policy: &PolicySpec,
    n_runs: usize,
    master_seed: u64,
    policy_slot: u64,
    keep_slot_sums: bool,
) -> Result<Batch, SimError> {
    assert!(n_runs > 0, "aggregation needs at least one run");
    let slots = cfg.horizon() as usize;
    let mut sum_g = vec![0.0; slots];
    let mut sum_h = vec![0.0; slots];
    let mut per_run_values = Vec::with_capacity(n_runs);
    let mut per_run_slot_sum_h = Vec::new();
    for run in 0..n_runs {
        let tape = OutageTape::new(cfg, master_seed, run as u64);
        let seed = policy_stream_seed(master_seed, run as u64, policy_slot);
        let trajectory = run_episode(cfg, policy, &tape, seed)?;
        for (slot, record) in trajectory.records().iter().enumerate() {
            sum_g[slot] += record.weighted_sum_g;
            sum_h[slot] += record.weighted_sum_h;
        }
        per_run_values.push(trajectory.value());
        if keep_slot_sums {
            per_run_slot_sum_h.push(trajectory.sum_h_per_slot());
        }
    }
    let n = n_runs as f64;
    // Bit-identical runs (deterministic policies on reliable links) get the
    // exact degenerate statistics instead of accumulated rounding dust.
    let all_equal = per_run_values.iter().all(|&v| v == per_run_values[0]);
    let value_mean = if all_equal {
        per_run_values[0]
    } else {
        per_run_values.iter().sum::<f64>() / n
    };
    let value_sd = if n_runs > 1 && !all_equal {
        let squared: f64 = per_run_values
            .iter()
            .map(|v| (v - value_mean).powi(2))
            .sum();
        (squared / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    let summary = RunSummary {
        policy_id: policy.id().to_string(),
        n_runs,
        master_seed,
        mean_weighted_sum_g: sum_g.iter().map(|v| v / n).collect(),
        mean_weighted_sum_h: sum_h.iter().map(|v| v / n).collect(),
        value_mean,
        value_sd,
        half_width_95: 1.96 * value_sd / n.sqrt(),
    };
    Ok(Batch {
        summary,
        per_run_values,
        per_run_slot_sum_h,
    })
}

/// Runs `n_runs` independent episodes, one derived tape per run, and
/// summarizes them. Results depend only on `(cfg, policy, n_runs,
/// master_seed)`.
pub fn run_monte_carlo(
    cfg: &NetworkConfig,
    policy: &PolicySpec,
    n_runs: usize,
    master_seed: u64,
) -> Result<RunSummary, SimError> {
    Ok(run_batch(cfg, policy, n_runs, master_seed, 0, false)?.summary)
}

/// Replays the exact episodes a batch aggregates and returns them whole,
/// for callers that persist per-slot records. `policy_slot` is the policy's
/// position in a multi-policy run and picks its decision stream; a batch
/// made by [`run_monte_carlo`] corresponds to slot 0.
pub fn run_recorded(
    cfg: &NetworkConfig,
    policy: &PolicySpec,
    n_runs: usize,
    master_seed: u64,
    policy_slot: u64,
) -> Result<Vec<Trajectory>, SimError> {
    (0..n_runs)
        .map(|run| {
            let tape = OutageTape::new(cfg, master_seed, run as u64);
            let seed = policy_stream_seed(master_seed, run as u64, policy_slot);
            run_episode(cfg, policy, &tape, seed)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_policy_on_errorless_links_has_zero_variance() {
        let cfg = NetworkConfig::errorless_symmetric(5, 3, 3, 6).unwrap();
        let summary = run_monte_carlo(&cfg, &PolicySpec::Greedy, 25, 4).unwrap();
        assert_eq!(summary.value_sd, 0.0);
        assert_eq!(summary.half_width_95, 0.0);
        // 63 total weighted-by-1/5 age over 6 slots.
        assert!((summary.value_mean - 63.0 / 30.0).abs() < 1e-12);
        assert_eq!(summary.policy_id, "greedy");
        assert_eq!(summary.n_runs, 25);
    }

    #[test]
    fn per_slot_means_average_the_weighted_sums() {
        let cfg = NetworkConfig::errorless_symmetric(5, 3, 3, 6).unwrap();
        let summary = run_monte_carlo(&cfg, &PolicySpec::Greedy, 3, 1).unwrap();
        let expected_h: Vec<f64> = [5.0, 10.0, 12.0, 12.0, 12.0, 12.0]
            .iter()
            .map(|v| v / 5.0)
            .collect();
        for (mean, expected) in summary.mean_weighted_sum_h.iter().zip(&expected_h) {
            assert!((mean - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn outages_push_the_mean_value_above_the_errorless_one() {
        let cfg = NetworkConfig::symmetric(5, 3, 3, 20, 0.1, 0.1).unwrap();
        let summary = run_monte_carlo(&cfg, &PolicySpec::Greedy, 2_000, 8).unwrap();
        assert!(
            summary.value_mean > 2.31,
            "lossy links cannot beat the errorless value, got {}",
            summary.value_mean
        );
    }

    #[test]
    fn summaries_are_reproducible_and_seed_sensitive() {
        let cfg = NetworkConfig::symmetric(3, 1, 1, 5, 0.2, 0.2).unwrap();
        let a = run_monte_carlo(&cfg, &PolicySpec::UniformRandom, 50, 12).unwrap();
        let b = run_monte_carlo(&cfg, &PolicySpec::UniformRandom, 50, 12).unwrap();
        assert_eq!(a, b);
        let c = run_monte_carlo(&cfg, &PolicySpec::UniformRandom, 50, 13).unwrap();
        assert_ne!(a.value_mean, c.value_mean);
    }
}
