//! Trajectory-level verdicts for the structural claims.

use aoi_core::NetworkConfig;
use aoi_policies::{maximum_double_accumulated_sampling, PolicyError};
use aoi_sim::Trajectory;

use crate::error::TheoryError;
use crate::report::{instance_label, CheckReport, Violation};

/// Schedule-space budget for the exhaustive side of the optimality check.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

const AGE_ORDERING: &str = "age-ordering";
const AGE_ACCOUNTING: &str = "age-accounting";
const REDUCTION_PRECEDENCE: &str = "reduction-precedence";
const OPTIMALITY_CONDITIONS: &str = "optimality-conditions";

fn require_errorless(trajectory: &Trajectory, check: &str) -> Result<(), TheoryError> {
    if trajectory.cfg().is_errorless() {
        Ok(())
    } else {
        Err(TheoryError::LossyTrajectory {
            what: format!(
                "{check} was given {}; its identity relies on every transmission landing",
                instance_label(trajectory.cfg())
            ),
        })
    }
}

/// Verdicts the two age-ordering inequalities on any trajectory: a
/// destination is never fresher than its relay entry within a slot, and
/// never fresher than the previous slot's relay entry plus one across
/// slots. Both hold for every policy and every outage pattern.
pub fn check_age_ordering(trajectory: &Trajectory) -> CheckReport {
    assert!(
        trajectory.len() >= 2,
        "the cross-slot inequality needs at least two recorded slots"
    );
    let instance = instance_label(trajectory.cfg());
    let records = trajectory.records();
    for (i, record) in records.iter().enumerate() {
        let state = &record.state;
        for k in 0..state.g.len() {
            if state.h[k] < state.g[k] {
                return CheckReport::fail(
                    AGE_ORDERING,
                    instance,
                    Violation {
                        t: state.t,
                        k: Some(k),
                        lhs: u64::from(state.h[k]),
                        rhs: u64::from(state.g[k]),
                    },
                );
            }
        }
        if i > 0 {
            let previous = &records[i - 1].state;
            for k in 0..state.h.len() {
                let floor = u64::from(previous.g[k]) + 1;
                if u64::from(state.h[k]) < floor {
                    return CheckReport::fail(
                        AGE_ORDERING,
                        instance,
                        Violation {
                            t: state.t,
                            k: Some(k),
                            lhs: u64::from(state.h[k]),
                            rhs: floor,
                        },
                    );
                }
            }
        }
    }
    CheckReport::pass(AGE_ORDERING, instance)
}

/// Verdicts the exact accounting identities on an errorless trajectory: the
/// age sum at each slot equals `t*K` minus every reduction banked strictly
/// before it, separately at the relay and at the destinations.
pub fn check_age_accounting(trajectory: &Trajectory) -> Result<CheckReport, TheoryError> {
    require_errorless(trajectory, AGE_ACCOUNTING)?;
    let instance = instance_label(trajectory.cfg());
    let k = trajectory.cfg().n_sensors() as u64;
    let mut banked_sampling = 0u64;
    let mut banked_update = 0u64;
    for record in trajectory.records() {
        let t = u64::from(record.state.t);
        let expected_g = t * k - banked_sampling;
        if record.state.sum_g() != expected_g {
            return Ok(CheckReport::fail(
                AGE_ACCOUNTING,
                instance,
                Violation {
                    t: record.state.t,
                    k: None,
                    lhs: record.state.sum_g(),
                    rhs: expected_g,
                },
            ));
        }
        let expected_h = t * k - banked_update;
        if record.state.sum_h() != expected_h {
            return Ok(CheckReport::fail(
                AGE_ACCOUNTING,
                instance,
                Violation {
                    t: record.state.t,
                    k: None,
                    lhs: record.state.sum_h(),
                    rhs: expected_h,
                },
            ));
        }
        banked_sampling += record.sampling_reduction;
        banked_update += record.update_reduction;
    }
    Ok(CheckReport::pass(AGE_ACCOUNTING, instance))
}

/// Verdicts the precedence inequality on an errorless trajectory: what the
/// destinations have drained through slot `t` never exceeds what the relay
/// had gained through slot `t-1`.
pub fn check_reduction_precedence(trajectory: &Trajectory) -> Result<CheckReport, TheoryError> {
    require_errorless(trajectory, REDUCTION_PRECEDENCE)?;
    let instance = instance_label(trajectory.cfg());
    let mut sampled_before = 0u64;
    let mut drained_through = 0u64;
    for record in trajectory.records() {
        drained_through += record.update_reduction;
        if sampled_before < drained_through {
            return Ok(CheckReport::fail(
                REDUCTION_PRECEDENCE,
                instance,
                Violation {
                    t: record.state.t,
                    k: None,
                    lhs: sampled_before,
                    rhs: drained_through,
                },
            ));
        }
        sampled_before += record.sampling_reduction;
    }
    Ok(CheckReport::pass(REDUCTION_PRECEDENCE, instance))
}

/// Verdicts the two conditions characterizing minimum-age schedules of an
/// errorless symmetric instance: (a) the trajectory's doubly accumulated
/// sampling reduction attains the exhaustive maximum over all schedules,
/// and (b) the precedence inequality holds with equality at every slot.
/// The aggregate condition (a) is attributed to the final slot when it
/// fails.
pub fn check_optimality_conditions(
    cfg: &NetworkConfig,
    trajectory: &Trajectory,
    search_budget: u64,
) -> Result<CheckReport, TheoryError> {
    assert_eq!(cfg, trajectory.cfg(), "trajectory recorded on a different instance");
    require_errorless(trajectory, OPTIMALITY_CONDITIONS)?;
    if !cfg.is_symmetric() {
        return Err(TheoryError::AsymmetricInstance {
            what: format!(
                "{OPTIMALITY_CONDITIONS} was given {}; the characterization assumes \
                 equal weights",
                instance_label(cfg)
            ),
        });
    }
    let instance = instance_label(cfg);
    let records = trajectory.records();
    let horizon = records.len() as u64;

    let observed: u64 = records
        .iter()
        .enumerate()
        .map(|(i, record)| {
            let tau = i as u64 + 1;
            record.sampling_reduction * horizon.saturating_sub(tau + 1)
        })
        .sum();
    let best = match maximum_double_accumulated_sampling(cfg, search_budget) {
        Ok(best) => best,
        Err(PolicyError::SearchBudgetExceeded { budget, required }) => {
            return Err(TheoryError::SearchBudgetExceeded { budget, required })
        }
        Err(other) => unreachable!("errorless instance was pre-checked: {other}"),
    };
    if observed != best {
        return Ok(CheckReport::fail(
            OPTIMALITY_CONDITIONS,
            instance,
            Violation {
                t: trajectory.cfg().horizon(),
                k: None,
                lhs: observed,
                rhs: best,
            },
        ));
    }

    let mut sampled_before = 0u64;
    let mut drained_through = 0u64;
    for record in records {
        drained_through += record.update_reduction;
        if sampled_before != drained_through {
            return Ok(CheckReport::fail(
                OPTIMALITY_CONDITIONS,
                instance,
                Violation {
                    t: record.state.t,
                    k: None,
                    lhs: sampled_before,
                    rhs: drained_through,
                },
            ));
        }
        sampled_before += record.sampling_reduction;
    }
    Ok(CheckReport::pass(OPTIMALITY_CONDITIONS, instance))
}
