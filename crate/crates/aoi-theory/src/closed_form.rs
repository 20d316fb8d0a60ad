//! Minimum attainable age sums of errorless symmetric instances.
//!
//! The primary quantity is the accumulation identity: the age sum at slot
//! `t` equals `t*K` minus every reduction banked strictly before `t`, and
//! the best possible reductions ramp linearly until the whole population is
//! covered. The widely quoted piecewise expressions with an indicator on
//! `t` agree with this form in the steady regime but are ambiguous at the
//! ramp boundary, so the accumulation form is what these functions compute.

use crate::error::TheoryError;

fn require(condition: bool, what: impl FnOnce() -> String) -> Result<(), TheoryError> {
    if condition {
        Ok(())
    } else {
        Err(TheoryError::Domain { what: what() })
    }
}

fn check_pair(k: u64, size: u64, role: &str) -> Result<(), TheoryError> {
    require(size >= 1, || format!("{role} must be at least 1, got {size}"))?;
    require(size < k, || {
        format!("{role} must be smaller than the sensor count {k}, got {size}")
    })
}

/// First slot at which every sensor has been sampled at least once under the
/// best schedule: `ceil(K / S)`.
pub fn relay_fill_time(k: u64, s: u64) -> Result<u64, TheoryError> {
    check_pair(k, s, "sample size")?;
    Ok(k.div_ceil(s))
}

/// First slot at which every destination has received a post-initial sample:
/// `ceil(K / U) + 1`. One slot later than the relay analogue because a value
/// must reach the relay before it can be forwarded.
pub fn update_drain_time(k: u64, u: u64) -> Result<u64, TheoryError> {
    check_pair(k, u, "update size")?;
    Ok(k.div_ceil(u) + 1)
}

/// Sum of `min(j * step, k)` for `j = 0..=n`.
fn capped_ramp_sum(step: u64, k: u64, n: u128) -> u128 {
    let q = u128::from(k / step);
    let m = n.min(q);
    u128::from(step) * m * (m + 1) / 2 + (n - m) * u128::from(k)
}

/// Minimum total relay age at slot `t` over all schedules of an errorless
/// instance with `k` sensors sampled `s` at a time.
pub fn min_sum_g(k: u64, s: u64, t: u64) -> Result<u64, TheoryError> {
    check_pair(k, s, "sample size")?;
    require(t >= 1, || format!("slot must be at least 1, got {t}"))?;
    let banked = capped_ramp_sum(s, k, u128::from(t - 1));
    let total = u128::from(t) * u128::from(k) - banked;
    u64::try_from(total).map_err(|_| TheoryError::Domain {
        what: format!("age sum overflows at k={k}, t={t}"),
    })
}

/// Minimum total destination age at slot `t` over all schedules of an
/// errorless instance with `k` sensors updated `u` at a time.
pub fn min_sum_h(k: u64, u: u64, t: u64) -> Result<u64, TheoryError> {
    check_pair(k, u, "update size")?;
    require(t >= 1, || format!("slot must be at least 1, got {t}"))?;
    let banked = if t == 1 {
        0
    } else {
        capped_ramp_sum(u, k, u128::from(t - 2))
    };
    let total = u128::from(t) * u128::from(k) - banked;
    u64::try_from(total).map_err(|_| TheoryError::Domain {
        what: format!("age sum overflows at k={k}, t={t}"),
    })
}

/// Reductions the greedy schedule realizes at slot `t` of an errorless
/// instance: `min(t*S, K)` at the relay and `min((t-1)*U, K)` at the
/// destinations. Panics outside the domain shared with the closed forms.
pub fn greedy_reduction_formulas(k: u64, s: u64, u: u64, t: u64) -> (u64, u64) {
    check_pair(k, s, "sample size").unwrap();
    check_pair(k, u, "update size").unwrap();
    assert!(t >= 1, "slot must be at least 1, got {t}");
    let sampling = (t.saturating_mul(s)).min(k);
    let updating = ((t - 1).saturating_mul(u)).min(k);
    (sampling, updating)
}
