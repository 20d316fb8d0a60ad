use crate::error::CoreError;

/// Immutable description of one network instance.
///
/// Holds the sensor count `K`, the per-slot selection limits `S` (sensors the
/// relay samples) and `U` (sensors whose updates are forwarded to the
/// destination), the horizon `T` in slots, the per-sensor importance weights,
/// and the per-sensor outage probabilities `p` (sensor to relay) and `q`
/// (relay to destination).
///
/// Instances are validated on construction and never mutated afterwards, so a
/// `NetworkConfig` can be shared freely between policies, rollouts, and
/// checkers.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkConfig {
    k: usize,
    s: usize,
    u: usize,
    horizon: u32,
    weights: Vec<f64>,
    p: Vec<f64>,
    q: Vec<f64>,
}

impl NetworkConfig {
    /// Builds a fully general instance.
    ///
    /// Requires `K >= 2`, `1 <= S < K`, `1 <= U < K`, `T >= 1`, weights of
    /// length `K` that are finite and nonnegative with a positive sum, and
    /// outage probabilities of length `K` each in `[0, 1)`.
    pub fn new(
        k: usize,
        s: usize,
        u: usize,
        horizon: u32,
        weights: Vec<f64>,
        p: Vec<f64>,
        q: Vec<f64>,
    ) -> Result<Self, CoreError> {
        if k < 2 {
            return Err(CoreError::TooFewSensors { k });
        }
        if s < 1 || s >= k {
            return Err(CoreError::BadSelectionSize {
                name: "S",
                value: s,
                k,
            });
        }
        if u < 1 || u >= k {
            return Err(CoreError::BadSelectionSize {
                name: "U",
                value: u,
                k,
            });
        }
        if horizon < 1 {
            return Err(CoreError::BadHorizon);
        }
        if weights.len() != k {
            return Err(CoreError::WeightLengthMismatch {
                k,
                len: weights.len(),
            });
        }
        if !weights.iter().all(|w| w.is_finite() && *w >= 0.0)
            || weights.iter().sum::<f64>() <= 0.0
        {
            return Err(CoreError::BadWeights);
        }
        for (name, probs) in [("p", &p), ("q", &q)] {
            if probs.len() != k {
                return Err(CoreError::ProbabilityLengthMismatch {
                    name,
                    k,
                    len: probs.len(),
                });
            }
            for (index, &value) in probs.iter().enumerate() {
                if !value.is_finite() || !(0.0..1.0).contains(&value) {
                    return Err(CoreError::BadProbability { name, index, value });
                }
            }
        }
        Ok(Self {
            k,
            s,
            u,
            horizon,
            weights,
            p,
            q,
        })
    }

    /// Symmetric instance: uniform weights and the same scalar outage
    /// probabilities for every sensor.
    pub fn symmetric(
        k: usize,
        s: usize,
        u: usize,
        horizon: u32,
        p: f64,
        q: f64,
    ) -> Result<Self, CoreError> {
        Self::new(
            k,
            s,
            u,
            horizon,
            Self::uniform_weights(k),
            vec![p; k],
            vec![q; k],
        )
    }

    /// Symmetric instance with perfectly reliable links.
    pub fn errorless_symmetric(k: usize, s: usize, u: usize, horizon: u32) -> Result<Self, CoreError> {
        Self::symmetric(k, s, u, horizon, 0.0, 0.0)
    }

    /// The uniform weight vector `1/K` per sensor.
    pub fn uniform_weights(k: usize) -> Vec<f64> {
        vec![1.0 / k as f64; k]
    }

    pub fn n_sensors(&self) -> usize {
        self.k
    }

    /// Number of sensors sampled by the relay each slot.
    pub fn sample_size(&self) -> usize {
        self.s
    }

    /// Number of sensors whose updates are forwarded each slot.
    pub fn update_size(&self) -> usize {
        self.u
    }

    /// Horizon `T` in slots.
    pub fn horizon(&self) -> u32 {
        self.horizon
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Outage probability on the sensor-to-relay link of sensor `index`.
    pub fn sample_outage_prob(&self, index: usize) -> f64 {
        self.p[index]
    }

    /// Outage probability on the relay-to-destination link for sensor `index`.
    pub fn update_outage_prob(&self, index: usize) -> f64 {
        self.q[index]
    }

    pub fn sample_outage_probs(&self) -> &[f64] {
        &self.p
    }

    pub fn update_outage_probs(&self) -> &[f64] {
        &self.q
    }

    /// True when every link is reliable (`p = q = 0` for all sensors).
    pub fn is_errorless(&self) -> bool {
        self.p.iter().all(|&v| v == 0.0) && self.q.iter().all(|&v| v == 0.0)
    }

    /// True when weights and outage probabilities are sensor-independent.
    pub fn is_symmetric(&self) -> bool {
        let all_equal = |xs: &[f64]| xs.windows(2).all(|w| w[0] == w[1]);
        all_equal(&self.weights) && all_equal(&self.p) && all_equal(&self.q)
    }

    /// Shortened to a new horizon; everything else unchanged.
    pub fn with_horizon(&self, horizon: u32) -> Result<Self, CoreError> {
        Self::new(
            self.k,
            self.s,
            self.u,
            horizon,
            self.weights.clone(),
            self.p.clone(),
            self.q.clone(),
        )
    }
}
