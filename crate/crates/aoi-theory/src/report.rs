//! Pass/fail verdicts with mandatory counterexamples.

use std::fmt;

use aoi_core::NetworkConfig;

/// The concrete place where a checked relation failed: the slot, the sensor
/// when one is implicated, and the two sides of the violated relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub t: u32,
    pub k: Option<usize>,
    pub lhs: u64,
    pub rhs: u64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.k {
            Some(k) => write!(
                f,
                "t={},k={},lhs={},rhs={}",
                self.t, k, self.lhs, self.rhs
            ),
            None => write!(f, "t={},k=-,lhs={},rhs={}", self.t, self.lhs, self.rhs),
        }
    }
}

/// One checker's verdict on one instance. A failing report always carries
/// the first violation encountered; the constructors make a bare failure
/// unrepresentable.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    name: String,
    instance: String,
    violation: Option<Violation>,
}

impl CheckReport {
    pub fn pass(name: impl Into<String>, instance: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            instance: instance.into(),
            violation: None,
        }
    }

    pub fn fail(
        name: impl Into<String>,
        instance: impl Into<String>,
        violation: Violation,
    ) -> Self {
        CheckReport {
            name: name.into(),
            instance: instance.into(),
            violation: Some(violation),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn instance(&self) -> &str {
        &self.instance
    }

    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }

    pub fn violation(&self) -> Option<&Violation> {
        self.violation.as_ref()
    }

    /// One whitespace-separated line: name, instance, verdict, and the
    /// counterexample tuple or a dash.
    pub fn render_line(&self) -> String {
        match &self.violation {
            Some(violation) => format!("{} {} fail {violation}", self.name, self.instance),
            None => format!("{} {} pass -", self.name, self.instance),
        }
    }
}

/// Compact single-token instance label used in report lines.
pub fn instance_label(cfg: &NetworkConfig) -> String {
    let p = cfg.sample_outage_probs();
    let q = cfg.update_outage_probs();
    let channels = if cfg.is_errorless() {
        "errorless".to_string()
    } else if p.iter().all(|&x| x == p[0]) && q.iter().all(|&x| x == q[0]) {
        format!("p={},q={}", p[0], q[0])
    } else {
        "mixed-outage".to_string()
    };
    format!(
        "K={},S={},U={},T={},{}",
        cfg.n_sensors(),
        cfg.sample_size(),
        cfg.update_size(),
        cfg.horizon(),
        channels
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_carry_the_verdict_and_counterexample() {
        let pass = CheckReport::pass("age-ordering", "K=5,S=3,U=3,T=6,errorless");
        assert_eq!(
            pass.render_line(),
            "age-ordering K=5,S=3,U=3,T=6,errorless pass -"
        );
        let fail = CheckReport::fail(
            "age-ordering",
            "K=5,S=3,U=3,T=6,errorless",
            Violation {
                t: 3,
                k: Some(1),
                lhs: 2,
                rhs: 3,
            },
        );
        assert_eq!(
            fail.render_line(),
            "age-ordering K=5,S=3,U=3,T=6,errorless fail t=3,k=1,lhs=2,rhs=3"
        );
        assert!(!fail.passed());
        assert_eq!(fail.violation().unwrap().t, 3);
    }

    #[test]
    fn aggregate_violations_render_a_dash_for_the_sensor() {
        let fail = CheckReport::fail(
            "reduction-precedence",
            "K=3,S=1,U=1,T=4,errorless",
            Violation {
                t: 4,
                k: None,
                lhs: 3,
                rhs: 5,
            },
        );
        assert_eq!(
            fail.render_line(),
            "reduction-precedence K=3,S=1,U=1,T=4,errorless fail t=4,k=-,lhs=3,rhs=5"
        );
    }

    #[test]
    fn instance_labels_summarize_the_channel_model() {
        let errorless = NetworkConfig::errorless_symmetric(5, 3, 3, 6).unwrap();
        assert_eq!(instance_label(&errorless), "K=5,S=3,U=3,T=6,errorless");
        let lossy = NetworkConfig::symmetric(3, 1, 1, 4, 0.1, 0.2).unwrap();
        assert_eq!(instance_label(&lossy), "K=3,S=1,U=1,T=4,p=0.1,q=0.2");
        let mixed = NetworkConfig::new(
            3,
            1,
            1,
            4,
            vec![0.5, 0.3, 0.2],
            vec![0.1, 0.2, 0.3],
            vec![0.3, 0.2, 0.1],
        )
        .unwrap();
        assert_eq!(instance_label(&mixed), "K=3,S=1,U=1,T=4,mixed-outage");
    }
}
