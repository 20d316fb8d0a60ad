//! Experiment configuration in a `key=value` token format.
//!
//! Tokens are whitespace-separated and may span multiple lines; `#` starts
//! a comment. Every diagnostic names the 1-based line of the first
//! offending token. `render_config` emits a canonical single line that
//! parses back to an equal configuration.

use std::path::PathBuf;

use aoi_core::{CoreError, NetworkConfig};

use crate::error::CliError;

/// Which policy to run; `dqn` is accepted as an input alias for the learned
/// tabular policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolicyChoice {
    Greedy,
    Random,
    Dp,
    Q,
}

impl PolicyChoice {
    pub fn token(self) -> &'static str {
        match self {
            PolicyChoice::Greedy => "greedy",
            PolicyChoice::Random => "random",
            PolicyChoice::Dp => "dp",
            PolicyChoice::Q => "q",
        }
    }

    fn parse(token: &str) -> Option<Self> {
        match token {
            "greedy" => Some(PolicyChoice::Greedy),
            "random" => Some(PolicyChoice::Random),
            "dp" => Some(PolicyChoice::Dp),
            "q" | "dqn" => Some(PolicyChoice::Q),
            _ => None,
        }
    }
}

/// Weight input: the `uniform` keyword or an explicit length-K list.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightsSpec {
    Uniform,
    Explicit(Vec<f64>),
}

impl WeightsSpec {
    pub fn materialize(&self, k: usize) -> Vec<f64> {
        match self {
            WeightsSpec::Uniform => vec![1.0 / k as f64; k],
            WeightsSpec::Explicit(values) => values.clone(),
        }
    }

    fn render(&self) -> String {
        match self {
            WeightsSpec::Uniform => "uniform".to_string(),
            WeightsSpec::Explicit(values) => join_floats(values),
        }
    }
}

/// Outage probability input: one scalar broadcast to every sensor or an
/// explicit length-K list.
#[derive(Debug, Clone, PartialEq)]
pub enum ProbSpec {
    Scalar(f64),
    PerSensor(Vec<f64>),
}

impl ProbSpec {
    pub fn materialize(&self, k: usize) -> Vec<f64> {
        match self {
            ProbSpec::Scalar(value) => vec![*value; k],
            ProbSpec::PerSensor(values) => values.clone(),
        }
    }

    fn render(&self) -> String {
        match self {
            ProbSpec::Scalar(value) => format!("{value}"),
            ProbSpec::PerSensor(values) => join_floats(values),
        }
    }
}

fn join_floats(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format!("{v}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// A fully validated experiment: the network instance plus run plumbing.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub network: NetworkConfig,
    pub weights: WeightsSpec,
    pub p: ProbSpec,
    pub q: ProbSpec,
    pub policies: Vec<PolicyChoice>,
    pub n_runs: usize,
    pub seed: u64,
    pub coupled: bool,
    pub out: Option<PathBuf>,
}

const KNOWN_KEYS: [&str; 12] = [
    "K", "S", "U", "T", "weights", "p", "q", "policies", "n_runs", "seed", "coupled", "out",
];

struct RawValue<'a> {
    value: &'a str,
    line: usize,
}

fn config_err(line: usize, message: impl Into<String>) -> CliError {
    CliError::Config {
        line,
        message: message.into(),
    }
}

fn parse_number<T: std::str::FromStr>(raw: &RawValue<'_>, key: &str) -> Result<T, CliError> {
    raw.value.parse().map_err(|_| {
        config_err(
            raw.line,
            format!("{key} wants a number, got \"{}\"", raw.value),
        )
    })
}

fn parse_float_list(raw: &RawValue<'_>, key: &str) -> Result<Vec<f64>, CliError> {
    raw.value
        .split(',')
        .map(|token| {
            token.parse().map_err(|_| {
                config_err(
                    raw.line,
                    format!("{key} holds a malformed number \"{token}\""),
                )
            })
        })
        .collect()
}

fn parse_prob_spec(raw: &RawValue<'_>, key: &str) -> Result<ProbSpec, CliError> {
    if raw.value.contains(',') {
        Ok(ProbSpec::PerSensor(parse_float_list(raw, key)?))
    } else {
        Ok(ProbSpec::Scalar(parse_number(raw, key)?))
    }
}

/// Line to blame when the network constructor rejects the assembled values.
fn network_error_line(err: &CoreError, lines: &ConfigLines) -> usize {
    match err {
        CoreError::TooFewSensors { .. } => lines.k,
        CoreError::BadSelectionSize { name, .. } => {
            if *name == "S" {
                lines.s
            } else {
                lines.u
            }
        }
        CoreError::BadHorizon => lines.t,
        CoreError::WeightLengthMismatch { .. } | CoreError::BadWeights => lines.weights,
        CoreError::ProbabilityLengthMismatch { name, .. }
        | CoreError::BadProbability { name, .. } => {
            if *name == "p" {
                lines.p
            } else {
                lines.q
            }
        }
        _ => lines.k,
    }
}

struct ConfigLines {
    k: usize,
    s: usize,
    u: usize,
    t: usize,
    weights: usize,
    p: usize,
    q: usize,
}

/// Parses the token format into a validated configuration. `K`, `S`, `U`,
/// and `T` are required; everything else defaults (uniform weights,
/// reliable channels, the greedy policy, one run, seed 1, uncoupled, no
/// output path).
pub fn parse_config(text: &str) -> Result<ExperimentConfig, CliError> {
    let mut raw: Vec<(&str, RawValue<'_>)> = Vec::new();
    for (index, line) in text.lines().enumerate() {
        let line_no = index + 1;
        let content = line.split('#').next().unwrap_or("");
        for token in content.split_whitespace() {
            let Some((key, value)) = token.split_once('=') else {
                return Err(config_err(
                    line_no,
                    format!("expected key=value, got \"{token}\""),
                ));
            };
            if !KNOWN_KEYS.contains(&key) {
                return Err(config_err(line_no, format!("unknown key \"{key}\"")));
            }
            if let Some((_, earlier)) = raw.iter().find(|(seen, _)| *seen == key) {
                return Err(config_err(
                    line_no,
                    format!("key \"{key}\" already set on line {}", earlier.line),
                ));
            }
            raw.push((
                key,
                RawValue {
                    value,
                    line: line_no,
                },
            ));
        }
    }

    let find = |key: &str| raw.iter().find(|(k, _)| *k == key).map(|(_, v)| v);
    let required = |key: &str| {
        find(key).ok_or_else(|| config_err(1, format!("missing required key \"{key}\"")))
    };

    let k_raw = required("K")?;
    let s_raw = required("S")?;
    let u_raw = required("U")?;
    let t_raw = required("T")?;
    let k: usize = parse_number(k_raw, "K")?;
    let s: usize = parse_number(s_raw, "S")?;
    let u: usize = parse_number(u_raw, "U")?;
    let horizon: u32 = parse_number(t_raw, "T")?;

    let weights = match find("weights") {
        None => WeightsSpec::Uniform,
        Some(raw) if raw.value == "uniform" => WeightsSpec::Uniform,
        Some(raw) => WeightsSpec::Explicit(parse_float_list(raw, "weights")?),
    };
    let p = match find("p") {
        None => ProbSpec::Scalar(0.0),
        Some(raw) => parse_prob_spec(raw, "p")?,
    };
    let q = match find("q") {
        None => ProbSpec::Scalar(0.0),
        Some(raw) => parse_prob_spec(raw, "q")?,
    };

    let policies = match find("policies") {
        None => vec![PolicyChoice::Greedy],
        Some(raw) => {
            let mut choices = Vec::new();
            for token in raw.value.split(',') {
                let choice = PolicyChoice::parse(token).ok_or_else(|| {
                    config_err(
                        raw.line,
                        format!(
                            "unknown policy \"{token}\" (expected greedy, random, dp, or q)"
                        ),
                    )
                })?;
                if choices.contains(&choice) {
                    return Err(config_err(
                        raw.line,
                        format!("policy \"{}\" listed twice", choice.token()),
                    ));
                }
                choices.push(choice);
            }
            choices
        }
    };

    let n_runs = match find("n_runs") {
        None => 1,
        Some(raw) => {
            let n: usize = parse_number(raw, "n_runs")?;
            if n == 0 {
                return Err(config_err(raw.line, "n_runs must be at least 1"));
            }
            n
        }
    };
    let seed = match find("seed") {
        None => 1,
        Some(raw) => parse_number(raw, "seed")?,
    };
    let coupled = match find("coupled") {
        None => false,
        Some(raw) => match raw.value {
            "true" => true,
            "false" => false,
            other => {
                return Err(config_err(
                    raw.line,
                    format!("coupled wants true or false, got \"{other}\""),
                ))
            }
        },
    };
    let out = find("out").map(|raw| PathBuf::from(raw.value));

    let lines = ConfigLines {
        k: k_raw.line,
        s: s_raw.line,
        u: u_raw.line,
        t: t_raw.line,
        weights: find("weights").map_or(1, |r| r.line),
        p: find("p").map_or(1, |r| r.line),
        q: find("q").map_or(1, |r| r.line),
    };
    let network = NetworkConfig::new(
        k,
        s,
        u,
        horizon,
        weights.materialize(k),
        p.materialize(k),
        q.materialize(k),
    )
    .map_err(|err| config_err(network_error_line(&err, &lines), err.to_string()))?;

    Ok(ExperimentConfig {
        network,
        weights,
        p,
        q,
        policies,
        n_runs,
        seed,
        coupled,
        out,
    })
}

/// Canonical single-line form; `parse_config(render_config(c))` equals `c`.
pub fn render_config(config: &ExperimentConfig) -> String {
    let mut line = format!(
        "K={} S={} U={} T={} weights={} p={} q={} policies={} n_runs={} seed={} coupled={}",
        config.network.n_sensors(),
        config.network.sample_size(),
        config.network.update_size(),
        config.network.horizon(),
        config.weights.render(),
        config.p.render(),
        config.q.render(),
        config
            .policies
            .iter()
            .map(|p| p.token())
            .collect::<Vec<_>>()
            .join(","),
        config.n_runs,
        config.seed,
        config.coupled,
    );
    if let Some(out) = &config.out {
        line.push_str(&format!(" out={}", out.display()));
    }
    line
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expect_line(result: Result<ExperimentConfig, CliError>, line: usize, needle: &str) {
        match result {
            Err(CliError::Config { line: got, message }) => {
                assert_eq!(got, line, "wrong line in: {message}");
                assert!(
                    message.contains(needle),
                    "diagnostic \"{message}\" misses \"{needle}\""
                );
            }
            other => panic!("expected a config diagnostic, got {other:?}"),
        }
    }

    #[test]
    fn the_reference_setups_parse() {
        let errorless = parse_config(
            "K=5 S=3 U=3 T=20 weights=uniform p=0 q=0 policies=greedy,random seed=1 n_runs=1",
        )
        .unwrap();
        assert!(errorless.network.is_errorless());
        assert_eq!(errorless.network.horizon(), 20);
        assert_eq!(
            errorless.policies,
            vec![PolicyChoice::Greedy, PolicyChoice::Random]
        );

        let lossy = parse_config("K=5 S=3 U=3 T=20 p=0.1 q=0.1").unwrap();
        assert_eq!(lossy.network.sample_outage_probs(), &[0.1; 5]);
        assert_eq!(lossy.p, ProbSpec::Scalar(0.1));

        let skewed = parse_config(
            "K=5 S=3 U=3 T=20 weights=0.5,0.3,0.2,0.05,0.05 \
             p=0.1,0.1,0.2,0.2,0.3 q=0.3,0.2,0.2,0.1,0.1",
        )
        .unwrap();
        assert!(!skewed.network.is_symmetric());
        assert_eq!(skewed.network.weights()[0], 0.5);
        assert_eq!(skewed.network.update_outage_probs()[4], 0.1);
    }

    #[test]
    fn diagnostics_carry_the_offending_line() {
        expect_line(
            parse_config("K=3 S=1\nU=1 T=4\nbudget=7"),
            3,
            "unknown key",
        );
        expect_line(parse_config("K=3 S=1 U=1\nT=four"), 2, "wants a number");
        expect_line(
            parse_config("K=5 S=3 U=3 T=6\nweights=0.5,0.5"),
            2,
            "length",
        );
        expect_line(parse_config("K=5 S=3 U=3 T=6\n\np=1.5"), 3, "[0, 1)");
        expect_line(parse_config("K=3 S=1 U=1 T=4 K=4"), 1, "already set");
        expect_line(parse_config("S=1 U=1 T=4"), 1, "missing required key");
        expect_line(
            parse_config("K=3 S=1 U=1 T=4 policies=greedy,sarsa"),
            1,
            "unknown policy",
        );
        expect_line(parse_config("K=3 S=1 U=1 T=4 n_runs=0"), 1, "at least 1");
        expect_line(parse_config("K=3 S=1 U=1 T=4 coupled=yes"), 1, "true or false");
        expect_line(parse_config("K=3 S=3 U=1 T=4"), 1, "S");
    }

    #[test]
    fn comments_and_multi_line_layout_are_accepted() {
        let config = parse_config(
            "# reference lossy setup\nK=5 S=3 U=3\nT=20 # horizon\np=0.1 q=0.1\n",
        )
        .unwrap();
        assert_eq!(config.network.horizon(), 20);
        assert_eq!(config.n_runs, 1);
        assert_eq!(config.seed, 1);
        assert!(!config.coupled);
    }

    #[test]
    fn the_learned_policy_alias_is_accepted_and_canonicalized() {
        let config = parse_config("K=3 S=1 U=1 T=4 policies=dqn").unwrap();
        assert_eq!(config.policies, vec![PolicyChoice::Q]);
        assert!(render_config(&config).contains("policies=q"));
    }

    #[test]
    fn rendering_round_trips() {
        let texts = [
            "K=5 S=3 U=3 T=20 weights=uniform p=0 q=0 policies=greedy,random seed=1 n_runs=1",
            "K=5 S=3 U=3 T=20 p=0.1 q=0.1 policies=greedy,q,random n_runs=10000 seed=17",
            "K=5 S=3 U=3 T=20 weights=0.5,0.3,0.2,0.05,0.05 p=0.1,0.1,0.2,0.2,0.3 \
             q=0.3,0.2,0.2,0.1,0.1 coupled=true out=series.csv",
            "K=2 S=1 U=1 T=3",
        ];
        for text in texts {
            let config = parse_config(text).unwrap();
            let rendered = render_config(&config);
            let reparsed = parse_config(&rendered).unwrap();
            assert_eq!(reparsed, config, "round trip diverged for {text}");
            assert_eq!(render_config(&reparsed), rendered);
        }
    }
}
