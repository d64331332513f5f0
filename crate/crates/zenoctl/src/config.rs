//! Run configuration: experiment presets, a JSON config document and
//! command-line overrides, resolved in that order.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde_json::{Map, Value};
use thiserror::Error;
use zeno_core::bae::ModelParams;
use zeno_core::engine::Mode;
use zeno_core::qlin::MAX_QUBITS;

/// Environment variable overriding the pure-state qubit budget.
pub const MAX_QUBITS_ENV: &str = "ZENOCTL_MAX_QUBITS";
/// Upper bound accepted for [`MAX_QUBITS_ENV`].
pub const MAX_QUBITS_LIMIT: usize = 30;
pub const DEFAULT_GRID_POINTS: usize = 400;

/// A configuration problem, tied to the key that caused it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{key}: {message}")]
pub struct ConfigError {
    pub key: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(key: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            key: key.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Experiment {
    Fig1,
    Fig2,
    Sweep,
    Zeno,
    Rate,
    Validate,
}

impl Experiment {
    pub const ALL: [Experiment; 6] = [
        Experiment::Fig1,
        Experiment::Fig2,
        Experiment::Sweep,
        Experiment::Zeno,
        Experiment::Rate,
        Experiment::Validate,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Experiment::Fig1 => "fig1",
            Experiment::Fig2 => "fig2",
            Experiment::Sweep => "sweep",
            Experiment::Zeno => "zeno",
            Experiment::Rate => "rate",
            Experiment::Validate => "validate",
        }
    }

    /// Experiments that emit a probability-versus-angle curve.
    pub fn is_curve(self) -> bool {
        matches!(self, Experiment::Fig1 | Experiment::Fig2 | Experiment::Sweep)
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Experiment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.as_str() == s)
            .ok_or_else(|| format!("unknown experiment `{s}` (expected fig1|fig2|sweep|zeno|rate|validate)"))
    }
}

pub fn parse_mode(s: &str) -> Result<Mode, String> {
    match s {
        "pure_state" => Ok(Mode::PureState),
        "channel" => Ok(Mode::Channel),
        _ => Err(format!("unknown mode `{s}` (expected pure_state|channel)")),
    }
}

/// Which two-qubit coupling each evaluation applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum InteractionKind {
    #[default]
    BeliefAction,
    IdealDephasing,
}

impl InteractionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            InteractionKind::BeliefAction => "belief_action",
            InteractionKind::IdealDephasing => "ideal_dephasing",
        }
    }
}

pub fn parse_interaction(s: &str) -> Result<InteractionKind, String> {
    match s {
        "belief_action" => Ok(InteractionKind::BeliefAction),
        "ideal_dephasing" => Ok(InteractionKind::IdealDephasing),
        _ => Err(format!(
            "unknown interaction `{s}` (expected belief_action|ideal_dephasing)"
        )),
    }
}

/// Optional settings from one source (config file or flags).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub experiment: Option<Experiment>,
    pub mu0: Option<f64>,
    pub mu1: Option<f64>,
    pub gamma: Option<f64>,
    pub t_prime: Option<f64>,
    pub b_first: Option<f64>,
    pub b_total: Option<f64>,
    pub grid_points: Option<usize>,
    pub n_interactions: Option<usize>,
    pub mode: Option<Mode>,
    pub interaction: Option<InteractionKind>,
    /// Replaces the belief-action generator with raw 4x4 real rows.
    pub generator_override: Option<Vec<Vec<f64>>>,
    pub output_path: Option<PathBuf>,
    pub emit_plot_script: Option<bool>,
}

impl Overrides {
    /// Parses a JSON config document. Unknown keys and ill-typed values are
    /// reported by key name.
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let doc: Value =
            serde_json::from_str(text).map_err(|e| ConfigError::new("config", format!("invalid JSON: {e}")))?;
        let obj = doc
            .as_object()
            .ok_or_else(|| ConfigError::new("config", "top level must be a JSON object"))?;
        let mut out = Overrides::default();
        for (key, value) in obj {
            match key.as_str() {
                "experiment" => {
                    out.experiment = Some(string(key, value)?.parse().map_err(|e| ConfigError::new(key, e))?)
                }
                "model" => out.read_model(value)?,
                "b_first" => out.b_first = Some(number(key, value)?),
                "b_total" => out.b_total = Some(number(key, value)?),
                "grid_points" => out.grid_points = Some(count(key, value)?),
                "n_interactions" => out.n_interactions = Some(count(key, value)?),
                "mode" => out.mode = Some(parse_mode(string(key, value)?).map_err(|e| ConfigError::new(key, e))?),
                "interaction" => {
                    out.interaction =
                        Some(parse_interaction(string(key, value)?).map_err(|e| ConfigError::new(key, e))?)
                }
                "generator_override" => out.generator_override = Some(rows(key, value)?),
                "output_path" => out.output_path = Some(PathBuf::from(string(key, value)?)),
                "emit_plot_script" => {
                    out.emit_plot_script = Some(
                        value
                            .as_bool()
                            .ok_or_else(|| ConfigError::new(key, "expected a boolean"))?,
                    )
                }
                _ => return Err(ConfigError::new(key, "unknown configuration key")),
            }
        }
        Ok(out)
    }

    fn read_model(&mut self, value: &Value) -> Result<(), ConfigError> {
        let obj: &Map<String, Value> = value
            .as_object()
            .ok_or_else(|| ConfigError::new("model", "expected an object with mu0, mu1, gamma, t_prime"))?;
        for (key, v) in obj {
            let slot = match key.as_str() {
                "mu0" => &mut self.mu0,
                "mu1" => &mut self.mu1,
                "gamma" => &mut self.gamma,
                "t_prime" => &mut self.t_prime,
                _ => return Err(ConfigError::new(format!("model.{key}"), "unknown model parameter")),
            };
            *slot = Some(number(key, v)?);
        }
        Ok(())
    }

    /// Fields set in `other` replace those in `self`.
    pub fn merge(self, other: Overrides) -> Overrides {
        Overrides {
            experiment: other.experiment.or(self.experiment),
            mu0: other.mu0.or(self.mu0),
            mu1: other.mu1.or(self.mu1),
            gamma: other.gamma.or(self.gamma),
            t_prime: other.t_prime.or(self.t_prime),
            b_first: other.b_first.or(self.b_first),
            b_total: other.b_total.or(self.b_total),
            grid_points: other.grid_points.or(self.grid_points),
            n_interactions: other.n_interactions.or(self.n_interactions),
            mode: other.mode.or(self.mode),
            interaction: other.interaction.or(self.interaction),
            generator_override: other.generator_override.or(self.generator_override),
            output_path: other.output_path.or(self.output_path),
            emit_plot_script: other.emit_plot_script.or(self.emit_plot_script),
        }
    }
}

fn string<'a>(key: &str, v: &'a Value) -> Result<&'a str, ConfigError> {
    v.as_str().ok_or_else(|| ConfigError::new(key, "expected a string"))
}

fn number(key: &str, v: &Value) -> Result<f64, ConfigError> {
    v.as_f64().ok_or_else(|| ConfigError::new(key, "expected a number"))
}

fn count(key: &str, v: &Value) -> Result<usize, ConfigError> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| ConfigError::new(key, "expected a non-negative integer"))
}

fn rows(key: &str, v: &Value) -> Result<Vec<Vec<f64>>, ConfigError> {
    let bad = || ConfigError::new(key, "expected an array of numeric rows");
    v.as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|x| x.as_f64().ok_or_else(bad))
                .collect()
        })
        .collect()
}

/// A fully resolved, validated configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub model: ModelParams,
    pub b_first: f64,
    pub b_total: f64,
    pub grid_points: usize,
    pub n_interactions: usize,
    pub mode: Mode,
    pub interaction: InteractionKind,
    pub generator_override: Option<Vec<Vec<f64>>>,
    pub output_path: Option<PathBuf>,
    pub emit_plot_script: bool,
    pub max_qubits: usize,
}

impl RunConfig {
    /// Preset values for an experiment before any overrides.
    pub fn preset(experiment: Experiment) -> Self {
        let fig = |gamma, mu0, mu1, b_total| RunConfig {
            experiment,
            model: ModelParams {
                mu0,
                mu1,
                gamma,
                t_prime: std::f64::consts::FRAC_PI_2,
            },
            b_first: 0.2,
            b_total,
            grid_points: DEFAULT_GRID_POINTS,
            n_interactions: 1,
            mode: Mode::PureState,
            interaction: InteractionKind::BeliefAction,
            generator_override: None,
            output_path: None,
            emit_plot_script: false,
            max_qubits: MAX_QUBITS,
        };
        match experiment {
            Experiment::Fig2 => fig(2.09, 1.4, 1.4, 0.8),
            _ => fig(0.0, 0.3, 0.6, 0.6),
        }
    }

    /// Preset for `experiment`, then `overrides`, then validation.
    /// `max_qubits_env` is the raw value of [`MAX_QUBITS_ENV`], if set.
    pub fn resolve(experiment: Experiment, o: Overrides, max_qubits_env: Option<&str>) -> Result<Self, ConfigError> {
        let mut c = Self::preset(experiment);
        c.model.mu0 = o.mu0.unwrap_or(c.model.mu0);
        c.model.mu1 = o.mu1.unwrap_or(c.model.mu1);
        c.model.gamma = o.gamma.unwrap_or(c.model.gamma);
        c.model.t_prime = o.t_prime.unwrap_or(c.model.t_prime);
        c.b_first = o.b_first.unwrap_or(c.b_first);
        c.b_total = o.b_total.unwrap_or(c.b_total);
        c.grid_points = o.grid_points.unwrap_or(c.grid_points);
        c.n_interactions = o.n_interactions.unwrap_or(c.n_interactions);
        c.mode = o.mode.unwrap_or(c.mode);
        c.interaction = o.interaction.unwrap_or(c.interaction);
        c.generator_override = o.generator_override;
        c.output_path = o.output_path;
        c.emit_plot_script = o.emit_plot_script.unwrap_or(false);
        if let Some(raw) = max_qubits_env {
            c.max_qubits = raw
                .trim()
                .parse::<usize>()
                .ok()
                .filter(|q| (1..=MAX_QUBITS_LIMIT).contains(q))
                .ok_or_else(|| {
                    ConfigError::new(
                        MAX_QUBITS_ENV,
                        format!("expected an integer in 1..={MAX_QUBITS_LIMIT}, got `{raw}`"),
                    )
                })?;
        }
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let m = &self.model;
        for (key, v) in [
            ("mu0", m.mu0),
            ("mu1", m.mu1),
            ("gamma", m.gamma),
            ("t_prime", m.t_prime),
            ("b_first", self.b_first),
            ("b_total", self.b_total),
        ] {
            if !v.is_finite() {
                return Err(ConfigError::new(key, format!("must be finite, got {v}")));
            }
        }
        if m.t_prime < 0.0 {
            return Err(ConfigError::new(
                "t_prime",
                format!("must be non-negative, got {}", m.t_prime),
            ));
        }
        if self.b_total < 0.0 {
            return Err(ConfigError::new(
                "b_total",
                format!("must be non-negative, got {}", self.b_total),
            ));
        }
        if self.experiment != Experiment::Zeno {
            if self.b_first < 0.0 {
                return Err(ConfigError::new(
                    "b_first",
                    format!("must be non-negative, got {}", self.b_first),
                ));
            }
            if self.b_first > self.b_total {
                return Err(ConfigError::new(
                    "b_first",
                    format!("must not exceed b_total ({} > {})", self.b_first, self.b_total),
                ));
            }
        }
        if self.grid_points < 2 {
            return Err(ConfigError::new(
                "grid_points",
                format!("must be at least 2, got {}", self.grid_points),
            ));
        }
        match self.experiment {
            Experiment::Fig1 | Experiment::Fig2 | Experiment::Sweep | Experiment::Rate if self.n_interactions > 1 => {
                return Err(ConfigError::new(
                    "n_interactions",
                    format!(
                        "{} supports 0 or 1 interactions, got {}",
                        self.experiment, self.n_interactions
                    ),
                ));
            }
            _ => {}
        }
        let sequence = matches!(self.experiment, Experiment::Zeno | Experiment::Validate);
        if sequence && self.mode == Mode::PureState && self.n_interactions + 1 > self.max_qubits {
            return Err(ConfigError::new(
                "n_interactions",
                format!(
                    "pure_state mode holds at most {} qubits, so at most {} interactions (got {}); use channel mode",
                    self.max_qubits,
                    self.max_qubits - 1,
                    self.n_interactions
                ),
            ));
        }
        if let Some(rows) = &self.generator_override {
            if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
                return Err(ConfigError::new("generator_override", "expected 4 rows of 4 numbers"));
            }
            if rows.iter().flatten().any(|x| !x.is_finite()) {
                return Err(ConfigError::new("generator_override", "entries must be finite"));
            }
            if self.interaction == InteractionKind::IdealDephasing {
                return Err(ConfigError::new(
                    "generator_override",
                    "cannot be combined with ideal_dephasing",
                ));
            }
        }
        if self.emit_plot_script {
            if self.output_path.is_none() {
                return Err(ConfigError::new(
                    "emit_plot_script",
                    "needs output_path (--out) to reference",
                ));
            }
            if !(self.experiment.is_curve() || self.experiment == Experiment::Zeno) {
                return Err(ConfigError::new(
                    "emit_plot_script",
                    format!("no plot is defined for the {} experiment", self.experiment),
                ));
            }
        }
        Ok(())
    }
}
