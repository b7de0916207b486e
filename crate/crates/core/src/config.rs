//! JSON configuration for sweeps and single-state evaluation.
//!
//! Sweep config:
//!
//! ```json
//! {
//!   "hamiltonian": {"b1": 0.3, "b2": -0.7, "j": 0, "jz": 1, "k": 0.2,
//!                   "k1": -0.1, "k2": 0.22, "dz": 0.32, "gamma": -0.87, "lambda": 0.31},
//!   "axis": "temperature",
//!   "grid": {"start": 0.05, "stop": 3.0, "points": 120},
//!   "curves": [{"label": "g0.2", "channel": {"kind": "dephasing", "gamma_a": 0.2, "gamma_b": 0.2}}],
//!   "measures": ["negativity", "discord"],
//!   "log_base": "natural"
//! }
//! ```
//!
//! `axis` defaults to `"temperature"`, `grid.points` to 100 and `log_base`
//! to `"natural"`. Time-axis sweeps take `"temperature"` and curves with
//! `rate_a`/`rate_b` instead of `gamma_a`/`gamma_b`.
//!
//! State config: `hamiltonian`, `temperature` and an optional `channel`
//! given either as gammas or as `rate_a`/`rate_b`/`time`.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use thiserror::Error;

use crate::channels::{evolved_closed_form, ChannelConfig, ChannelKind, DecayLaw};
use crate::correlations::LogBase;
use crate::model::ModelParams;
use crate::sweep::{Axis, Curve, Grid, InvalidSpec, Measure, SweepSpec};
use crate::thermal::{gibbs_closed_form, DensityMatrix6, Temperature};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid config: {message}")]
    Validation { field: String, message: String },
}

impl ConfigError {
    fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError::Validation { field: field.into(), message: message.into() }
    }
}

impl From<InvalidSpec> for ConfigError {
    fn from(e: InvalidSpec) -> Self {
        ConfigError::Validation { field: e.field, message: e.message }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChannel {
    kind: ChannelKind,
    gamma_a: Option<f64>,
    gamma_b: Option<f64>,
    rate_a: Option<f64>,
    rate_b: Option<f64>,
    time: Option<f64>,
}

enum ChannelForm {
    Fixed(ChannelConfig),
    Rates { kind: ChannelKind, rate_a: f64, rate_b: f64, time: Option<f64> },
}

impl RawChannel {
    fn resolve(&self, field: &str) -> Result<ChannelForm, ConfigError> {
        let has_gamma = self.gamma_a.is_some() || self.gamma_b.is_some();
        let has_rate = self.rate_a.is_some() || self.rate_b.is_some() || self.time.is_some();
        let require = |value: Option<f64>, name: &str| {
            value.ok_or_else(|| ConfigError::validation(format!("{field}.{name}"), format!("{field}.{name} is required")))
        };
        match (has_gamma, has_rate) {
            (true, true) => Err(ConfigError::validation(
                field,
                format!("{field} mixes gamma_a/gamma_b with rate_a/rate_b/time"),
            )),
            (false, false) => Err(ConfigError::validation(
                field,
                format!("{field} needs gamma_a/gamma_b or rate_a/rate_b"),
            )),
            (true, false) => {
                let gamma_a = require(self.gamma_a, "gamma_a")?;
                let gamma_b = require(self.gamma_b, "gamma_b")?;
                for (name, value) in [("gamma_a", gamma_a), ("gamma_b", gamma_b)] {
                    if !(0.0..=1.0).contains(&value) {
                        return Err(ConfigError::validation(name, format!("{name} out of [0,1]: {value}")));
                    }
                }
                let cfg = ChannelConfig::new(self.kind, gamma_a, gamma_b)
                    .map_err(|e| ConfigError::validation(field, e.to_string()))?;
                Ok(ChannelForm::Fixed(cfg))
            }
            (false, true) => {
                let rate_a = require(self.rate_a, "rate_a")?;
                let rate_b = require(self.rate_b, "rate_b")?;
                for (name, value) in [("rate_a", rate_a), ("rate_b", rate_b)] {
                    if !(value.is_finite() && value >= 0.0) {
                        return Err(ConfigError::validation(name, format!("{name} must be non-negative: {value}")));
                    }
                }
                Ok(ChannelForm::Rates { kind: self.kind, rate_a, rate_b, time: self.time })
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    label: Option<String>,
    channel: RawChannel,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    hamiltonian: Option<ModelParams>,
    axis: Option<Axis>,
    grid: Option<Grid>,
    curves: Option<Vec<RawCurve>>,
    measures: Option<Vec<Measure>>,
    log_base: Option<LogBase>,
    temperature: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawState {
    hamiltonian: Option<ModelParams>,
    temperature: Option<f64>,
    channel: Option<RawChannel>,
}

/// A single thermal state, optionally passed through a channel.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpec {
    pub params: ModelParams,
    pub temperature: f64,
    pub channel: Option<ChannelConfig>,
}

impl StateSpec {
    pub fn build(&self) -> crate::Result<DensityMatrix6> {
        let thermal = gibbs_closed_form(&self.params, Temperature::new(self.temperature)?)?;
        match &self.channel {
            Some(cfg) => evolved_closed_form(&thermal, cfg),
            None => Ok(thermal),
        }
    }
}

fn parse<T: DeserializeOwned>(text: &str) -> Result<T, ConfigError> {
    serde_json::from_str(text).map_err(|e| ConfigError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn read(path: &Path) -> Result<String, ConfigError> {
    std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn hamiltonian(raw: Option<ModelParams>) -> Result<ModelParams, ConfigError> {
    let params = raw.ok_or_else(|| ConfigError::validation("hamiltonian", "missing required key \"hamiltonian\""))?;
    params.validate().map_err(|e| ConfigError::validation("hamiltonian", e.to_string()))?;
    Ok(params)
}

fn default_label(form: &ChannelForm) -> String {
    match form {
        ChannelForm::Fixed(cfg) => format!("{}_ga{}_gb{}", cfg.kind().label(), cfg.gamma_a(), cfg.gamma_b()),
        ChannelForm::Rates { kind, rate_a, rate_b, .. } => format!("{}_ra{rate_a}_rb{rate_b}", kind.label()),
    }
}

pub fn parse_sweep_config(text: &str) -> Result<SweepSpec, ConfigError> {
    let raw: RawSweep = parse(text)?;
    let params = hamiltonian(raw.hamiltonian)?;
    let axis = raw.axis.unwrap_or(Axis::Temperature);
    let grid = raw.grid.ok_or_else(|| ConfigError::validation("grid", "missing required key \"grid\""))?;
    let raw_curves = raw.curves.ok_or_else(|| ConfigError::validation("curves", "missing required key \"curves\""))?;
    let measures = raw.measures.ok_or_else(|| ConfigError::validation("measures", "missing required key \"measures\""))?;
    if axis == Axis::Temperature && raw.temperature.is_some() {
        return Err(ConfigError::validation("temperature", "temperature-axis sweeps take no fixed temperature"));
    }

    let mut curves = Vec::with_capacity(raw_curves.len());
    for (i, rc) in raw_curves.iter().enumerate() {
        let field = format!("curves[{i}].channel");
        let form = rc.channel.resolve(&field)?;
        let label = rc.label.clone().unwrap_or_else(|| default_label(&form));
        let curve = match form {
            ChannelForm::Fixed(cfg) => Curve::fixed(label, cfg),
            ChannelForm::Rates { time: Some(_), .. } => {
                return Err(ConfigError::validation(
                    format!("{field}.time"),
                    "time is the sweep axis and cannot be fixed per curve",
                ))
            }
            ChannelForm::Rates { kind, rate_a, rate_b, time: None } => Curve::decay(label, kind, rate_a, rate_b),
        };
        curves.push(curve);
    }

    let spec = SweepSpec {
        axis,
        grid,
        curves,
        measures,
        params,
        log_base: raw.log_base.unwrap_or_default(),
        temperature: raw.temperature,
    };
    spec.validate()?;
    Ok(spec)
}

pub fn load_config(path: &Path) -> Result<SweepSpec, ConfigError> {
    parse_sweep_config(&read(path)?)
}

pub fn parse_state_config(text: &str) -> Result<StateSpec, ConfigError> {
    let raw: RawState = parse(text)?;
    let params = hamiltonian(raw.hamiltonian)?;
    let temperature = raw
        .temperature
        .ok_or_else(|| ConfigError::validation("temperature", "missing required key \"temperature\""))?;
    Temperature::new(temperature).map_err(|e| ConfigError::validation("temperature", e.to_string()))?;
    let channel = match &raw.channel {
        None => None,
        Some(rc) => Some(match rc.resolve("channel")? {
            ChannelForm::Fixed(cfg) => cfg,
            ChannelForm::Rates { kind, rate_a, rate_b, time } => {
                let time = time.ok_or_else(|| ConfigError::validation("channel.time", "channel.time is required"))?;
                DecayLaw { rate_a, rate_b, time }
                    .channel(kind)
                    .map_err(|e| ConfigError::validation("channel.time", e.to_string()))?
            }
        }),
    };
    Ok(StateSpec { params, temperature, channel })
}

pub fn load_state_config(path: &Path) -> Result<StateSpec, ConfigError> {
    parse_state_config(&read(path)?)
}
