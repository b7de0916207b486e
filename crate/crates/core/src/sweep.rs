//! Temperature and time sweeps with CSV output.

use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::channels::{evolved_closed_form, ChannelConfig, ChannelKind, DecayLaw};
use crate::correlations::{discord, mutual_information, negativity_spectral, LogBase};
use crate::error::Error;
use crate::model::ModelParams;
use crate::thermal::{gibbs_closed_form, DensityMatrix6, Temperature};
use crate::tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Temperature,
    Time,
}

impl Axis {
    pub fn label(self) -> &'static str {
        match self {
            Axis::Temperature => "temperature",
            Axis::Time => "time",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    #[serde(default = "Grid::default_points")]
    pub points: usize,
}

impl Grid {
    pub const DEFAULT_POINTS: usize = 100;

    fn default_points() -> usize {
        Self::DEFAULT_POINTS
    }

    /// Evenly spaced values; the last one is exactly `stop`.
    pub fn values(&self) -> Vec<f64> {
        let last = self.points.saturating_sub(1).max(1) as f64;
        (0..self.points)
            .map(|i| {
                if i + 1 == self.points {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * i as f64 / last
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    Negativity,
    Discord,
    MutualInformation,
    Purity,
}

impl Measure {
    pub fn label(self) -> &'static str {
        match self {
            Measure::Negativity => "negativity",
            Measure::Discord => "discord",
            Measure::MutualInformation => "mutual_information",
            Measure::Purity => "purity",
        }
    }

    fn evaluate(self, rho: &DensityMatrix6, base: LogBase) -> crate::Result<f64> {
        match self {
            Measure::Negativity => negativity_spectral(rho),
            Measure::Discord => Ok(discord(rho, base)?.discord),
            Measure::MutualInformation => mutual_information(rho, base),
            Measure::Purity => Ok(rho.purity()),
        }
    }
}

/// Noise applied along one curve: fixed strengths on a temperature axis,
/// decay rates on a time axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveNoise {
    Fixed(ChannelConfig),
    Decay { kind: ChannelKind, rate_a: f64, rate_b: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub label: String,
    pub noise: CurveNoise,
}

impl Curve {
    pub fn fixed(label: impl Into<String>, channel: ChannelConfig) -> Self {
        Self { label: label.into(), noise: CurveNoise::Fixed(channel) }
    }

    pub fn decay(label: impl Into<String>, kind: ChannelKind, rate_a: f64, rate_b: f64) -> Self {
        Self { label: label.into(), noise: CurveNoise::Decay { kind, rate_a, rate_b } }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis: Axis,
    pub grid: Grid,
    pub curves: Vec<Curve>,
    pub measures: Vec<Measure>,
    pub params: ModelParams,
    pub log_base: LogBase,
    /// Fixed temperature of a time-axis sweep.
    pub temperature: Option<f64>,
}

/// A spec field that fails validation.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{message}")]
pub struct InvalidSpec {
    pub field: String,
    pub message: String,
}

impl InvalidSpec {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self { field: field.into(), message: message.into() }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<(), InvalidSpec> {
        let g = &self.grid;
        if !(g.start.is_finite() && g.stop.is_finite()) || g.start >= g.stop {
            return Err(InvalidSpec::new("grid", format!("grid requires start < stop, got [{}, {}]", g.start, g.stop)));
        }
        if g.points < 2 {
            return Err(InvalidSpec::new("grid.points", format!("grid.points must be at least 2, got {}", g.points)));
        }
        match self.axis {
            Axis::Temperature => {
                if g.start < tolerances::MIN_SWEEP_TEMPERATURE {
                    return Err(InvalidSpec::new(
                        "grid.start",
                        format!("temperature grid must start at or above {}", tolerances::MIN_SWEEP_TEMPERATURE),
                    ));
                }
            }
            Axis::Time => {
                if g.start < 0.0 {
                    return Err(InvalidSpec::new("grid.start", "time grid must start at or above 0"));
                }
                match self.temperature {
                    None => return Err(InvalidSpec::new("temperature", "time-axis sweeps require a temperature")),
                    Some(t) if !(t.is_finite() && t >= tolerances::MIN_SWEEP_TEMPERATURE) => {
                        return Err(InvalidSpec::new(
                            "temperature",
                            format!("temperature must be at least {}, got {t}", tolerances::MIN_SWEEP_TEMPERATURE),
                        ))
                    }
                    Some(_) => {}
                }
            }
        }
        if self.curves.is_empty() {
            return Err(InvalidSpec::new("curves", "at least one curve is required"));
        }
        for (i, curve) in self.curves.iter().enumerate() {
            if curve.label.is_empty() || curve.label.contains([',', '"', '\n', '\r']) {
                return Err(InvalidSpec::new(
                    format!("curves[{i}].label"),
                    format!("curve label {:?} must be non-empty and free of commas, quotes and newlines", curve.label),
                ));
            }
            if self.curves[..i].iter().any(|c| c.label == curve.label) {
                return Err(InvalidSpec::new(format!("curves[{i}].label"), format!("duplicate curve label {:?}", curve.label)));
            }
            match (self.axis, &curve.noise) {
                (Axis::Temperature, CurveNoise::Decay { .. }) => {
                    return Err(InvalidSpec::new(
                        format!("curves[{i}].channel"),
                        "temperature-axis curves take gamma_a/gamma_b, not decay rates",
                    ))
                }
                (Axis::Time, CurveNoise::Fixed(_)) => {
                    return Err(InvalidSpec::new(
                        format!("curves[{i}].channel"),
                        "time-axis curves take rate_a/rate_b, not gamma_a/gamma_b",
                    ))
                }
                (_, CurveNoise::Decay { rate_a, rate_b, .. }) => {
                    for (name, rate) in [("rate_a", rate_a), ("rate_b", rate_b)] {
                        if !(rate.is_finite() && *rate >= 0.0) {
                            return Err(InvalidSpec::new(format!("curves[{i}].channel.{name}"), format!("{name} must be non-negative")));
                        }
                    }
                }
                (_, CurveNoise::Fixed(_)) => {}
            }
        }
        if self.measures.is_empty() {
            return Err(InvalidSpec::new("measures", "at least one measure is required"));
        }
        for (i, m) in self.measures.iter().enumerate() {
            if self.measures[..i].contains(m) {
                return Err(InvalidSpec::new("measures", format!("duplicate measure {}", m.label())));
            }
        }
        self.params.validate().map_err(|e| InvalidSpec::new("hamiltonian", e.to_string()))
    }

    /// Axis name followed by `<curve>:<measure>` for every pair, curves outer.
    pub fn header(&self) -> Vec<String> {
        std::iter::once(self.axis.label().to_string())
            .chain(
                self.curves
                    .iter()
                    .flat_map(|c| self.measures.iter().map(move |m| format!("{}:{}", c.label, m.label()))),
            )
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error(transparent)]
    Spec(#[from] InvalidSpec),
    #[error("{axis} = {value} (grid point {index}), curve {curve:?}: {source}")]
    Point {
        axis: &'static str,
        value: f64,
        index: usize,
        curve: String,
        source: Error,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("CSV line {line}: {message}")]
pub struct CsvError {
    pub line: usize,
    pub message: String,
}

impl SweepResult {
    pub fn column(&self, label: &str) -> Option<Vec<f64>> {
        let idx = self.header.iter().position(|h| h == label)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn axis_values(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r[0]).collect()
    }

    /// 17 significant digits per value, so parsing recovers every bit.
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write!(out, "{v:.16e}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_csv())
    }

    pub fn from_csv(text: &str) -> Result<Self, CsvError> {
        let mut lines = text.lines().enumerate();
        let header: Vec<String> = match lines.next() {
            Some((_, h)) if !h.is_empty() => h.split(',').map(str::to_string).collect(),
            _ => return Err(CsvError { line: 1, message: "missing header".into() }),
        };
        let mut rows = Vec::new();
        for (i, line) in lines {
            if line.is_empty() {
                continue;
            }
            let row = line
                .split(',')
                .map(|cell| cell.parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CsvError { line: i + 1, message: e.to_string() })?;
            if row.len() != header.len() {
                return Err(CsvError {
                    line: i + 1,
                    message: format!("expected {} cells, found {}", header.len(), row.len()),
                });
            }
            rows.push(row);
        }
        Ok(Self { header, rows })
    }
}

fn state_at(spec: &SweepSpec, curve: &Curve, x: f64, thermal: &DensityMatrix6) -> crate::Result<DensityMatrix6> {
    let channel = match curve.noise {
        CurveNoise::Fixed(cfg) => cfg,
        CurveNoise::Decay { kind, rate_a, rate_b } => {
            debug_assert_eq!(spec.axis, Axis::Time);
            DecayLaw { rate_a, rate_b, time: x }.channel(kind)?
        }
    };
    evolved_closed_form(thermal, &channel)
}

/// Evaluates every grid point in parallel; rows come back in grid order.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult, SweepError> {
    spec.validate()?;
    let xs = spec.grid.values();
    let fixed_thermal = match spec.axis {
        Axis::Time => {
            let t = Temperature::new(spec.temperature.unwrap_or(f64::NAN));
            Some(t.and_then(|t| gibbs_closed_form(&spec.params, t)).map_err(|source| SweepError::Point {
                axis: spec.axis.label(),
                value: xs[0],
                index: 0,
                curve: String::new(),
                source,
            })?)
        }
        Axis::Temperature => None,
    };

    let rows = xs
        .par_iter()
        .enumerate()
        .map(|(index, &x)| {
            let annotate = |curve: &str, source: Error| SweepError::Point {
                axis: spec.axis.label(),
                value: x,
                index,
                curve: curve.to_string(),
                source,
            };
            let thermal = match &fixed_thermal {
                Some(rho) => rho.clone(),
                None => Temperature::new(x)
                    .and_then(|t| gibbs_closed_form(&spec.params, t))
                    .map_err(|e| annotate("", e))?,
            };
            let mut row = Vec::with_capacity(1 + spec.curves.len() * spec.measures.len());
            row.push(x);
            for curve in &spec.curves {
                let rho = state_at(spec, curve, x, &thermal).map_err(|e| annotate(&curve.label, e))?;
                for m in &spec.measures {
                    row.push(m.evaluate(&rho, spec.log_base).map_err(|e| annotate(&curve.label, e))?);
                }
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>, SweepError>>()?;

    Ok(SweepResult { header: spec.header(), rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(axis: Axis, curves: Vec<Curve>, measures: Vec<Measure>) -> SweepSpec {
        SweepSpec {
            axis,
            grid: Grid { start: 0.1, stop: 2.0, points: 5 },
            curves,
            measures,
            params: ModelParams::REFERENCE,
            log_base: LogBase::Natural,
            temperature: (axis == Axis::Time).then_some(0.5),
        }
    }

    fn symmetric(gamma: f64) -> Curve {
        Curve::fixed(format!("g{gamma}"), ChannelConfig::symmetric(ChannelKind::Dephasing, gamma).unwrap())
    }

    #[test]
    fn grid_endpoints_are_exact() {
        let g = Grid { start: 0.05, stop: 3.0, points: 120 };
        let v = g.values();
        assert_eq!(v.len(), 120);
        assert_eq!(v[0], 0.05);
        assert_eq!(v[119], 3.0);
        assert!(v.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn two_point_grid_gives_two_rows() {
        let mut s = spec(
            Axis::Temperature,
            vec![symmetric(0.0)],
            vec![Measure::Negativity, Measure::Discord, Measure::MutualInformation, Measure::Purity],
        );
        s.grid.points = 2;
        let r = run_sweep(&s).unwrap();
        assert_eq!(r.rows.len(), 2);
        assert!(r.rows.iter().all(|row| row.len() == 5));
        assert_eq!(
            r.header,
            ["temperature", "g0:negativity", "g0:discord", "g0:mutual_information", "g0:purity"]
        );
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let s = spec(Axis::Temperature, vec![symmetric(0.0), symmetric(0.5)], vec![Measure::Negativity, Measure::Discord]);
        let r = run_sweep(&s).unwrap();
        let csv = r.to_csv();
        assert_eq!(SweepResult::from_csv(&csv).unwrap(), r);
        assert_eq!(run_sweep(&s).unwrap().to_csv(), csv);
    }

    #[test]
    fn time_axis_starts_at_thermal_state() {
        let mut s = spec(
            Axis::Time,
            vec![Curve::decay("fast", ChannelKind::PhaseFlip, 2.0, 1.0)],
            vec![Measure::Negativity, Measure::Purity],
        );
        s.grid = Grid { start: 0.0, stop: 5.0, points: 11 };
        let r = run_sweep(&s).unwrap();
        let thermal = gibbs_closed_form(&ModelParams::REFERENCE, Temperature::new(0.5).unwrap()).unwrap();
        assert!((r.rows[0][1] - negativity_spectral(&thermal).unwrap()).abs() < 1e-12);
        let purity = r.column("fast:purity").unwrap();
        assert!(purity.windows(2).all(|w| w[1] <= w[0] + 1e-15));
    }

    #[test]
    fn validation_names_fields() {
        let mut s = spec(Axis::Temperature, vec![symmetric(0.0)], vec![Measure::Negativity]);
        s.grid.points = 1;
        assert_eq!(s.validate().unwrap_err().field, "grid.points");
        s.grid = Grid { start: 0.001, stop: 1.0, points: 4 };
        assert_eq!(s.validate().unwrap_err().field, "grid.start");
        s.grid = Grid { start: 1.0, stop: 1.0, points: 4 };
        assert_eq!(s.validate().unwrap_err().field, "grid");

        let s = spec(Axis::Temperature, vec![symmetric(0.0), symmetric(0.0)], vec![Measure::Negativity]);
        assert_eq!(s.validate().unwrap_err().field, "curves[1].label");
        let s = spec(Axis::Temperature, vec![Curve::decay("x", ChannelKind::Dephasing, 1.0, 1.0)], vec![Measure::Negativity]);
        assert_eq!(s.validate().unwrap_err().field, "curves[0].channel");
        let mut s = spec(Axis::Time, vec![Curve::decay("x", ChannelKind::Dephasing, 1.0, 1.0)], vec![Measure::Negativity]);
        s.temperature = None;
        assert_eq!(s.validate().unwrap_err().field, "temperature");
        let s = spec(Axis::Temperature, vec![symmetric(0.0)], vec![]);
        assert_eq!(s.validate().unwrap_err().field, "measures");
    }

    #[test]
    fn csv_parse_errors_report_line() {
        let err = SweepResult::from_csv("temperature,a\n1.0,2.0\n1.0,x\n").unwrap_err();
        assert_eq!(err.line, 3);
        let err = SweepResult::from_csv("temperature,a\n1.0\n").unwrap_err();
        assert_eq!(err.line, 2);
    }
}
