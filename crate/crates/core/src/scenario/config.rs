//! Scenario configs in TOML.
//!
//! ```toml
//! quantity = "marginal"
//!
//! [geometry]
//! t_a = 2.0
//! t_b = 5.0
//! t_c = 2.0
//! t_d = 2.0
//! delta_a = 1.0
//! delta_b = 1.0
//! delta_c = 3.0
//!
//! [[axis]]
//! vars = ["tau_c"]
//! start = 2.0
//! stop = 9.0
//! steps = 141
//!
//! [[axis]]
//! vars = ["delta_d"]
//! start = 0.1
//! stop = 10.0
//! steps = 2
//! ```
//!
//! Every geometry field and every query time the quantity depends on must be
//! either fixed or swept, never both.

use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::ScenarioError;
use crate::pulse::{validate_splitter, BeamSplitter, ExperimentGeometry};

/// The quantity evaluated at each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Joint,
    NoInterference,
    Hom,
    Marginal,
    Windowed,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Joint => "joint",
            Quantity::NoInterference => "no_interference",
            Quantity::Hom => "hom",
            Quantity::Marginal => "marginal",
            Quantity::Windowed => "windowed",
        }
    }

    /// Whether `var` changes the value of this quantity.
    pub fn depends_on(self, var: Var) -> bool {
        match var {
            Var::TauC => self != Quantity::Hom,
            Var::TauD => matches!(self, Quantity::Joint | Quantity::NoInterference),
            Var::TW => self == Quantity::Windowed,
            _ => true,
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A sweepable variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    #[serde(rename = "t_a")]
    TA,
    #[serde(rename = "t_b")]
    TB,
    #[serde(rename = "t_c")]
    TC,
    #[serde(rename = "t_d")]
    TD,
    #[serde(rename = "delta_a")]
    DeltaA,
    #[serde(rename = "delta_b")]
    DeltaB,
    #[serde(rename = "delta_c")]
    DeltaC,
    #[serde(rename = "delta_d")]
    DeltaD,
    #[serde(rename = "tau_c")]
    TauC,
    #[serde(rename = "tau_d")]
    TauD,
    #[serde(rename = "t_w")]
    TW,
}

impl Var {
    pub const ALL: [Var; 11] = [
        Var::TA,
        Var::TB,
        Var::TC,
        Var::TD,
        Var::DeltaA,
        Var::DeltaB,
        Var::DeltaC,
        Var::DeltaD,
        Var::TauC,
        Var::TauD,
        Var::TW,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Var::TA => "t_a",
            Var::TB => "t_b",
            Var::TC => "t_c",
            Var::TD => "t_d",
            Var::DeltaA => "delta_a",
            Var::DeltaB => "delta_b",
            Var::DeltaC => "delta_c",
            Var::DeltaD => "delta_d",
            Var::TauC => "tau_c",
            Var::TauD => "tau_d",
            Var::TW => "t_w",
        }
    }

    fn is_width(self) -> bool {
        matches!(self, Var::DeltaA | Var::DeltaB | Var::DeltaC | Var::DeltaD)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One grid axis. Listing several `vars` ties them to the same value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Axis {
    pub vars: Vec<Var>,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl Axis {
    /// `start + k (stop - start) / (steps - 1)`.
    pub fn value(&self, k: usize) -> f64 {
        self.start + (k as f64 * (self.stop - self.start)) / (self.steps - 1) as f64
    }
}

/// Base geometry. Unset fields must be swept.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_d: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_d: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub splitter: Option<BeamSplitter>,
}

impl GeometrySpec {
    pub fn from_geometry(geom: &ExperimentGeometry) -> Self {
        Self {
            t_a: Some(geom.t_a),
            t_b: Some(geom.t_b),
            t_c: Some(geom.t_c),
            t_d: Some(geom.t_d),
            delta_a: Some(geom.delta_a),
            delta_b: Some(geom.delta_b),
            delta_c: Some(geom.delta_c),
            delta_d: Some(geom.delta_d),
            splitter: None,
        }
    }

    pub(crate) fn get(&self, var: Var) -> Option<f64> {
        match var {
            Var::TA => self.t_a,
            Var::TB => self.t_b,
            Var::TC => self.t_c,
            Var::TD => self.t_d,
            Var::DeltaA => self.delta_a,
            Var::DeltaB => self.delta_b,
            Var::DeltaC => self.delta_c,
            Var::DeltaD => self.delta_d,
            _ => None,
        }
    }
}

/// Fixed detection times.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryPoint {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_d: Option<f64>,
}

/// Detection window on detector `d`: `(center - t_w, center + t_w)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowSpec {
    pub center: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_w: Option<f64>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub quantity: Quantity,
    pub geometry: GeometrySpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query: Option<QueryPoint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<WindowSpec>,
    #[serde(default, rename = "axis", skip_serializing_if = "Vec::is_empty")]
    pub axes: Vec<Axis>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
}

/// Parses and validates a config.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ScenarioError> {
    let config: ScenarioConfig = toml::from_str(text).map_err(|e| ScenarioError::Config(e.to_string()))?;
    config.validate()?;
    Ok(config)
}

fn bad(msg: impl Into<String>) -> ScenarioError {
    ScenarioError::Config(msg.into())
}

impl ScenarioConfig {
    /// Renders the config as TOML. `parse_config` reads it back unchanged.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario configs always serialize")
    }

    /// The axis sweeping `var`, if any.
    pub fn axis_of(&self, var: Var) -> Option<(usize, &Axis)> {
        self.axes.iter().enumerate().find(|(_, a)| a.vars.contains(&var))
    }

    /// The fixed value of `var`, if any.
    pub fn fixed(&self, var: Var) -> Option<f64> {
        match var {
            Var::TauC => self.query.and_then(|q| q.tau_c),
            Var::TauD => self.query.and_then(|q| q.tau_d),
            Var::TW => self.window.and_then(|w| w.t_w),
            _ => self.geometry.get(var),
        }
    }

    pub fn splitter(&self) -> BeamSplitter {
        self.geometry.splitter.unwrap_or_default()
    }

    /// Number of grid points.
    pub fn point_count(&self) -> usize {
        self.axes.iter().map(|a| a.steps).product()
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        if self.axes.len() > 2 {
            return Err(bad(format!("at most 2 [[axis]] blocks are allowed, found {}", self.axes.len())));
        }
        let mut seen = Vec::new();
        for (i, axis) in self.axes.iter().enumerate() {
            let at = format!("axis[{i}]");
            if axis.vars.is_empty() {
                return Err(bad(format!("{at}.vars must name at least one variable")));
            }
            if axis.steps < 2 {
                return Err(bad(format!("{at}.steps must be >= 2, got {}", axis.steps)));
            }
            if !axis.start.is_finite() || !axis.stop.is_finite() {
                return Err(bad(format!("{at}: start and stop must be finite")));
            }
            for &var in &axis.vars {
                if seen.contains(&var) {
                    return Err(bad(format!("{at}: `{var}` is swept more than once")));
                }
                seen.push(var);
                if !self.quantity.depends_on(var) {
                    return Err(bad(format!("{at}: `{var}` has no effect on quantity `{}`", self.quantity)));
                }
                for end in [axis.start, axis.stop] {
                    check_range(var, end, &format!("{at} {var}"))?;
                }
            }
        }

        for var in Var::ALL {
            let fixed = self.fixed(var);
            let swept = self.axis_of(var).is_some();
            let needed = self.quantity.depends_on(var);
            let place = match var {
                Var::TauC | Var::TauD => format!("query.{var}"),
                Var::TW => "window.t_w".to_string(),
                _ => format!("geometry.{var}"),
            };
            match (needed, fixed, swept) {
                (true, None, false) => {
                    return Err(bad(format!("`{var}` is required: set {place} or sweep it")));
                }
                (_, Some(_), true) => {
                    return Err(bad(format!("`{var}` is both fixed by {place} and swept")));
                }
                (false, Some(_), _) => {
                    return Err(bad(format!("{place} has no effect on quantity `{}`", self.quantity)));
                }
                (_, Some(v), false) => check_range(var, v, &place)?,
                _ => {}
            }
        }

        match (self.quantity, &self.window) {
            (Quantity::Windowed, None) => return Err(bad("quantity `windowed` requires a [window] block")),
            (Quantity::Windowed, Some(w)) if !w.center.is_finite() => {
                return Err(bad("window.center must be finite"));
            }
            (q, Some(_)) if q != Quantity::Windowed => {
                return Err(bad(format!("[window] has no effect on quantity `{q}`")));
            }
            _ => {}
        }

        if let Some(s) = self.geometry.splitter {
            validate_splitter(s.reflectance(), s.transmittance()).map_err(|e| bad(format!("geometry.splitter: {e}")))?;
            if !s.is_balanced() {
                return Err(bad(format!(
                    "geometry.splitter: closed forms require r = t = 1/sqrt 2, got r = {}, t = {}",
                    s.reflectance(),
                    s.transmittance()
                )));
            }
        }
        Ok(())
    }
}

fn check_range(var: Var, value: f64, place: &str) -> Result<(), ScenarioError> {
    if !value.is_finite() {
        return Err(bad(format!("{place} must be finite, got {value}")));
    }
    if var.is_width() && value <= 0.0 {
        return Err(bad(format!("{place} must be > 0, got {value}")));
    }
    if var == Var::TW && value < 0.0 {
        return Err(bad(format!("{place} must be >= 0, got {value}")));
    }
    Ok(())
}
