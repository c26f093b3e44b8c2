use rayon::prelude::*;

use super::config::{Quantity, ScenarioConfig, Var};
use super::dataset::{format_float, Dataset};
use super::ScenarioError;
use crate::coincidence::{
    hom_probability, joint_probability, marginal_probability, no_interference_probability, windowed_probability,
};
use crate::error::{Error, Result};
use crate::pulse::ExperimentGeometry;

/// Fully resolved inputs at one grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub geometry: ExperimentGeometry,
    pub tau_c: f64,
    pub tau_d: f64,
    pub window_center: f64,
    pub t_w: f64,
}

impl GridPoint {
    fn set(&mut self, var: Var, value: f64) {
        let g = &mut self.geometry;
        match var {
            Var::TA => g.t_a = value,
            Var::TB => g.t_b = value,
            Var::TC => g.t_c = value,
            Var::TD => g.t_d = value,
            Var::DeltaA => g.delta_a = value,
            Var::DeltaB => g.delta_b = value,
            Var::DeltaC => g.delta_c = value,
            Var::DeltaD => g.delta_d = value,
            Var::TauC => self.tau_c = value,
            Var::TauD => self.tau_d = value,
            Var::TW => self.t_w = value,
        }
    }

    pub fn evaluate(&self, quantity: Quantity) -> Result<f64> {
        let g = &self.geometry;
        let value = match quantity {
            Quantity::Joint => joint_probability(g, self.tau_c, self.tau_d)?,
            Quantity::NoInterference => no_interference_probability(g, self.tau_c, self.tau_d)?,
            Quantity::Hom => hom_probability(g)?,
            Quantity::Marginal => marginal_probability(g, self.tau_c)?,
            Quantity::Windowed => windowed_probability(g, self.tau_c, self.window_center, self.t_w)?,
        };
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::Domain(format!("{quantity} evaluated to {value}")));
        }
        Ok(value)
    }
}

impl ScenarioConfig {
    /// Grid point `k`, row-major with the first axis outermost.
    pub fn grid_point(&self, mut k: usize) -> (Vec<usize>, GridPoint) {
        let fixed = |var| self.fixed(var).unwrap_or(0.0);
        let mut point = GridPoint {
            geometry: ExperimentGeometry {
                t_a: fixed(Var::TA),
                t_b: fixed(Var::TB),
                t_c: fixed(Var::TC),
                t_d: fixed(Var::TD),
                delta_a: fixed(Var::DeltaA),
                delta_b: fixed(Var::DeltaB),
                delta_c: fixed(Var::DeltaC),
                delta_d: fixed(Var::DeltaD),
                splitter: self.splitter(),
            },
            tau_c: fixed(Var::TauC),
            tau_d: fixed(Var::TauD),
            window_center: self.window.map_or(0.0, |w| w.center),
            t_w: fixed(Var::TW),
        };
        let mut index = vec![0; self.axes.len()];
        for (i, axis) in self.axes.iter().enumerate().rev() {
            index[i] = k % axis.steps;
            k /= axis.steps;
            let value = axis.value(index[i]);
            for &var in &axis.vars {
                point.set(var, value);
            }
        }
        (index, point)
    }

    fn describe(&self, index: &[usize]) -> String {
        if index.is_empty() {
            return "the single grid point".to_string();
        }
        let parts: Vec<String> = self
            .axes
            .iter()
            .zip(index)
            .map(|(axis, &k)| {
                let names: Vec<&str> = axis.vars.iter().map(|v| v.name()).collect();
                format!("{}={} (axis index {k})", names.join("="), format_float(axis.value(k)))
            })
            .collect();
        parts.join(", ")
    }
}

/// Evaluates the configured quantity on every grid point.
///
/// `jobs` bounds the worker count; `None` uses the available parallelism.
/// Output order and bytes do not depend on it.
pub fn run_scenario(config: &ScenarioConfig, jobs: Option<usize>) -> std::result::Result<Dataset, ScenarioError> {
    config.validate()?;
    if jobs == Some(0) {
        return Err(ScenarioError::Config("--jobs must be >= 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| ScenarioError::Runtime(format!("cannot start worker pool: {e}")))?;
    let n = config.point_count();
    let results: Vec<Result<f64>> = pool.install(|| {
        (0..n)
            .into_par_iter()
            .map(|k| config.grid_point(k).1.evaluate(config.quantity))
            .collect()
    });

    let mut rows = Vec::with_capacity(n);
    for (k, res) in results.into_iter().enumerate() {
        let (index, _) = config.grid_point(k);
        match res {
            Ok(value) => {
                let mut row: Vec<f64> = Vec::with_capacity(config.axes.len() * 2 + 1);
                for (axis, &i) in config.axes.iter().zip(&index) {
                    row.extend(std::iter::repeat_n(axis.value(i), axis.vars.len()));
                }
                row.push(value);
                rows.push(row);
            }
            Err(source) => {
                return Err(ScenarioError::Point {
                    at: config.describe(&index),
                    source,
                })
            }
        }
    }
    Ok(Dataset::new(config.clone(), rows))
}
