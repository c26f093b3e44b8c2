//! Parameter sweeps over the coincidence quantities.
//!
//! A [`ScenarioConfig`] names one quantity, a base geometry and up to two
//! sweep axes. [`run_scenario`] evaluates the quantity on the grid and
//! returns a [`Dataset`] that renders to CSV or JSON.

mod config;
mod dataset;
pub mod extrema;
pub mod figures;
mod run;
pub mod validation;

use std::path::PathBuf;

use thiserror::Error;

pub use config::{parse_config, Axis, GeometrySpec, OutputFormat, OutputSpec, Quantity, QueryPoint, ScenarioConfig, Var, WindowSpec};
pub use dataset::{format_float, Dataset, DATASET_FORMAT_VERSION};
pub use run::{run_scenario, GridPoint};
pub use validation::{run_validation, ValidationReport, ValidationRow, MATRICES};

/// Errors from config handling, sweeps and validation runs.
#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("config error: {0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("at {at}: {source}")]
    Point {
        at: String,
        #[source]
        source: crate::Error,
    },

    #[error("unknown validation matrix `{name}`; available: {}", MATRICES.join(", "))]
    UnknownMatrix { name: String },

    #[error("{0}")]
    Runtime(String),
}

impl ScenarioError {
    /// Process exit status for the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            ScenarioError::Point {
                source: crate::Error::Convergence { .. },
                ..
            } => 3,
            _ => 2,
        }
    }
}
