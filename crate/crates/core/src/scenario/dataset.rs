use std::fmt::Write as _;

use serde::Serialize;

use super::config::{Quantity, ScenarioConfig};

/// Bumped whenever the CSV or JSON layout changes.
pub const DATASET_FORMAT_VERSION: u32 = 1;

/// A swept quantity: one row per grid point, axis columns first.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub config: ScenarioConfig,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct JsonDataset<'a> {
    format: u32,
    generator: String,
    quantity: Quantity,
    scale: &'static str,
    config: &'a ScenarioConfig,
    columns: &'a [String],
    rows: &'a [Vec<f64>],
}

/// Shortest decimal string that reads back to the same `f64`.
pub fn format_float(x: f64) -> String {
    let a = x.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn scale_note(q: Quantity) -> &'static str {
    match q {
        Quantity::Joint | Quantity::NoInterference => {
            "density per unit tau_c per unit tau_d, unnormalized envelopes, no display rescaling"
        }
        Quantity::Marginal | Quantity::Windowed => "density per unit tau_c, unnormalized envelopes, no display rescaling",
        Quantity::Hom => "probability, unnormalized envelopes, no display rescaling",
    }
}

impl Dataset {
    pub(crate) fn new(config: ScenarioConfig, rows: Vec<Vec<f64>>) -> Self {
        let mut columns: Vec<String> = config
            .axes
            .iter()
            .flat_map(|a| a.vars.iter().map(|v| v.name().to_string()))
            .collect();
        columns.push(config.quantity.name().to_string());
        Self { config, columns, rows }
    }

    pub fn quantity(&self) -> Quantity {
        self.config.quantity
    }

    /// The computed values in row order.
    pub fn values(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r[r.len() - 1]).collect()
    }

    /// Step counts of the axes; their product is the row count.
    pub fn shape(&self) -> Vec<usize> {
        self.config.axes.iter().map(|a| a.steps).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# homsim dataset format {DATASET_FORMAT_VERSION} (homsim {})",
            env!("CARGO_PKG_VERSION")
        );
        let _ = writeln!(out, "# quantity: {}", self.quantity());
        let _ = writeln!(out, "# scale: {}", scale_note(self.quantity()));
        let _ = writeln!(out, "# config:");
        for line in self.config.to_toml().lines() {
            if line.is_empty() {
                out.push_str("#\n");
            } else {
                let _ = writeln!(out, "#   {line}");
            }
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|&x| format_float(x)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let doc = JsonDataset {
            format: DATASET_FORMAT_VERSION,
            generator: format!("homsim {}", env!("CARGO_PKG_VERSION")),
            quantity: self.quantity(),
            scale: scale_note(self.quantity()),
            config: &self.config,
            columns: &self.columns,
            rows: &self.rows,
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("datasets hold finite values only");
        text.push('\n');
        text
    }
}
