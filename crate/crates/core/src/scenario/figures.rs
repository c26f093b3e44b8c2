//! Bundled sweep configs for the published figure setups.
//!
//! Axis ranges are reconstructions chosen to contain every peak with about
//! three widths of margin; the fixed parameters follow the figure setups.

use super::config::{parse_config, ScenarioConfig};
use super::ScenarioError;

#[derive(Debug, Clone, Copy)]
pub struct BundledFigure {
    pub name: &'static str,
    pub summary: &'static str,
    pub source: &'static str,
}

impl BundledFigure {
    pub fn config(&self) -> Result<ScenarioConfig, ScenarioError> {
        parse_config(self.source)
    }
}

pub const FIGURES: [BundledFigure; 9] = [
    BundledFigure {
        name: "fig2",
        summary: "joint density over (tau_c, tau_d), geometry (2,3,2,3), all widths 1",
        source: include_str!("../../configs/fig2.toml"),
    },
    BundledFigure {
        name: "fig3",
        summary: "the fig2 surface without the interference term",
        source: include_str!("../../configs/fig3.toml"),
    },
    BundledFigure {
        name: "fig4",
        summary: "HOM coincidence probability over t_b and the shared filter width",
        source: include_str!("../../configs/fig4.toml"),
    },
    BundledFigure {
        name: "fig5",
        summary: "tau_d-integrated density over t_b and tau_c, (t_a,t_c,t_d) = (2,2,3)",
        source: include_str!("../../configs/fig5.toml"),
    },
    BundledFigure {
        name: "fig6",
        summary: "tau_d-integrated density over delta_d and tau_c with delta_c = 0.1",
        source: include_str!("../../configs/fig6.toml"),
    },
    BundledFigure {
        name: "fig7",
        summary: "tau_d-integrated density over delta_d and tau_c with delta_c = 3",
        source: include_str!("../../configs/fig7.toml"),
    },
    BundledFigure {
        name: "fig8",
        summary: "tau_d-integrated density over tau_c for delta_d = 0.1 and 10, delta_c = 3",
        source: include_str!("../../configs/fig8.toml"),
    },
    BundledFigure {
        name: "fig9",
        summary: "windowed density over t_w and tau_c, window centered at 5.5, delta_d = 10",
        source: include_str!("../../configs/fig9.toml"),
    },
    BundledFigure {
        name: "fig10",
        summary: "windowed density over t_w and tau_c, window centered at 5.5, delta_d = 0.1",
        source: include_str!("../../configs/fig10.toml"),
    },
];

pub fn figure(name: &str) -> Option<&'static BundledFigure> {
    FIGURES.iter().find(|f| f.name == name)
}
