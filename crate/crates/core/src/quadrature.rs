//! Globally adaptive Gauss-Kronrod quadrature.
//!
//! Each panel is integrated with the 15-point Kronrod rule and its embedded
//! 7-point Gauss rule. The panel error estimate is `|K15 - G7|`, floored at
//! `50 eps` times the integral of `|f|`, which overestimates the true error
//! of the Kronrod value for smooth integrands. The panel with the largest
//! estimate is bisected until the summed estimate drops below the requested
//! absolute tolerance.
//!
//! Panel selection and the final summation run in a fixed order, so a given
//! integrand and spec always produce the same bits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

// Kronrod abscissae on [0, 1); odd indices are the Gauss nodes.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];

const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// Controls for the adaptive integrator and the oracle integration boxes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub absolute_tolerance: f64,
    pub max_subdivisions: usize,
    /// Half-width of the integration box in units of the widest Gaussian.
    pub truncation_sigmas: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            absolute_tolerance: 1e-11,
            max_subdivisions: 2000,
            truncation_sigmas: 12.0,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.absolute_tolerance > 0.0 && self.absolute_tolerance.is_finite()) {
            return Err(Error::Domain(format!(
                "absolute_tolerance must be > 0, got {}",
                self.absolute_tolerance
            )));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::Domain("max_subdivisions must be >= 1".into()));
        }
        if !(self.truncation_sigmas >= 8.0 && self.truncation_sigmas.is_finite()) {
            return Err(Error::Domain(format!(
                "truncation_sigmas must be >= 8, got {}",
                self.truncation_sigmas
            )));
        }
        Ok(())
    }

    pub fn with_tolerance(mut self, absolute_tolerance: f64) -> Self {
        self.absolute_tolerance = absolute_tolerance;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub subdivisions: usize,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    lower: f64,
    upper: f64,
    value: f64,
    error: f64,
}

fn kronrod_panel<F: FnMut(f64) -> f64>(f: &mut F, lower: f64, upper: f64) -> Result<Panel> {
    let center = 0.5 * (lower + upper);
    let half = 0.5 * (upper - lower);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut absolute = (WGK[7] * fc).abs();
    let mut finite = fc.is_finite();
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        finite &= f1.is_finite() && f2.is_finite();
        kronrod += WGK[j] * (f1 + f2);
        absolute += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    if !finite {
        return Err(Error::Domain(format!(
            "integrand is not finite on [{lower}, {upper}]"
        )));
    }
    let value = kronrod * half;
    let floor = 50.0 * f64::EPSILON * absolute * half.abs();
    let error = ((kronrod - gauss) * half).abs().max(floor);
    Ok(Panel {
        lower,
        upper,
        value,
        error,
    })
}

/// Integrates `f` over `[lower, upper]`.
pub fn integrate_1d<F: FnMut(f64) -> f64>(
    f: F,
    lower: f64,
    upper: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    integrate_1d_with_breakpoints(f, lower, upper, &[], spec)
}

/// Integrates `f` over `[lower, upper]`, starting from panels split at the
/// interior `breakpoints`. Narrow features far from the midpoint are only
/// found reliably when a breakpoint sits near them.
pub fn integrate_1d_with_breakpoints<F: FnMut(f64) -> f64>(
    mut f: F,
    lower: f64,
    upper: f64,
    breakpoints: &[f64],
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    spec.validate()?;
    if !(lower.is_finite() && upper.is_finite()) || lower >= upper {
        return Err(Error::Domain(format!(
            "integration bounds must be finite with lower < upper, got [{lower}, {upper}]"
        )));
    }

    let mut edges: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|x| x.is_finite() && *x > lower && *x < upper)
        .collect();
    edges.sort_by(f64::total_cmp);
    edges.dedup();
    // never start with more panels than the subdivision budget allows
    if edges.len() + 1 > spec.max_subdivisions {
        let keep = spec.max_subdivisions - 1;
        edges = (0..keep).map(|i| edges[i * edges.len() / keep]).collect();
    }

    let mut panels = Vec::with_capacity(spec.max_subdivisions);
    let mut left = lower;
    for &edge in edges.iter().chain(std::iter::once(&upper)) {
        panels.push(kronrod_panel(&mut f, left, edge)?);
        left = edge;
    }
    let mut evaluations = 15 * panels.len();

    loop {
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if error <= spec.absolute_tolerance {
            break;
        }
        let (worst, _) = panels
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |(bi, be), (i, p)| {
                if p.error > be {
                    (i, p.error)
                } else {
                    (bi, be)
                }
            });
        let panel = panels[worst];
        let mid = 0.5 * (panel.lower + panel.upper);
        let exhausted = panels.len() >= spec.max_subdivisions;
        let unsplittable = !(mid > panel.lower && mid < panel.upper);
        if exhausted || unsplittable {
            let (value, _) = sum_panels(&mut panels);
            return Err(Error::Convergence {
                estimate: value,
                error,
                tolerance: spec.absolute_tolerance,
                subdivisions: panels.len(),
            });
        }
        panels[worst] = kronrod_panel(&mut f, panel.lower, mid)?;
        panels.push(kronrod_panel(&mut f, mid, panel.upper)?);
        evaluations += 30;
    }

    let subdivisions = panels.len();
    let (value, error_estimate) = sum_panels(&mut panels);
    Ok(QuadratureResult {
        value,
        error_estimate,
        subdivisions,
        evaluations,
    })
}

fn sum_panels(panels: &mut [Panel]) -> (f64, f64) {
    panels.sort_by(|a, b| a.lower.total_cmp(&b.lower));
    panels
        .iter()
        .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error))
}
