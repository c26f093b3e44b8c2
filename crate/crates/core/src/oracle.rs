//! Brute-force quadrature of the joint coincidence density.
//!
//! Nothing here uses the integrated closed forms. Integrals over a detector
//! time run over the box `[first center - k w, last center + k w]` where `w`
//! is the widest filtered-pulse width and `k = truncation_sigmas`. The 2-D
//! integral is iterated: the inner `tau_d` integral is solved to a tighter
//! tolerance and its worst error, times the outer box length, is added to
//! the outer error estimate.

use num_complex::Complex64;

use crate::coincidence::{paths_of, PathsHandle};
use crate::error::{ensure_finite, Error, Result};
use crate::fock::{coincidence_amplitude_11, FockInput};
use crate::pulse::{Detector, ExperimentGeometry, Source};
use crate::quadrature::{integrate_1d_with_breakpoints, QuadratureResult, QuadratureSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Density {
    Joint,
    NoInterference,
}

impl Density {
    #[inline]
    fn eval(self, paths: &PathsHandle, tau_c: f64, tau_d: f64) -> f64 {
        match self {
            Density::Joint => paths.joint(tau_c, tau_d),
            Density::NoInterference => paths.no_interference(tau_c, tau_d),
        }
    }
}

fn zero() -> QuadratureResult {
    QuadratureResult {
        value: 0.0,
        error_estimate: 0.0,
        subdivisions: 0,
        evaluations: 0,
    }
}

fn integrate_d(
    paths: &PathsHandle,
    density: Density,
    tau_c: f64,
    lo: f64,
    hi: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    match paths.d_support(lo, hi, spec.truncation_sigmas) {
        None => Ok(zero()),
        Some((lo, hi, breaks)) => integrate_1d_with_breakpoints(
            |v| density.eval(paths, tau_c, v),
            lo,
            hi,
            &breaks,
            spec,
        ),
    }
}

/// `integral P(tau_c, tau_d) d tau_d` over the real line.
pub fn oracle_marginal(geom: &ExperimentGeometry, tau_c: f64, spec: &QuadratureSpec) -> Result<QuadratureResult> {
    ensure_finite("tau_c", tau_c)?;
    let paths = paths_of(geom)?;
    integrate_d(&paths, Density::Joint, tau_c, f64::NEG_INFINITY, f64::INFINITY, spec)
}

/// The no-interference density integrated over `tau_d`.
pub fn oracle_no_interference_marginal(
    geom: &ExperimentGeometry,
    tau_c: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    ensure_finite("tau_c", tau_c)?;
    let paths = paths_of(geom)?;
    integrate_d(&paths, Density::NoInterference, tau_c, f64::NEG_INFINITY, f64::INFINITY, spec)
}

/// `integral P(tau_c, tau_d') d tau_d'` over `(center - t_w, center + t_w)`.
pub fn oracle_windowed(
    geom: &ExperimentGeometry,
    tau_c: f64,
    window_center: f64,
    t_w: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    oracle_windowed_density(geom, Density::Joint, tau_c, window_center, t_w, spec)
}

/// The no-interference density integrated over the window.
pub fn oracle_no_interference_windowed(
    geom: &ExperimentGeometry,
    tau_c: f64,
    window_center: f64,
    t_w: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    oracle_windowed_density(geom, Density::NoInterference, tau_c, window_center, t_w, spec)
}

fn oracle_windowed_density(
    geom: &ExperimentGeometry,
    density: Density,
    tau_c: f64,
    window_center: f64,
    t_w: f64,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    ensure_finite("tau_c", tau_c)?;
    ensure_finite("window center", window_center)?;
    if !(t_w >= 0.0) || !t_w.is_finite() {
        return Err(Error::Domain(format!("window half-width must be finite and >= 0, got {t_w}")));
    }
    let paths = paths_of(geom)?;
    if t_w == 0.0 {
        return Ok(zero());
    }
    integrate_d(&paths, density, tau_c, window_center - t_w, window_center + t_w, spec)
}

/// `integral integral P(tau_c, tau_d) d tau_c d tau_d`.
pub fn oracle_hom(geom: &ExperimentGeometry, spec: &QuadratureSpec) -> Result<QuadratureResult> {
    spec.validate()?;
    let paths = paths_of(geom)?;
    let (lo, hi, breaks) = paths
        .c_support(f64::NEG_INFINITY, f64::INFINITY, spec.truncation_sigmas)
        .expect("unbounded support is never empty");
    let (outer_spec, inner_spec) = split_tolerance(spec, hi - lo);
    iterated(lo, hi, &breaks, &outer_spec, |tau_c| {
        integrate_d(&paths, Density::Joint, tau_c, f64::NEG_INFINITY, f64::INFINITY, &inner_spec)
    })
}

/// Coincidence probability of an arbitrary `n + m <= 2` input on an arbitrary
/// lossless splitter, by 2-D quadrature of `|coincidence_amplitude_11|^2`.
pub fn oracle_coincidence_for_input(
    input: &FockInput,
    geom: &ExperimentGeometry,
    spec: &QuadratureSpec,
) -> Result<QuadratureResult> {
    spec.validate()?;
    // surface unsupported inputs before integrating
    coincidence_amplitude_11(input, geom, 0.0, 0.0)?;
    let k = spec.truncation_sigmas;
    let arm = |det: Detector| {
        let pulses = [geom.filtered_pulse(det, Source::A), geom.filtered_pulse(det, Source::B)];
        let widest = pulses.iter().map(|p| p.width()).fold(0.0, f64::max);
        let lo = pulses.iter().map(|p| p.center()).fold(f64::INFINITY, f64::min) - k * widest;
        let hi = pulses.iter().map(|p| p.center()).fold(f64::NEG_INFINITY, f64::max) + k * widest;
        let steps = k.ceil() as i32;
        let breaks: Vec<f64> = pulses
            .iter()
            .flat_map(|p| {
                let w = p.width() / std::f64::consts::SQRT_2;
                (-steps..=steps).map(move |j| p.center() + j as f64 * w)
            })
            .collect();
        (lo, hi, breaks)
    };
    let (c_lo, c_hi, c_breaks) = arm(Detector::C);
    let (d_lo, d_hi, d_breaks) = arm(Detector::D);
    let (outer_spec, inner_spec) = split_tolerance(spec, c_hi - c_lo);
    iterated(c_lo, c_hi, &c_breaks, &outer_spec, |tau_c| {
        let mut failure = None;
        let res = integrate_1d_with_breakpoints(
            |tau_d| match coincidence_amplitude_11(input, geom, tau_c, tau_d) {
                Ok(amp) => Complex64::norm_sqr(&amp),
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            },
            d_lo,
            d_hi,
            &d_breaks,
            &inner_spec,
        );
        match failure {
            Some(e) => Err(e),
            None => res,
        }
    })
}

fn split_tolerance(spec: &QuadratureSpec, outer_length: f64) -> (QuadratureSpec, QuadratureSpec) {
    let outer = spec.with_tolerance(0.5 * spec.absolute_tolerance);
    let inner = spec.with_tolerance(0.5 * spec.absolute_tolerance / outer_length);
    (outer, inner)
}

/// Outer adaptive integral of an inner integral. Inner failures abort.
fn iterated<F>(lo: f64, hi: f64, breaks: &[f64], spec: &QuadratureSpec, mut inner: F) -> Result<QuadratureResult>
where
    F: FnMut(f64) -> Result<QuadratureResult>,
{
    let mut failure = None;
    let mut worst_inner = 0.0f64;
    let mut inner_evaluations = 0usize;
    let outer = integrate_1d_with_breakpoints(
        |x| {
            if failure.is_some() {
                return 0.0;
            }
            match inner(x) {
                Ok(r) => {
                    worst_inner = worst_inner.max(r.error_estimate);
                    inner_evaluations += r.evaluations;
                    r.value
                }
                Err(e) => {
                    failure = Some(e);
                    0.0
                }
            }
        },
        lo,
        hi,
        breaks,
        spec,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let outer = outer?;
    Ok(QuadratureResult {
        value: outer.value,
        error_estimate: outer.error_estimate + worst_inner * (hi - lo),
        subdivisions: outer.subdivisions,
        evaluations: inner_evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn geom(delays: [f64; 4], widths: [f64; 4]) -> ExperimentGeometry {
        ExperimentGeometry::new(delays, widths).unwrap()
    }

    #[test]
    fn hom_cancels_for_identical_pulses() {
        let g = geom([1.0, 1.0, 0.5, 2.0], [1.0, 1.0, 0.7, 1.3]);
        let res = oracle_hom(&g, &QuadratureSpec::default()).unwrap();
        assert!(res.value.abs() <= 1e-9);
    }

    #[test]
    fn hom_plateau_for_separated_pulses() {
        let g = geom([0.0, 30.0, 1.0, 1.0], [1.0; 4]);
        let res = oracle_hom(&g, &QuadratureSpec::default()).unwrap();
        assert!((res.value - 1.0 / (4.0 * PI)).abs() <= 1e-9, "{}", res.value);
    }

    #[test]
    fn zero_window_is_zero() {
        let g = geom([2.0, 5.0, 2.0, 2.0], [1.0, 1.0, 3.0, 0.1]);
        let res = oracle_windowed(&g, 4.0, 5.5, 0.0, &QuadratureSpec::default()).unwrap();
        assert_eq!(res.value, 0.0);
        assert!(oracle_windowed(&g, 4.0, 5.5, -0.5, &QuadratureSpec::default()).is_err());
    }

    #[test]
    fn general_input_oracle_reduces_to_joint_for_one_one() {
        let g = geom([0.0, 2.0, 1.0, 1.0], [1.0, 1.0, 0.5, 0.5]);
        let spec = QuadratureSpec::default();
        let via_amp = oracle_coincidence_for_input(&FockInput::number_states(1, 1), &g, &spec).unwrap();
        let via_joint = oracle_hom(&g, &spec).unwrap();
        assert!((via_amp.value - via_joint.value).abs() <= 1e-10);
    }

    #[test]
    fn general_input_oracle_rejects_three_photons() {
        let g = geom([0.0, 2.0, 1.0, 1.0], [1.0; 4]);
        assert!(oracle_coincidence_for_input(&FockInput::number_states(3, 0), &g, &QuadratureSpec::default()).is_err());
    }
}
