//! Closed-form coincidence probabilities for `|1>_a |1>_b` on a balanced
//! splitter.
//!
//! With `S_ij = delta_i^2 + delta_j^2` and `t_ij = t_i + t_j` the joint
//! density is
//!
//! ```text
//! P(tau_c, tau_d) = |A - B|^2 / (2 pi^2)
//! A = exp(-(tau_c - t_cb)^2 / S_cb - (tau_d - t_da)^2 / S_da) / sqrt(S_cb S_da)
//! B = exp(-(tau_c - t_ca)^2 / S_ca - (tau_d - t_db)^2 / S_db) / sqrt(S_ca S_db)
//! ```
//!
//! `A` is the `b -> c, a -> d` path and `B` the `a -> c, b -> d` path. Every
//! integrated quantity below is a sum of Gaussian integrals of `A^2`, `B^2`
//! and the cross term `2AB`. Values are densities in the unnormalized
//! envelope convention, not renormalized probabilities.

use std::f64::consts::{PI, SQRT_2};

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};
use crate::pulse::{Detector, ExperimentGeometry, Source};
use crate::quadrature::{integrate_1d_with_breakpoints, QuadratureSpec};
use crate::special::erf;

/// Detection window `(center - half_width, center + half_width)` on detector `d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectionWindow {
    pub center: f64,
    pub half_width: f64,
}

impl DetectionWindow {
    pub fn new(center: f64, half_width: f64) -> Result<Self> {
        ensure_finite("window center", center)?;
        ensure_finite("window half-width", half_width)?;
        if half_width < 0.0 {
            return Err(Error::Domain(format!(
                "window half-width must be >= 0, got {half_width}"
            )));
        }
        Ok(Self { center, half_width })
    }
}

/// Detection times, plus a window on detector `d` for windowed queries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoincidenceQuery {
    pub tau_c: f64,
    pub tau_d: f64,
    pub window: Option<DetectionWindow>,
}

/// Squared widths and delays of the four filtered pulses.
#[derive(Debug, Clone, Copy)]
struct Paths {
    s_ca: f64,
    s_cb: f64,
    s_da: f64,
    s_db: f64,
    t_ca: f64,
    t_cb: f64,
    t_da: f64,
    t_db: f64,
}

impl Paths {
    fn of(geom: &ExperimentGeometry) -> Self {
        Self {
            s_ca: geom.width_sq(Detector::C, Source::A),
            s_cb: geom.width_sq(Detector::C, Source::B),
            s_da: geom.width_sq(Detector::D, Source::A),
            s_db: geom.width_sq(Detector::D, Source::B),
            t_ca: geom.delay(Detector::C, Source::A),
            t_cb: geom.delay(Detector::C, Source::B),
            t_da: geom.delay(Detector::D, Source::A),
            t_db: geom.delay(Detector::D, Source::B),
        }
    }

    /// The two path products `(A, B)`.
    #[inline]
    fn products(&self, tau_c: f64, tau_d: f64) -> (f64, f64) {
        let x = tau_c - self.t_cb;
        let y = tau_d - self.t_da;
        let a = (-(x * x) / self.s_cb - (y * y) / self.s_da).exp() / (self.s_cb * self.s_da).sqrt();
        let x = tau_c - self.t_ca;
        let y = tau_d - self.t_db;
        let b = (-(x * x) / self.s_ca - (y * y) / self.s_db).exp() / (self.s_ca * self.s_db).sqrt();
        (a, b)
    }
}

fn checked(geom: &ExperimentGeometry) -> Result<Paths> {
    geom.validate()?;
    geom.splitter.require_balanced()?;
    Ok(Paths::of(geom))
}

const JOINT_NORM: f64 = 1.0 / (2.0 * PI * PI);

/// Joint density of one photon at `c` at `tau_c` and one at `d` at `tau_d`.
pub fn joint_probability(geom: &ExperimentGeometry, tau_c: f64, tau_d: f64) -> Result<f64> {
    let paths = checked(geom)?;
    ensure_finite("tau_c", tau_c)?;
    ensure_finite("tau_d", tau_d)?;
    let (a, b) = paths.products(tau_c, tau_d);
    Ok(JOINT_NORM * (a - b) * (a - b))
}

/// Joint density with the cross term removed, as if the two paths were
/// distinguishable.
pub fn no_interference_probability(geom: &ExperimentGeometry, tau_c: f64, tau_d: f64) -> Result<f64> {
    let paths = checked(geom)?;
    ensure_finite("tau_c", tau_c)?;
    ensure_finite("tau_d", tau_d)?;
    let (a, b) = paths.products(tau_c, tau_d);
    Ok(JOINT_NORM * (a * a + b * b))
}

/// The two path contributions `(A^2, B^2)` and the cross term `2AB`, each in
/// the normalization of [`joint_probability`].
pub fn path_terms(geom: &ExperimentGeometry, tau_c: f64, tau_d: f64) -> Result<(f64, f64, f64)> {
    let paths = checked(geom)?;
    ensure_finite("tau_c", tau_c)?;
    ensure_finite("tau_d", tau_d)?;
    let (a, b) = paths.products(tau_c, tau_d);
    Ok((JOINT_NORM * a * a, JOINT_NORM * b * b, JOINT_NORM * 2.0 * a * b))
}

/// Coincidence probability after integrating both detection times.
/// Independent of `t_c` and `t_d`.
pub fn hom_probability(geom: &ExperimentGeometry) -> Result<f64> {
    let p = checked(geom)?;
    let sum_c = p.s_ca + p.s_cb;
    let sum_d = p.s_da + p.s_db;
    let dt = geom.t_a - geom.t_b;
    let first = 1.0 / (p.s_cb * p.s_da).sqrt();
    let second = 1.0 / (p.s_ca * p.s_db).sqrt();
    let overlap = 4.0 * (-dt * dt * (sum_c + sum_d) / (sum_c * sum_d)).exp() / (sum_c * sum_d).sqrt();
    Ok(((first + second - overlap) / (4.0 * PI)).max(0.0))
}

/// The two distinguishable-path pieces of the marginal, before scaling.
#[inline]
fn marginal_paths(p: &Paths, tau_c: f64) -> (f64, f64) {
    let x = tau_c - p.t_cb;
    let a2 = (-2.0 * x * x / p.s_cb).exp() / (p.s_cb * p.s_da.sqrt());
    let x = tau_c - p.t_ca;
    let b2 = (-2.0 * x * x / p.s_ca).exp() / (p.s_ca * p.s_db.sqrt());
    (a2, b2)
}

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// `sqrt 2 / (4 pi^(3/2))`, the scale of the squared-path pieces of the marginal.
const MARGINAL_NORM: f64 = SQRT_2 / (4.0 * PI * SQRT_PI);

/// Coincidence density at `tau_c` after integrating `tau_d` over the real line.
///
/// Integrating the cross term over `tau_d` completes the square in the two
/// `d`-arm Gaussians, leaving
///
/// ```text
/// exp(-H) / (pi^(3/2) sqrt(S_ca S_cb (S_da + S_db)))
/// H = (tau_c - t_ca)^2 / S_ca + (tau_c - t_cb)^2 / S_cb + (t_a - t_b)^2 / (S_da + S_db)
/// ```
pub fn marginal_probability(geom: &ExperimentGeometry, tau_c: f64) -> Result<f64> {
    let p = checked(geom)?;
    ensure_finite("tau_c", tau_c)?;
    let (a2, b2) = marginal_paths(&p, tau_c);
    let cross = marginal_cross(&p, geom, tau_c);
    Ok((MARGINAL_NORM * (a2 + b2) - cross).max(0.0))
}

/// [`marginal_probability`] without the cross term.
pub fn no_interference_marginal(geom: &ExperimentGeometry, tau_c: f64) -> Result<f64> {
    let p = checked(geom)?;
    ensure_finite("tau_c", tau_c)?;
    let (a2, b2) = marginal_paths(&p, tau_c);
    Ok(MARGINAL_NORM * (a2 + b2))
}

fn marginal_cross(p: &Paths, geom: &ExperimentGeometry, tau_c: f64) -> f64 {
    let sum_d = p.s_da + p.s_db;
    let dt = geom.t_a - geom.t_b;
    let xa = tau_c - p.t_ca;
    let xb = tau_c - p.t_cb;
    let h = xa * xa / p.s_ca + xb * xb / p.s_cb + dt * dt / sum_d;
    (-h).exp() / (PI * SQRT_PI * (p.s_ca * p.s_cb * sum_d).sqrt())
}

/// `erf(sqrt2 (t2 + t1) / sqrt D) - erf(sqrt2 (t2 - t1) / sqrt D)`.
///
/// Twice the normalized mass of `exp(-2 (v - t2)^2 / D)` inside a window of
/// half-width `t1` around zero.
pub fn window_span(t1: f64, t2: f64, big_delta: f64) -> f64 {
    let k = SQRT_2 / big_delta.sqrt();
    erf(k * (t2 + t1)) - erf(k * (t2 - t1))
}

/// Quadrature controls for the windowed fallback path.
pub const WINDOW_FALLBACK_SPEC: QuadratureSpec = QuadratureSpec {
    absolute_tolerance: 1e-13,
    max_subdivisions: 2000,
    truncation_sigmas: 12.0,
};

/// Coincidence probability at `tau_c` with detector `d` integrated over
/// `(window_center - t_w, window_center + t_w)`.
///
/// Equal input widths (`delta_a == delta_b`) take an erf closed form after
/// shifting times so that `t_b = t_c = t_d = 0`. Other geometries integrate
/// [`joint_probability`] over the window with adaptive quadrature.
pub fn windowed_probability(
    geom: &ExperimentGeometry,
    tau_c: f64,
    window_center: f64,
    t_w: f64,
) -> Result<f64> {
    let p = checked(geom)?;
    ensure_finite("tau_c", tau_c)?;
    let window = DetectionWindow::new(window_center, t_w)?;
    if window.half_width == 0.0 {
        return Ok(0.0);
    }
    if geom.delta_a == geom.delta_b {
        Ok(windowed_equal_widths(geom, tau_c, &window))
    } else {
        windowed_by_quadrature(&p, tau_c, &window)
    }
}

/// Erf closed form for `delta_a == delta_b`.
fn windowed_equal_widths(geom: &ExperimentGeometry, tau_c: f64, window: &DetectionWindow) -> f64 {
    let s_c = geom.width_sq(Detector::C, Source::A);
    let s_d = geom.width_sq(Detector::D, Source::A);
    // shift so that the b pulse arrives at both detectors at time zero
    let t_ab = geom.t_a - geom.t_b;
    let u = tau_c - (geom.t_b + geom.t_c);
    let v = window.center - (geom.t_b + geom.t_d);
    let t_w = window.half_width;

    let b_to_c = (-2.0 * u * u / s_c).exp() * window_span(t_w, t_ab - v, s_d);
    let a_to_c = (-2.0 * (u - t_ab) * (u - t_ab) / s_c).exp() * window_span(t_w, v, s_d);
    let overlap = 2.0
        * (-(u * u + (u - t_ab) * (u - t_ab)) / s_c - t_ab * t_ab / (2.0 * s_d)).exp()
        * window_span(2.0 * t_w, t_ab - 2.0 * v, 4.0 * s_d);
    let scale = 1.0 / (4.0 * SQRT_2 * PI * SQRT_PI * s_c * s_d.sqrt());
    (scale * (b_to_c + a_to_c - overlap)).max(0.0)
}

fn windowed_by_quadrature(
    paths: &Paths,
    tau_c: f64,
    window: &DetectionWindow,
) -> Result<f64> {
    let (lo, hi) = (window.center - window.half_width, window.center + window.half_width);
    let spec = WINDOW_FALLBACK_SPEC;
    let Some((lo, hi, breaks)) = d_arm_support(paths, lo, hi, spec.truncation_sigmas) else {
        return Ok(0.0);
    };
    let res = integrate_1d_with_breakpoints(
        |v| {
            let (a, b) = paths.products(tau_c, v);
            JOINT_NORM * (a - b) * (a - b)
        },
        lo,
        hi,
        &breaks,
        &spec,
    )?;
    Ok(res.value.max(0.0))
}

/// Clips `[lo, hi]` to the region where the `d`-arm Gaussians are
/// non-negligible and returns breakpoints at multiples of their widths.
fn d_arm_support(
    paths: &Paths,
    lo: f64,
    hi: f64,
    sigmas: f64,
) -> Option<(f64, f64, Vec<f64>)> {
    let components = [
        (paths.t_da, paths.s_da),
        (paths.t_db, paths.s_db),
        (
            (paths.t_da * paths.s_db + paths.t_db * paths.s_da) / (paths.s_da + paths.s_db),
            paths.s_da * paths.s_db / (paths.s_da + paths.s_db),
        ),
    ];
    gaussian_support(&components, lo, hi, sigmas)
}

/// Same as [`d_arm_support`] for the `c` arm.
fn c_arm_support(
    paths: &Paths,
    lo: f64,
    hi: f64,
    sigmas: f64,
) -> Option<(f64, f64, Vec<f64>)> {
    let components = [
        (paths.t_ca, paths.s_ca),
        (paths.t_cb, paths.s_cb),
        (
            (paths.t_ca * paths.s_cb + paths.t_cb * paths.s_ca) / (paths.s_ca + paths.s_cb),
            paths.s_ca * paths.s_cb / (paths.s_ca + paths.s_cb),
        ),
    ];
    gaussian_support(&components, lo, hi, sigmas)
}

/// `components` are `(center, squared width)` of Gaussians in the amplitude
/// convention `exp(-x^2 / s)`.
fn gaussian_support(
    components: &[(f64, f64)],
    lo: f64,
    hi: f64,
    sigmas: f64,
) -> Option<(f64, f64, Vec<f64>)> {
    let widest = components.iter().map(|c| c.1.sqrt()).fold(0.0, f64::max);
    let first = components.iter().map(|c| c.0).fold(f64::INFINITY, f64::min);
    let last = components.iter().map(|c| c.0).fold(f64::NEG_INFINITY, f64::max);
    let lo = lo.max(first - sigmas * widest);
    let hi = hi.min(last + sigmas * widest);
    if lo >= hi {
        return None;
    }
    // probability widths are sqrt(s / 2)
    let steps = sigmas.ceil() as i32;
    let mut breaks = Vec::new();
    for &(center, s) in components {
        let w = (s / 2.0).sqrt();
        breaks.extend((-steps..=steps).map(|j| center + j as f64 * w));
    }
    Some((lo, hi, breaks))
}

pub(crate) fn paths_of(geom: &ExperimentGeometry) -> Result<PathsHandle> {
    Ok(PathsHandle(checked(geom)?))
}

/// Validated path data shared with the oracle.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PathsHandle(Paths);

impl PathsHandle {
    #[inline]
    pub(crate) fn joint(&self, tau_c: f64, tau_d: f64) -> f64 {
        let (a, b) = self.0.products(tau_c, tau_d);
        JOINT_NORM * (a - b) * (a - b)
    }

    #[inline]
    pub(crate) fn no_interference(&self, tau_c: f64, tau_d: f64) -> f64 {
        let (a, b) = self.0.products(tau_c, tau_d);
        JOINT_NORM * (a * a + b * b)
    }

    pub(crate) fn d_support(&self, lo: f64, hi: f64, sigmas: f64) -> Option<(f64, f64, Vec<f64>)> {
        d_arm_support(&self.0, lo, hi, sigmas)
    }

    pub(crate) fn c_support(&self, lo: f64, hi: f64, sigmas: f64) -> Option<(f64, f64, Vec<f64>)> {
        c_arm_support(&self.0, lo, hi, sigmas)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{coincidence_amplitude_11, FockInput};
    use crate::pulse::validate_splitter;

    fn geom(delays: [f64; 4], widths: [f64; 4]) -> ExperimentGeometry {
        ExperimentGeometry::new(delays, widths).unwrap()
    }

    fn fig2() -> ExperimentGeometry {
        geom([2.0, 3.0, 2.0, 3.0], [1.0; 4])
    }

    #[test]
    fn joint_cancels_on_the_midpoint() {
        assert_eq!(joint_probability(&fig2(), 4.5, 5.5).unwrap(), 0.0);
    }

    #[test]
    fn joint_matches_amplitude() {
        let g = fig2();
        let amp = coincidence_amplitude_11(&FockInput::number_states(1, 1), &g, 4.0, 6.0).unwrap();
        let p = joint_probability(&g, 4.0, 6.0).unwrap();
        assert!((amp.norm_sqr() - p).abs() <= 1e-14);
    }

    #[test]
    fn joint_peak_region_beats_valley() {
        let g = fig2();
        let peak = joint_probability(&g, 4.0, 6.0).unwrap();
        let other = joint_probability(&g, 5.0, 5.0).unwrap();
        assert_eq!(peak, other);
        assert!(peak > 1e-3);
    }

    #[test]
    fn no_interference_has_no_dip() {
        let g = fig2();
        assert!(no_interference_probability(&g, 4.5, 5.5).unwrap() > 1e-3);
    }

    #[test]
    fn far_pulses_lose_the_cross_term() {
        let g = geom([2.0, 30.0, 2.0, 3.0], [1.0; 4]);
        for (tc, td) in [(4.0, 33.0), (32.0, 5.0)] {
            let j = joint_probability(&g, tc, td).unwrap();
            let n = no_interference_probability(&g, tc, td).unwrap();
            assert!((j - n).abs() <= 1e-10);
        }
    }

    #[test]
    fn cross_term_identity() {
        let g = geom([0.4, 1.3, 0.2, 0.9], [1.0, 0.7, 2.0, 0.5]);
        for (tc, td) in [(0.5, 1.0), (1.6, 2.2), (3.0, -1.0)] {
            let (t1, t2, cross) = path_terms(&g, tc, td).unwrap();
            let j = joint_probability(&g, tc, td).unwrap();
            let n = no_interference_probability(&g, tc, td).unwrap();
            assert!((n - j - cross).abs() <= 1e-16);
            assert!(cross.abs() <= 2.0 * (t1 * t2).sqrt() * (1.0 + 1e-15));
        }
    }

    #[test]
    fn closed_forms_need_a_balanced_splitter() {
        let g = fig2().with_splitter(validate_splitter(0.6, 0.8).unwrap());
        assert!(matches!(joint_probability(&g, 0.0, 0.0), Err(Error::UnbalancedSplitter { .. })));
        assert!(hom_probability(&g).is_err());
        assert!(marginal_probability(&g, 0.0).is_err());
        assert!(windowed_probability(&g, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn hom_zero_dip_and_plateau() {
        let g = geom([1.0, 1.0, 0.0, 5.0], [0.8, 0.8, 0.3, 2.0]);
        assert!(hom_probability(&g).unwrap() <= 1e-15);
        let far = geom([0.0, 40.0, 1.0, 1.0], [1.0, 1.0, 0.5, 0.5]);
        let want = 1.0 / (2.0 * PI * (1.0 + 0.25));
        assert!((hom_probability(&far).unwrap() - want).abs() < 1e-15);
    }

    #[test]
    fn hom_ignores_detector_delays() {
        let a = hom_probability(&geom([0.0, 1.0, 1.0, 1.0], [1.0, 1.2, 0.4, 2.0])).unwrap();
        let b = hom_probability(&geom([0.0, 1.0, -7.0, 3.5], [1.0, 1.2, 0.4, 2.0])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn window_edge_cases() {
        let g = geom([2.0, 5.0, 2.0, 2.0], [1.0, 1.0, 3.0, 0.1]);
        assert_eq!(windowed_probability(&g, 4.0, 5.5, 0.0).unwrap(), 0.0);
        assert!(matches!(windowed_probability(&g, 4.0, 5.5, -1.0), Err(Error::Domain(_))));
        let wide = windowed_probability(&g, 4.0, 5.5, 200.0).unwrap();
        let full = marginal_probability(&g, 4.0).unwrap();
        assert!((wide - full).abs() <= 1e-12);
    }

    #[test]
    fn window_span_is_odd_safe_at_zero() {
        assert_eq!(window_span(0.0, 0.0, 1.0), 0.0);
        assert_eq!(window_span(1.0, 0.0, 2.0), 2.0 * erf(1.0));
        assert_eq!(window_span(1.0, 0.7, 2.0), window_span(1.0, -0.7, 2.0));
    }

    #[test]
    fn unequal_widths_use_quadrature() {
        let g = geom([2.0, 5.0, 2.0, 2.0], [1.0, 1.5, 3.0, 0.1]);
        let wide = windowed_probability(&g, 4.0, 5.5, 200.0).unwrap();
        let full = marginal_probability(&g, 4.0).unwrap();
        assert!((wide - full).abs() <= 1e-12, "{wide} vs {full}");
    }
}
