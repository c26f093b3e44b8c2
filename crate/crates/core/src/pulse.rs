//! Gaussian envelopes, detector filters and the beam-splitter geometry.
//!
//! All times are unitless. An envelope of width `w` centred at `c` is the
//! amplitude density `exp(-(t - c)^2 / w^2) / sqrt(pi w^2)`, which integrates
//! to one over the real line. Its squared modulus does not.
//!
//! A frequency filter in front of a detector acts in the time domain as a
//! convolution with a zero-centred envelope. Convolving two envelopes adds
//! their centres and adds their squared widths, so every pulse that reaches a
//! detector is again a [`GaussianEnvelope`].

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, ensure_positive, Error, Result};

/// Tolerance on `r^2 + t^2 = 1` accepted by [`validate_splitter`].
pub const UNITARITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianEnvelope {
    center: f64,
    width: f64,
}

impl GaussianEnvelope {
    pub fn new(center: f64, width: f64) -> Result<Self> {
        ensure_finite("envelope center", center)?;
        ensure_positive("envelope width", width)?;
        Ok(Self { center, width })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    /// Squared width, the quantity that adds under convolution.
    pub fn width_sq(&self) -> f64 {
        self.width * self.width
    }

    /// Amplitude density at `t`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        ensure_finite("evaluation time", t)?;
        Ok(self.value(t))
    }

    #[inline]
    pub(crate) fn value(&self, t: f64) -> f64 {
        let w2 = self.width_sq();
        let x = t - self.center;
        (-(x * x) / w2).exp() / (PI * w2).sqrt()
    }

    /// Convolution of two envelopes.
    pub fn convolve(&self, other: &GaussianEnvelope) -> GaussianEnvelope {
        GaussianEnvelope {
            center: self.center + other.center,
            width: (self.width_sq() + other.width_sq()).sqrt(),
        }
    }
}

/// Evaluates `env` at `t`.
pub fn envelope_eval(env: &GaussianEnvelope, t: f64) -> Result<f64> {
    env.eval(t)
}

/// Filter response of width `filter_width` convolved with a pulse of width
/// `pulse_width` that arrives after `composite_delay`, evaluated at `t_prime`.
pub fn convolve_filter_pulse(
    filter_width: f64,
    pulse_width: f64,
    composite_delay: f64,
    t_prime: f64,
) -> Result<f64> {
    ensure_positive("filter width", filter_width)?;
    ensure_positive("pulse width", pulse_width)?;
    ensure_finite("composite delay", composite_delay)?;
    ensure_finite("evaluation time", t_prime)?;
    Ok(filtered_value(
        filter_width * filter_width + pulse_width * pulse_width,
        composite_delay,
        t_prime,
    ))
}

/// `exp(-(t - center)^2 / s) / sqrt(pi s)` for a combined squared width `s`.
#[inline]
pub(crate) fn filtered_value(width_sq: f64, center: f64, t: f64) -> f64 {
    let x = t - center;
    (-(x * x) / width_sq).exp() / (PI * width_sq).sqrt()
}

/// Real amplitudes of a lossless beam splitter. The minus sign on the
/// reflected `d` arm of the `a` input is applied by consumers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeamSplitter {
    #[serde(rename = "r")]
    reflectance: f64,
    #[serde(rename = "t")]
    transmittance: f64,
}

impl BeamSplitter {
    pub fn balanced() -> Self {
        Self {
            reflectance: FRAC_1_SQRT_2,
            transmittance: FRAC_1_SQRT_2,
        }
    }

    pub fn reflectance(&self) -> f64 {
        self.reflectance
    }

    pub fn transmittance(&self) -> f64 {
        self.transmittance
    }

    pub fn is_balanced(&self) -> bool {
        (self.reflectance - FRAC_1_SQRT_2).abs() <= UNITARITY_TOLERANCE
            && (self.transmittance - FRAC_1_SQRT_2).abs() <= UNITARITY_TOLERANCE
    }

    pub(crate) fn require_balanced(&self) -> Result<()> {
        if self.is_balanced() {
            Ok(())
        } else {
            Err(Error::UnbalancedSplitter {
                r: self.reflectance,
                t: self.transmittance,
            })
        }
    }
}

impl Default for BeamSplitter {
    fn default() -> Self {
        Self::balanced()
    }
}

/// Checks `r, t >= 0` and `r^2 + t^2 = 1`.
pub fn validate_splitter(r: f64, t: f64) -> Result<BeamSplitter> {
    ensure_finite("reflectance", r)?;
    ensure_finite("transmittance", t)?;
    if r < 0.0 || t < 0.0 {
        return Err(Error::Domain(format!(
            "splitter amplitudes must be nonnegative, got r = {r}, t = {t}"
        )));
    }
    let residual = r * r + t * t - 1.0;
    if residual.abs() > UNITARITY_TOLERANCE {
        return Err(Error::Unitarity { r, t, residual });
    }
    Ok(BeamSplitter {
        reflectance: r,
        transmittance: t,
    })
}

/// Input port of the splitter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    A,
    B,
}

/// Output port, each followed by a filter and a detector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Detector {
    C,
    D,
}

/// Path delays and widths of the two-source, two-detector setup.
///
/// `t_a`, `t_b` are the source-to-splitter delays, `t_c`, `t_d` the
/// splitter-to-detector delays. `delta_a`, `delta_b` are the pulse widths and
/// `delta_c`, `delta_d` the filter widths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentGeometry {
    pub t_a: f64,
    pub t_b: f64,
    pub t_c: f64,
    pub t_d: f64,
    pub delta_a: f64,
    pub delta_b: f64,
    pub delta_c: f64,
    pub delta_d: f64,
    #[serde(default)]
    pub splitter: BeamSplitter,
}

impl ExperimentGeometry {
    /// Balanced-splitter geometry from `[t_a, t_b, t_c, t_d]` and
    /// `[delta_a, delta_b, delta_c, delta_d]`.
    pub fn new(delays: [f64; 4], widths: [f64; 4]) -> Result<Self> {
        let geom = Self {
            t_a: delays[0],
            t_b: delays[1],
            t_c: delays[2],
            t_d: delays[3],
            delta_a: widths[0],
            delta_b: widths[1],
            delta_c: widths[2],
            delta_d: widths[3],
            splitter: BeamSplitter::balanced(),
        };
        geom.validate()?;
        Ok(geom)
    }

    pub fn with_splitter(mut self, splitter: BeamSplitter) -> Self {
        self.splitter = splitter;
        self
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite("t_a", self.t_a)?;
        ensure_finite("t_b", self.t_b)?;
        ensure_finite("t_c", self.t_c)?;
        ensure_finite("t_d", self.t_d)?;
        ensure_positive("delta_a", self.delta_a)?;
        ensure_positive("delta_b", self.delta_b)?;
        ensure_positive("delta_c", self.delta_c)?;
        ensure_positive("delta_d", self.delta_d)?;
        validate_splitter(self.splitter.reflectance, self.splitter.transmittance)?;
        Ok(())
    }

    pub fn source_delay(&self, src: Source) -> f64 {
        match src {
            Source::A => self.t_a,
            Source::B => self.t_b,
        }
    }

    pub fn detector_delay(&self, det: Detector) -> f64 {
        match det {
            Detector::C => self.t_c,
            Detector::D => self.t_d,
        }
    }

    pub fn source_width(&self, src: Source) -> f64 {
        match src {
            Source::A => self.delta_a,
            Source::B => self.delta_b,
        }
    }

    pub fn filter_width(&self, det: Detector) -> f64 {
        match det {
            Detector::C => self.delta_c,
            Detector::D => self.delta_d,
        }
    }

    /// Composite delay `t_det + t_src`.
    pub fn delay(&self, det: Detector, src: Source) -> f64 {
        self.detector_delay(det) + self.source_delay(src)
    }

    /// Combined squared width `delta_det^2 + delta_src^2`.
    pub fn width_sq(&self, det: Detector, src: Source) -> f64 {
        let f = self.filter_width(det);
        let p = self.source_width(src);
        f * f + p * p
    }

    /// The pulse from `src` as seen through the filter of `det`.
    pub fn filtered_pulse(&self, det: Detector, src: Source) -> GaussianEnvelope {
        GaussianEnvelope {
            center: self.delay(det, src),
            width: self.width_sq(det, src).sqrt(),
        }
    }

    /// Filter-pulse convolution `G(t, det, src)`.
    #[inline]
    pub fn g(&self, det: Detector, src: Source, t: f64) -> f64 {
        filtered_value(self.width_sq(det, src), self.delay(det, src), t)
    }
}
