//! Number-state inputs pushed through the splitter and filters.
//!
//! A block `c_n^a c_m^b |n>_a |m>_b` becomes a polynomial in the output
//! creation operators. Each monomial `(c^dag)^(p+q) (d^dag)^(n+m-p-q)` is kept
//! as an [`OutputTerm`]: integer exponents plus a scalar weight that is a
//! product of filtered-pulse factors `G(tau, det, src)`. Detector `c` factors
//! are evaluated at `tau_c`, detector `d` factors at `tau_d`.
//!
//! Normalization follows the balanced-splitter convention of the closed
//! forms: a block carries `1 / sqrt(2 n! m!)` and each photon contributes
//! `sqrt 2` times its splitter amplitude, so for `r = t = 1/sqrt 2` every
//! splitter factor is `+-1`. The vacuum block passes through with weight one.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pulse::{Detector, ExperimentGeometry, Source};

/// Tolerance on `sum |c|^2 = 1` for each input mode.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct FockInput {
    coeffs_a: Vec<Complex64>,
    coeffs_b: Vec<Complex64>,
    truncation: usize,
}

impl FockInput {
    /// `coeffs_a[n]` is `c_n^a`, `coeffs_b[m]` is `c_m^b`. `truncation` is the
    /// largest total photon number `n + m` that [`expand_output`] accepts.
    pub fn new(coeffs_a: Vec<Complex64>, coeffs_b: Vec<Complex64>, truncation: usize) -> Result<Self> {
        for (mode, coeffs) in [('a', &coeffs_a), ('b', &coeffs_b)] {
            let mut norm = 0.0;
            for c in coeffs.iter() {
                if !c.re.is_finite() || !c.im.is_finite() {
                    return Err(Error::Domain(format!("non-finite coefficient in mode {mode}")));
                }
                norm += c.norm_sqr();
            }
            if (norm - 1.0).abs() > NORMALIZATION_TOLERANCE {
                return Err(Error::Normalization { mode, norm });
            }
            if let Some(top) = coeffs.iter().rposition(|c| *c != Complex64::new(0.0, 0.0)) {
                if top > truncation {
                    return Err(Error::Domain(format!(
                        "truncation {truncation} is below the highest occupied index {top} of mode {mode}"
                    )));
                }
            }
        }
        Ok(Self {
            coeffs_a,
            coeffs_b,
            truncation,
        })
    }

    /// `|n>_a |m>_b`, truncated at `n + m`.
    pub fn number_states(n: usize, m: usize) -> Self {
        let mut coeffs_a = vec![Complex64::new(0.0, 0.0); n + 1];
        let mut coeffs_b = vec![Complex64::new(0.0, 0.0); m + 1];
        coeffs_a[n] = Complex64::new(1.0, 0.0);
        coeffs_b[m] = Complex64::new(1.0, 0.0);
        Self {
            coeffs_a,
            coeffs_b,
            truncation: n + m,
        }
    }

    pub fn coeffs_a(&self) -> &[Complex64] {
        &self.coeffs_a
    }

    pub fn coeffs_b(&self) -> &[Complex64] {
        &self.coeffs_b
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// Occupied blocks `(n, m, c_n^a c_m^b)` in `(n, m)` order.
    pub fn blocks(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.coeffs_a.iter().enumerate().flat_map(move |(n, ca)| {
            self.coeffs_b.iter().enumerate().filter_map(move |(m, cb)| {
                let c = ca * cb;
                (c != Complex64::new(0.0, 0.0)).then_some((n, m, c))
            })
        })
    }

    fn coeff_a(&self, n: usize) -> Complex64 {
        self.coeffs_a.get(n).copied().unwrap_or_default()
    }

    fn coeff_b(&self, m: usize) -> Complex64 {
        self.coeffs_b.get(m).copied().unwrap_or_default()
    }
}

/// One monomial of the expanded output state.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputTerm {
    /// Input block this term came from.
    pub n: usize,
    pub m: usize,
    /// Photons of the `a` pulse routed to `c`.
    pub p: usize,
    /// Photons of the `b` pulse routed to `c`.
    pub q: usize,
    /// `binomial(n, p) * binomial(m, q)`.
    pub binomial: u64,
    /// Everything except the pulse factors: input coefficients,
    /// normalization, binomial, splitter amplitudes and sign.
    pub coefficient: Complex64,
}

impl OutputTerm {
    pub fn power_c(&self) -> usize {
        self.p + self.q
    }

    pub fn power_d(&self) -> usize {
        self.n + self.m - self.p - self.q
    }

    /// `(-1)^(n - p)` from the reflected `d` arm of the `a` pulse.
    pub fn sign(&self) -> i32 {
        if (self.n - self.p) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Scalar weight at detection times `(tau_c, tau_d)`.
    pub fn weight(&self, geom: &ExperimentGeometry, tau_c: f64, tau_d: f64) -> Complex64 {
        let g_ca = geom.g(Detector::C, Source::A, tau_c);
        let g_da = geom.g(Detector::D, Source::A, tau_d);
        let g_cb = geom.g(Detector::C, Source::B, tau_c);
        let g_db = geom.g(Detector::D, Source::B, tau_d);
        let pulses = powi(g_ca, self.p)
            * powi(g_da, self.n - self.p)
            * powi(g_cb, self.q)
            * powi(g_db, self.m - self.q);
        self.coefficient * pulses
    }
}

fn powi(x: f64, k: usize) -> f64 {
    x.powi(k as i32)
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

fn binomial(n: usize, k: usize) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Binomial expansion of every occupied block through the splitter.
pub fn expand_output(input: &FockInput, geom: &ExperimentGeometry) -> Result<Vec<OutputTerm>> {
    geom.validate()?;
    let offending: Vec<_> = input
        .blocks()
        .filter(|&(n, m, _)| n + m > input.truncation)
        .map(|(n, m, _)| (n, m))
        .collect();
    if !offending.is_empty() {
        return Err(Error::Truncation {
            truncation: input.truncation,
            offending,
        });
    }

    let t = geom.splitter.transmittance() * SQRT_2;
    let r = geom.splitter.reflectance() * SQRT_2;
    let mut terms = Vec::new();
    for (n, m, c) in input.blocks() {
        let norm = if n + m == 0 {
            1.0
        } else {
            1.0 / (2.0 * factorial(n) * factorial(m)).sqrt()
        };
        for p in 0..=n {
            for q in 0..=m {
                let binom = binomial(n, p) * binomial(m, q);
                let splitter = powi(t, p) * powi(-r, n - p) * powi(r, q) * powi(t, m - q);
                terms.push(OutputTerm {
                    n,
                    m,
                    p,
                    q,
                    binomial: binom,
                    coefficient: c * (norm * binom as f64 * splitter),
                });
            }
        }
    }
    Ok(terms)
}

/// `<power_c, power_d | psi_out>` summed over `terms`.
pub fn project(
    terms: &[OutputTerm],
    power_c: usize,
    power_d: usize,
    geom: &ExperimentGeometry,
    tau_c: f64,
    tau_d: f64,
) -> Complex64 {
    let norm = (factorial(power_c) * factorial(power_d)).sqrt();
    terms
        .iter()
        .filter(|term| term.power_c() == power_c && term.power_d() == power_d)
        .map(|term| term.weight(geom, tau_c, tau_d))
        .sum::<Complex64>()
        * norm
}

/// Amplitude for one photon at detector `c` at `tau_c` and one at `d` at
/// `tau_d`.
///
/// Only blocks with `n + m = 2` contribute:
///
/// ```text
///   2rt c2a c0b G(c,a) G(d,a)
/// + sqrt2 c1a c1b (r^2 G(c,b) G(d,a) - t^2 G(c,a) G(d,b))
/// - 2rt c0a c2b G(c,b) G(d,b)
/// ```
///
/// which is the negative of the `(1, 1)` projection of [`expand_output`].
/// For `|1>|1>` on a balanced splitter its modulus squared is the joint
/// probability density.
pub fn coincidence_amplitude_11(
    input: &FockInput,
    geom: &ExperimentGeometry,
    tau_c: f64,
    tau_d: f64,
) -> Result<Complex64> {
    geom.validate()?;
    crate::error::ensure_finite("tau_c", tau_c)?;
    crate::error::ensure_finite("tau_d", tau_d)?;
    let offending: Vec<_> = input
        .blocks()
        .filter(|&(n, m, _)| n + m > 2)
        .map(|(n, m, _)| (n, m))
        .collect();
    if !offending.is_empty() {
        return Err(Error::UnsupportedInput { offending });
    }

    let r = geom.splitter.reflectance();
    let t = geom.splitter.transmittance();
    let g_ca = geom.g(Detector::C, Source::A, tau_c);
    let g_cb = geom.g(Detector::C, Source::B, tau_c);
    let g_da = geom.g(Detector::D, Source::A, tau_d);
    let g_db = geom.g(Detector::D, Source::B, tau_d);

    let both_a = input.coeff_a(2) * input.coeff_b(0) * (2.0 * r * t * g_ca * g_da);
    let one_each = input.coeff_a(1) * input.coeff_b(1) * (SQRT_2 * (r * r * g_cb * g_da - t * t * g_ca * g_db));
    let both_b = input.coeff_a(0) * input.coeff_b(2) * (2.0 * r * t * g_cb * g_db);
    Ok(both_a + one_each - both_b)
}
