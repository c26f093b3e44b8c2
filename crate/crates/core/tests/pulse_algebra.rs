use std::f64::consts::PI;

use homsim::quadrature::{integrate_1d_with_breakpoints, QuadratureSpec};
use homsim::{convolve_filter_pulse, envelope_eval, integrate_1d, validate_splitter, Error, GaussianEnvelope};
use proptest::prelude::*;

fn ladder(center: f64, width: f64) -> Vec<f64> {
    (-24..=24).map(|j| center + 0.5 * width * j as f64).collect()
}

/// `integral env_i(t - s) env_j(s) ds` with `env_j` centered on `delay`.
fn convolution_by_quadrature(filter_width: f64, pulse_width: f64, delay: f64, t: f64) -> f64 {
    let filter = GaussianEnvelope::new(0.0, filter_width).unwrap();
    let pulse = GaussianEnvelope::new(delay, pulse_width).unwrap();
    let w = filter_width.max(pulse_width);
    let (lo, hi) = (delay.min(t) - 14.0 * w, delay.max(t) + 14.0 * w);
    let mut breaks = ladder(delay, pulse_width);
    breaks.extend(ladder(t, filter_width));
    integrate_1d_with_breakpoints(
        |s| filter.eval(t - s).unwrap() * pulse.eval(s).unwrap(),
        lo,
        hi,
        &breaks,
        &QuadratureSpec::default().with_tolerance(1e-13),
    )
    .unwrap()
    .value
}

#[test]
fn envelope_integrates_to_one() {
    let env = GaussianEnvelope::new(0.0, 1.0).unwrap();
    let res = integrate_1d(|t| env.eval(t).unwrap(), -12.0, 12.0, &QuadratureSpec::default()).unwrap();
    assert!((res.value - 1.0).abs() < 1e-10);
}

#[test]
fn wide_filter_convolution_matches_quadrature() {
    for k in 0..20 {
        let t = -6.0 + 0.75 * k as f64;
        let delay = 1.5;
        let closed = convolve_filter_pulse(3.0, 1.0, delay, t).unwrap();
        let numeric = convolution_by_quadrature(3.0, 1.0, delay, t);
        assert!((closed - numeric).abs() < 1e-10, "t = {t}: {closed} vs {numeric}");
    }
}

#[test]
fn convolution_examples() {
    assert!((convolve_filter_pulse(1.0, 1.0, 4.0, 4.0).unwrap() - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-15);
    assert!((convolve_filter_pulse(0.1, 1.0, 0.0, 0.0).unwrap() - 1.0 / (PI * 1.01).sqrt()).abs() < 1e-15);
    assert!(matches!(convolve_filter_pulse(0.0, 1.0, 0.0, 0.0), Err(Error::Domain(_))));
    assert!(matches!(convolve_filter_pulse(1.0, -2.0, 0.0, 0.0), Err(Error::Domain(_))));
}

#[test]
fn splitter_examples() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    assert!(validate_splitter(h, h).unwrap().is_balanced());
    assert!(validate_splitter(0.0, 1.0).is_ok());
    match validate_splitter(0.5, 0.5) {
        Err(Error::Unitarity { residual, .. }) => assert!((residual.abs() - 0.5).abs() < 1e-15),
        other => panic!("expected unitarity error, got {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn envelope_is_symmetric(center in -10.0..10.0f64, width in 0.05..5.0f64, x in 0.0..20.0f64) {
        let env = GaussianEnvelope::new(center, width).unwrap();
        let (right, left) = (envelope_eval(&env, center + x).unwrap(), envelope_eval(&env, center - x).unwrap());
        // center +- x round differently; allow for that only
        prop_assert!((right - left).abs() <= 1e-12 * right.max(left));
        prop_assert!(envelope_eval(&env, center).unwrap() >= envelope_eval(&env, center + x).unwrap());
    }

    #[test]
    fn envelope_normalization(center in -10.0..10.0f64, width in 0.05..5.0f64) {
        let env = GaussianEnvelope::new(center, width).unwrap();
        let res = integrate_1d_with_breakpoints(
            |t| env.eval(t).unwrap(),
            center - 12.0 * width,
            center + 12.0 * width,
            &ladder(center, width),
            &QuadratureSpec::default(),
        )
        .unwrap();
        prop_assert!((res.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn width_exchange(a in 0.05..5.0f64, b in 0.05..5.0f64, delay in -5.0..5.0f64, t in -10.0..10.0f64) {
        prop_assert_eq!(
            convolve_filter_pulse(a, b, delay, t).unwrap(),
            convolve_filter_pulse(b, a, delay, t).unwrap()
        );
    }

    #[test]
    fn convolution_matches_quadrature(
        a in 0.1..4.0f64,
        b in 0.1..4.0f64,
        delay in -5.0..5.0f64,
        t in -8.0..8.0f64,
    ) {
        let closed = convolve_filter_pulse(a, b, delay, t).unwrap();
        prop_assert!((closed - convolution_by_quadrature(a, b, delay, t)).abs() < 1e-10);
    }
}

#[test]
fn convolution_semigroup() {
    // (env_i * env_j) * env_k by nested quadrature against the composed width
    let (di, dj, dk) = (0.7, 1.3, 2.1);
    let inner = |s: f64| convolution_by_quadrature(di, dj, 0.5, s);
    let outer_kernel = GaussianEnvelope::new(0.0, dk).unwrap();
    let composed = GaussianEnvelope::new(0.0, di).unwrap().convolve(&GaussianEnvelope::new(0.5, dj).unwrap()).convolve(&outer_kernel);
    assert!((composed.width() - (di * di + dj * dj + dk * dk).sqrt()).abs() < 1e-15);
    let spec = QuadratureSpec::default().with_tolerance(1e-11);
    for t in [-3.0, 0.5, 2.0, 6.0] {
        let w = composed.width();
        let mut breaks = ladder(0.5, w);
        breaks.extend(ladder(t, dk));
        let numeric = integrate_1d_with_breakpoints(
            |s| outer_kernel.eval(t - s).unwrap() * inner(s),
            0.5f64.min(t) - 14.0 * w,
            0.5f64.max(t) + 14.0 * w,
            &breaks,
            &spec,
        )
        .unwrap()
        .value;
        assert!((composed.eval(t).unwrap() - numeric).abs() < 1e-8, "t = {t}");
    }
}
