//! Acceptance suite. Each test prints one PASS/FAIL line, then asserts.
//!
//! Run with `cargo test -p homsim --test acceptance -- --nocapture`.

use std::process::Command;
use std::time::{Duration, Instant};

use homsim::oracle::{oracle_no_interference_windowed, oracle_windowed};
use homsim::scenario::extrema::{has_dip_between_peaks, local_maxima, local_maxima_2d, local_minima};
use homsim::scenario::validation::{symmetry_rows, SYMMETRY_SEED};
use homsim::scenario::{figures, run_validation};
use homsim::{
    coincidence_amplitude_11, hom_probability, joint_probability, marginal_probability, no_interference_marginal,
    windowed_probability, ExperimentGeometry, FockInput, QuadratureSpec,
};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: u32, what: &str, passed: bool, detail: String) {
    println!("criterion {n} {}: {what} ({detail})", if passed { "PASS" } else { "FAIL" });
    assert!(passed, "criterion {n} failed: {what} ({detail})");
}

fn grid(start: f64, stop: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|k| start + (k as f64 * (stop - start)) / (steps - 1) as f64)
        .collect()
}

fn geom(t: [f64; 4], d: [f64; 4]) -> ExperimentGeometry {
    ExperimentGeometry::new(t, d).unwrap()
}

#[test]
fn criterion_1_zero_dip() {
    const TOL: f64 = 1e-15;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let t_in = rng.random_range(-5.0..5.0);
        let d_in = rng.random_range(0.1..4.0);
        let g = geom(
            [t_in, t_in, rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)],
            [d_in, d_in, rng.random_range(0.1..4.0), rng.random_range(0.1..4.0)],
        );
        worst = worst.max(hom_probability(&g).unwrap());
    }
    let elapsed = start.elapsed();
    report(
        1,
        "hom_probability vanishes for identical inputs",
        worst <= TOL && elapsed < Duration::from_secs(1),
        format!("max {worst:e} <= {TOL:e}, {elapsed:?} < 1s"),
    );
}

#[test]
fn criterion_2_figures_matrix() {
    const TOL: f64 = 1e-9;
    let start = Instant::now();
    let report_ = run_validation("figures", Some(TOL)).unwrap();
    let elapsed = start.elapsed();
    for row in report_.rows.iter().filter(|r| !r.passed()) {
        println!("  failing row: {} {:e} {:?}", row.label, row.discrepancy, row.error);
    }
    report(
        2,
        "closed forms agree with quadrature on the figures matrix",
        report_.rows.len() == 50 && report_.passed() && elapsed < Duration::from_secs(60),
        format!(
            "{} rows, {} failed, max {:e} <= {TOL:e}, {elapsed:?} < 60s",
            report_.rows.len(),
            report_.failures(),
            report_.max_discrepancy()
        ),
    );
}

#[test]
fn criterion_3_plateau() {
    const TOL: f64 = 1e-10;
    let g = geom([0.0, 20.0, 0.0, 0.0], [1.0; 4]);
    let p = hom_probability(&g).unwrap();
    let expected = 1.0 / (4.0 * std::f64::consts::PI);
    let diff = (p - expected).abs();
    report(3, "hom plateau at large separation", diff <= TOL, format!("|{p} - 1/4pi| = {diff:e} <= {TOL:e}"));
}

#[test]
fn criterion_4_joint_structure() {
    const MIDPOINT_TOL: f64 = 1e-12;
    let g = geom([2.0, 3.0, 2.0, 3.0], [1.0; 4]);
    let axis = grid(2.0, 8.0, 141);
    let cell = axis[1] - axis[0];
    let values: Vec<f64> = axis
        .iter()
        .flat_map(|&tc| axis.iter().map(move |&td| (tc, td)))
        .map(|(tc, td)| joint_probability(&g, tc, td).unwrap())
        .collect();
    let maxima: Vec<(f64, f64)> = local_maxima_2d(&values, 141, 141)
        .into_iter()
        .map(|(i, j)| (axis[i], axis[j]))
        .collect();
    let near = |target: (f64, f64)| {
        maxima
            .iter()
            .any(|&(tc, td)| (tc - target.0).abs() <= cell && (td - target.1).abs() <= cell)
    };
    let midpoint = joint_probability(&g, 4.5, 5.5).unwrap();
    println!("  maxima at {maxima:?}, cell {cell}");
    report(
        4,
        "joint density has two maxima near (4,6) and (5,5) and vanishes at (4.5,5.5)",
        maxima.len() == 2 && near((4.0, 6.0)) && near((5.0, 5.0)) && midpoint < MIDPOINT_TOL,
        format!(
            "{} maxima, near (4,6): {}, near (5,5): {}, midpoint {midpoint:e} < {MIDPOINT_TOL:e}",
            maxima.len(),
            near((4.0, 6.0)),
            near((5.0, 5.0))
        ),
    );
}

#[test]
fn criterion_5_path_information() {
    const TOL: f64 = 1e-9;
    let taus = grid(2.0, 9.0, 141);
    let profile = |d_d: f64| -> (ExperimentGeometry, Vec<f64>) {
        let g = geom([2.0, 5.0, 2.0, 2.0], [1.0, 1.0, 3.0, d_d]);
        let v = taus.iter().map(|&tc| marginal_probability(&g, tc).unwrap()).collect();
        (g, v)
    };
    let (_, wide) = profile(10.0);
    let dip = has_dip_between_peaks(&wide);

    let (narrow_g, narrow) = profile(0.1);
    let minima = local_minima(&narrow);
    let worst = minima
        .iter()
        .map(|&m| (narrow[m] - no_interference_marginal(&narrow_g, taus[m]).unwrap()).abs())
        .fold(0.0f64, f64::max);
    let profile_gap = taus
        .iter()
        .zip(&narrow)
        .map(|(&tc, &p)| (p - no_interference_marginal(&narrow_g, tc).unwrap()).abs())
        .fold(0.0f64, f64::max);
    println!(
        "  narrow filter: minima at {:?}, maxima at {:?}",
        minima.iter().map(|&m| taus[m]).collect::<Vec<_>>(),
        local_maxima(&narrow).iter().map(|&m| taus[m]).collect::<Vec<_>>()
    );
    report(
        5,
        "wide filter dips, narrow filter minimum matches independent Gaussians",
        dip && !minima.is_empty() && worst <= TOL,
        format!(
            "delta_d=10 dip: {dip}, delta_d=0.1 minima: {}, max |P - P_free| at minima {worst:e} <= {TOL:e}, over profile {profile_gap:e}",
            minima.len()
        ),
    );
}

#[test]
fn criterion_6_window_futility() {
    const TOL: f64 = 1e-9;
    let (center, t_w) = (5.5, 10.0);
    let taus = grid(2.0, 9.0, 141);
    let spec = QuadratureSpec::default();

    let narrow = geom([2.0, 5.0, 2.0, 2.0], [1.0, 1.0, 3.0, 0.1]);
    let closed: Vec<f64> = taus
        .iter()
        .map(|&tc| windowed_probability(&narrow, tc, center, t_w).unwrap())
        .collect();
    let oracle_diff = taus
        .iter()
        .zip(&closed)
        .map(|(&tc, &w)| (oracle_windowed(&narrow, tc, center, t_w, &spec).unwrap().value - w).abs())
        .fold(0.0f64, f64::max);
    let free: Vec<f64> = taus
        .iter()
        .map(|&tc| {
            oracle_no_interference_windowed(&narrow, tc, center, t_w, &spec)
                .unwrap()
                .value
        })
        .collect();
    // any valley must be the one the independent Gaussians already have
    let free_minima = local_minima(&free);
    let extra_dips: Vec<usize> = local_minima(&closed)
        .into_iter()
        .filter(|m| !free_minima.iter().any(|f| f.abs_diff(*m) <= 1))
        .collect();

    let wide = geom([2.0, 5.0, 2.0, 2.0], [1.0, 1.0, 3.0, 10.0]);
    let wide_values: Vec<f64> = taus
        .iter()
        .map(|&tc| windowed_probability(&wide, tc, center, t_w).unwrap())
        .collect();
    let dip = has_dip_between_peaks(&wide_values);

    report(
        6,
        "a wide window does not restore interference for a narrow filter",
        oracle_diff <= TOL && extra_dips.is_empty() && dip,
        format!(
            "delta_d=0.1 oracle max diff {oracle_diff:e} <= {TOL:e}, extra dips {}, delta_d=10 dip: {dip}",
            extra_dips.len()
        ),
    );
}

#[test]
fn criterion_7_symmetries() {
    const TOL: f64 = 1e-12;
    let start = Instant::now();
    let rows = symmetry_rows(SYMMETRY_SEED, 500);
    let elapsed = start.elapsed();
    let failed = rows.iter().filter(|r| !r.passed() || r.tolerance > TOL).count();
    let worst = rows.iter().map(|r| r.discrepancy).fold(0.0f64, f64::max);
    report(
        7,
        "symmetry suite over 500 random cases",
        failed == 0 && elapsed < Duration::from_secs(30),
        format!("{} rows, {failed} failed, max {worst:e} <= {TOL:e}, {elapsed:?} < 30s", rows.len()),
    );
}

#[test]
fn criterion_8_amplitude_matches_joint() {
    const TOL: f64 = 1e-14;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let input = FockInput::number_states(1, 1);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let t: [f64; 4] = std::array::from_fn(|_| rng.random_range(-2.0..2.0));
        let d: [f64; 4] = std::array::from_fn(|_| rng.random_range(0.3..3.0));
        let g = geom(t, d);
        let axis = grid(-4.0, 6.0, 21);
        for &tc in &axis {
            for &td in &axis {
                let amp = coincidence_amplitude_11(&input, &g, tc, td).unwrap();
                worst = worst.max((amp.norm_sqr() - joint_probability(&g, tc, td).unwrap()).abs());
            }
        }
    }
    report(8, "|amp_11|^2 equals the joint density", worst <= TOL, format!("max {worst:e} <= {TOL:e}"));
}

#[test]
fn criterion_9_determinism() {
    let run = |name: &str, jobs: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_homsim"))
            .args(["run", name, "--format", "csv", "--jobs", jobs])
            .output()
            .unwrap();
        assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        out.stdout
    };
    let differing: Vec<&str> = figures::FIGURES
        .iter()
        .filter(|fig| run(fig.name, "1") != run(fig.name, "5"))
        .map(|fig| fig.name)
        .collect();
    report(
        9,
        "bundled configs give byte-identical CSV across --jobs",
        differing.is_empty(),
        format!("{} configs, differing: {differing:?}", figures::FIGURES.len()),
    );
}
