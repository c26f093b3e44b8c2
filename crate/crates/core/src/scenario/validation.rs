//! Built-in validation matrices.
//!
//! * `figures`: closed forms against direct quadrature on 50 configurations
//!   drawn from the figure setups, 1e-9 absolute.
//! * `symmetries`: source swap, filter swap, global time translation and
//!   window monotonicity on seeded random geometries, 1e-12 absolute.
//! * `limits`: exact limiting values, 1e-10 absolute.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::ScenarioError;
use crate::coincidence::{
    hom_probability, joint_probability, marginal_probability, no_interference_marginal, windowed_probability,
};
use crate::error::Result;
use crate::fock::FockInput;
use crate::oracle::{oracle_coincidence_for_input, oracle_hom, oracle_marginal, oracle_windowed};
use crate::pulse::{validate_splitter, Detector, ExperimentGeometry, Source};
use crate::quadrature::{integrate_1d_with_breakpoints, QuadratureSpec};

pub const MATRICES: [&str; 3] = ["figures", "symmetries", "limits"];

pub const FIGURES_TOLERANCE: f64 = 1e-9;
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;
pub const LIMITS_TOLERANCE: f64 = 1e-10;

/// Seed of the `symmetries` matrix.
pub const SYMMETRY_SEED: u64 = 0x5eed_0001;

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationRow {
    pub label: String,
    pub discrepancy: f64,
    pub tolerance: f64,
    pub error: Option<String>,
}

impl ValidationRow {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.discrepancy <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub matrix: String,
    pub rows: Vec<ValidationRow>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(ValidationRow::passed)
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.passed()).count()
    }

    pub fn max_discrepancy(&self) -> f64 {
        self.rows.iter().map(|r| r.discrepancy).fold(0.0, f64::max)
    }

    /// One line per row, then a summary line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let status = if row.passed() { "PASS" } else { "FAIL" };
            let _ = write!(
                out,
                "{status} {}/{}  max|diff| = {:.3e}  tol = {:e}",
                self.matrix, row.label, row.discrepancy, row.tolerance
            );
            if let Some(e) = &row.error {
                let _ = write!(out, "  error: {e}");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{}: {} rows, {} failed, max|diff| = {:.3e}",
            self.matrix,
            self.rows.len(),
            self.failures(),
            self.max_discrepancy()
        );
        out
    }
}

type CheckFn = Box<dyn Fn() -> Result<f64> + Send + Sync>;

struct Check {
    label: String,
    tolerance: f64,
    discrepancy: CheckFn,
}

fn check(label: impl Into<String>, tolerance: f64, f: impl Fn() -> Result<f64> + Send + Sync + 'static) -> Check {
    Check {
        label: label.into(),
        tolerance,
        discrepancy: Box::new(f),
    }
}

fn evaluate(checks: Vec<Check>, tol: Option<f64>) -> Vec<ValidationRow> {
    checks
        .into_par_iter()
        .map(|c| {
            let tolerance = tol.unwrap_or(c.tolerance);
            match (c.discrepancy)() {
                Ok(d) => ValidationRow {
                    label: c.label,
                    discrepancy: if d.is_nan() { f64::INFINITY } else { d },
                    tolerance,
                    error: None,
                },
                Err(e) => ValidationRow {
                    label: c.label,
                    discrepancy: f64::INFINITY,
                    tolerance,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}

/// Runs a built-in matrix. `tol` replaces every row tolerance.
pub fn run_validation(name: &str, tol: Option<f64>) -> std::result::Result<ValidationReport, ScenarioError> {
    if let Some(t) = tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(ScenarioError::Config(format!("--tol must be finite and > 0, got {t}")));
        }
    }
    let checks = match name {
        "figures" => figure_checks(),
        "symmetries" => symmetry_checks(SYMMETRY_SEED, 10),
        "limits" => limit_checks(),
        _ => return Err(ScenarioError::UnknownMatrix { name: name.to_string() }),
    };
    Ok(ValidationReport {
        matrix: name.to_string(),
        rows: evaluate(checks, tol),
    })
}

/// The randomized symmetry checks on `cases` geometries from `seed`.
pub fn symmetry_rows(seed: u64, cases: usize) -> Vec<ValidationRow> {
    evaluate(symmetry_checks(seed, cases), None)
}

fn geom(delays: [f64; 4], widths: [f64; 4]) -> ExperimentGeometry {
    ExperimentGeometry::new(delays, widths).expect("matrix geometries are valid")
}

#[derive(Debug, Clone, Copy)]
enum Closed {
    Hom,
    Marginal { tau_c: f64 },
    Windowed { tau_c: f64, center: f64, t_w: f64 },
}

fn closed_vs_oracle(g: ExperimentGeometry, kind: Closed) -> Result<f64> {
    let spec = QuadratureSpec::default();
    let (closed, oracle) = match kind {
        Closed::Hom => (hom_probability(&g)?, oracle_hom(&g, &spec)?.value),
        Closed::Marginal { tau_c } => (marginal_probability(&g, tau_c)?, oracle_marginal(&g, tau_c, &spec)?.value),
        Closed::Windowed { tau_c, center, t_w } => (
            windowed_probability(&g, tau_c, center, t_w)?,
            oracle_windowed(&g, tau_c, center, t_w, &spec)?.value,
        ),
    };
    Ok((closed - oracle).abs())
}

fn figure_checks() -> Vec<Check> {
    let mut cases: Vec<(String, ExperimentGeometry, Closed)> = Vec::new();

    let g2 = geom([2.0, 3.0, 2.0, 3.0], [1.0; 4]);
    cases.push(("fig2 hom".into(), g2, Closed::Hom));
    for tau_c in [3.0, 4.5, 6.0] {
        cases.push((format!("fig2 marginal tau_c={tau_c}"), g2, Closed::Marginal { tau_c }));
    }
    for t_w in [0.5, 2.0] {
        let kind = Closed::Windowed {
            tau_c: 4.5,
            center: 5.0,
            t_w,
        };
        cases.push((format!("fig2 windowed tau_c=4.5 center=5 t_w={t_w}"), g2, kind));
    }

    for t_b in [-4.0, -1.5, 0.0, 0.5, 2.0, 4.0] {
        for d in [0.2, 3.0] {
            let g = geom([0.0, t_b, 1.0, 1.0], [1.0, 1.0, d, d]);
            cases.push((format!("fig4 hom t_b={t_b} delta={d}"), g, Closed::Hom));
        }
    }

    for (t_b, tau_c) in [(2.0, 4.0), (5.0, 4.0), (5.0, 5.5), (5.0, 7.0), (-1.0, 3.0), (7.0, 6.0)] {
        let g = geom([2.0, t_b, 2.0, 3.0], [1.0; 4]);
        cases.push((format!("fig5 marginal t_b={t_b} tau_c={tau_c}"), g, Closed::Marginal { tau_c }));
    }

    for (fig, delta_c) in [("fig6", 0.1), ("fig7", 3.0)] {
        for (delta_d, tau_c) in [(0.1, 4.0), (0.1, 5.5), (1.0, 7.0), (3.0, 5.5), (10.0, 4.0), (10.0, 5.5)] {
            let g = geom([2.0, 5.0, 2.0, 2.0], [1.0, 1.0, delta_c, delta_d]);
            let label = format!("{fig} marginal delta_d={delta_d} tau_c={tau_c}");
            cases.push((label, g, Closed::Marginal { tau_c }));
        }
    }

    for delta_d in [0.1, 10.0] {
        for tau_c in [2.0, 4.0, 5.5, 7.0] {
            let g = geom([2.0, 5.0, 2.0, 2.0], [1.0, 1.0, 3.0, delta_d]);
            let label = format!("fig8 marginal delta_d={delta_d} tau_c={tau_c}");
            cases.push((label, g, Closed::Marginal { tau_c }));
        }
    }

    for (delta_d, t_w, tau_c) in [
        (10.0, 10.0, 4.0),
        (10.0, 10.0, 5.5),
        (10.0, 1.0, 5.5),
        (0.1, 10.0, 4.0),
        (0.1, 10.0, 5.5),
        (0.1, 1.0, 7.0),
    ] {
        let g = geom([2.0, 5.0, 2.0, 2.0], [1.0, 1.0, 3.0, delta_d]);
        let kind = Closed::Windowed {
            tau_c,
            center: 5.5,
            t_w,
        };
        cases.push((format!("fig9 windowed delta_d={delta_d} t_w={t_w} tau_c={tau_c}"), g, kind));
    }

    cases
        .into_iter()
        .map(|(label, g, kind)| check(label, FIGURES_TOLERANCE, move || closed_vs_oracle(g, kind)))
        .collect()
}

#[derive(Debug, Clone, Copy)]
struct SymmetryCase {
    geom: ExperimentGeometry,
    tau_c: f64,
    tau_d: f64,
    center: f64,
    t_w: (f64, f64),
    shift: f64,
}

fn random_case(rng: &mut ChaCha8Rng, equal_inputs: bool) -> SymmetryCase {
    let mut t = [0.0; 4];
    for x in &mut t {
        *x = rng.random_range(-3.0..3.0);
    }
    let mut d = [0.0; 4];
    for x in &mut d {
        *x = rng.random_range(0.3..3.0);
    }
    if equal_inputs {
        d[1] = d[0];
    }
    let geom = geom(t, d);
    let (lo_a, hi_a) = (t[0].min(t[1]), t[0].max(t[1]));
    let tau_c = rng.random_range(lo_a - 2.0..hi_a + 2.0) + t[2];
    let tau_d = rng.random_range(lo_a - 2.0..hi_a + 2.0) + t[3];
    let center = rng.random_range(lo_a - 2.0..hi_a + 2.0) + t[3];
    let w1 = rng.random_range(0.0..4.0);
    let w2 = w1 + rng.random_range(0.0..4.0);
    let shift = rng.random_range(-5.0..5.0);
    SymmetryCase {
        geom,
        tau_c,
        tau_d,
        center,
        t_w: (w1, w2),
        shift,
    }
}

fn swap_sources(g: &ExperimentGeometry) -> ExperimentGeometry {
    ExperimentGeometry {
        t_a: g.t_b,
        t_b: g.t_a,
        delta_a: g.delta_b,
        delta_b: g.delta_a,
        ..*g
    }
}

fn swap_filters(g: &ExperimentGeometry) -> ExperimentGeometry {
    ExperimentGeometry {
        delta_c: g.delta_d,
        delta_d: g.delta_c,
        ..*g
    }
}

fn symmetry_checks(seed: u64, cases: usize) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::with_capacity(4 * cases);
    for i in 0..cases {
        let c = random_case(&mut rng, i % 2 == 0);
        checks.push(check(format!("case {i} source swap"), SYMMETRY_TOLERANCE, move || {
            let s = swap_sources(&c.geom);
            let hom = (hom_probability(&c.geom)? - hom_probability(&s)?).abs();
            let joint = (joint_probability(&c.geom, c.tau_c, c.tau_d)? - joint_probability(&s, c.tau_c, c.tau_d)?).abs();
            Ok(hom.max(joint))
        }));
        checks.push(check(format!("case {i} filter swap"), SYMMETRY_TOLERANCE, move || {
            Ok((hom_probability(&c.geom)? - hom_probability(&swap_filters(&c.geom))?).abs())
        }));
        checks.push(check(format!("case {i} time translation"), SYMMETRY_TOLERANCE, move || {
            let s = c.shift;
            let g = c.geom;
            let moved = ExperimentGeometry {
                t_a: g.t_a + s,
                t_b: g.t_b + s,
                ..g
            };
            let diffs = [
                joint_probability(&g, c.tau_c, c.tau_d)? - joint_probability(&moved, c.tau_c + s, c.tau_d + s)?,
                marginal_probability(&g, c.tau_c)? - marginal_probability(&moved, c.tau_c + s)?,
                windowed_probability(&g, c.tau_c, c.center, c.t_w.1)?
                    - windowed_probability(&moved, c.tau_c + s, c.center + s, c.t_w.1)?,
                hom_probability(&g)? - hom_probability(&moved)?,
            ];
            Ok(diffs.iter().map(|d| d.abs()).fold(0.0, f64::max))
        }));
        checks.push(check(format!("case {i} window monotonicity"), SYMMETRY_TOLERANCE, move || {
            let narrow = windowed_probability(&c.geom, c.tau_c, c.center, c.t_w.0)?;
            let wide = windowed_probability(&c.geom, c.tau_c, c.center, c.t_w.1)?;
            Ok((narrow - wide).max(0.0))
        }));
    }
    checks
}

fn limit_checks() -> Vec<Check> {
    let tol = LIMITS_TOLERANCE;
    let mut checks = Vec::new();

    for (i, (t, d)) in [
        ([1.0, 1.0, 0.0, 0.0], [1.0, 1.0, 1.0, 1.0]),
        ([-2.5, -2.5, 3.0, 0.7], [0.4, 0.4, 2.0, 0.1]),
        ([7.0, 7.0, -1.0, 4.0], [2.5, 2.5, 10.0, 0.3]),
    ]
    .into_iter()
    .enumerate()
    {
        checks.push(check(format!("zero dip {i}"), tol, move || hom_probability(&geom(t, d))));
    }

    checks.push(check("plateau unit widths", tol, || {
        Ok((hom_probability(&geom([0.0, 20.0, 1.0, 1.0], [1.0; 4]))? - 1.0 / (4.0 * PI)).abs())
    }));
    checks.push(check("plateau mixed widths", tol, || {
        let g = geom([0.0, 60.0, 0.5, -1.0], [0.7, 1.9, 0.3, 2.2]);
        let w = |det, src| g.width_sq(det, src);
        let expected = (1.0 / (w(Detector::C, Source::B) * w(Detector::D, Source::A)).sqrt()
            + 1.0 / (w(Detector::C, Source::A) * w(Detector::D, Source::B)).sqrt())
            / (4.0 * PI);
        Ok((hom_probability(&g)? - expected).abs())
    }));

    checks.push(check("closed window", tol, || {
        windowed_probability(&geom([2.0, 5.0, 2.0, 2.0], [1.0, 1.0, 3.0, 0.1]), 4.0, 5.5, 0.0)
    }));
    for (label, g) in [
        ("open window delta_d=10", geom([2.0, 5.0, 2.0, 2.0], [1.0, 1.0, 3.0, 10.0])),
        ("open window delta_d=0.1", geom([2.0, 5.0, 2.0, 2.0], [1.0, 1.0, 3.0, 0.1])),
        ("open window unequal inputs", geom([2.0, 5.0, 2.0, 2.0], [0.5, 1.5, 3.0, 1.0])),
    ] {
        checks.push(check(label, tol, move || {
            Ok((windowed_probability(&g, 5.5, 5.5, 500.0)? - marginal_probability(&g, 5.5)?).abs())
        }));
    }

    checks.push(check("distant pulses lose the cross term", tol, || {
        let g = geom([0.0, 40.0, 1.0, 1.0], [1.0, 1.3, 0.8, 2.0]);
        Ok((marginal_probability(&g, 1.0)? - no_interference_marginal(&g, 1.0)?).abs())
    }));

    for (label, g) in [
        ("marginal integrates to hom fig2", geom([2.0, 3.0, 2.0, 3.0], [1.0; 4])),
        ("marginal integrates to hom fig8", geom([2.0, 5.0, 2.0, 2.0], [1.0, 1.0, 3.0, 10.0])),
    ] {
        checks.push(check(label, tol, move || {
            let spec = QuadratureSpec::default();
            let centers = [g.delay(Detector::C, Source::A), g.delay(Detector::C, Source::B)];
            let w = g.width_sq(Detector::C, Source::A).max(g.width_sq(Detector::C, Source::B)).sqrt();
            let lo = centers[0].min(centers[1]) - spec.truncation_sigmas * w;
            let hi = centers[0].max(centers[1]) + spec.truncation_sigmas * w;
            let breaks: Vec<f64> = (-24..=24)
                .flat_map(|j| centers.map(|c| c + 0.5 * w * j as f64))
                .collect();
            let mut failure = None;
            let integral = integrate_1d_with_breakpoints(
                |tau_c| {
                    marginal_probability(&g, tau_c).unwrap_or_else(|e| {
                        failure.get_or_insert(e);
                        0.0
                    })
                },
                lo,
                hi,
                &breaks,
                &spec,
            )?;
            if let Some(e) = failure {
                return Err(e);
            }
            Ok((integral.value - hom_probability(&g)?).abs())
        }));
    }

    checks.push(check("joint vanishes at the fig2 midpoint", tol, || {
        joint_probability(&geom([2.0, 3.0, 2.0, 3.0], [1.0; 4]), 4.5, 5.5)
    }));

    checks.push(check("unbalanced splitter with identical pulses", tol, || {
        let (r, t) = (0.6, 0.8);
        let g = geom([1.0, 1.0, 0.0, 0.0], [1.0; 4]).with_splitter(validate_splitter(r, t)?);
        let res = oracle_coincidence_for_input(&FockInput::number_states(1, 1), &g, &QuadratureSpec::default())?;
        // S_c = S_d = 2
        let expected = (r * r - t * t).powi(2) / (2.0 * PI);
        Ok((res.value - expected).abs())
    }));

    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_matrix_lists_available() {
        let e = run_validation("nope", None).unwrap_err().to_string();
        for m in MATRICES {
            assert!(e.contains(m), "{e}");
        }
    }

    #[test]
    fn bad_tolerance() {
        assert!(run_validation("limits", Some(0.0)).is_err());
    }

    #[test]
    fn figures_matrix_has_fifty_rows() {
        assert_eq!(figure_checks().len(), 50);
    }

    #[test]
    fn symmetry_cases_are_seeded() {
        let a = symmetry_rows(7, 3);
        let b = symmetry_rows(7, 3);
        assert_eq!(a, b);
        assert_eq!(a.len(), 12);
    }
}
