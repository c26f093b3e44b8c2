use homsim::fock::project;
use homsim::{coincidence_amplitude_11, expand_output, joint_probability, ExperimentGeometry, FockInput};
use num_complex::Complex64;
use proptest::prelude::*;

fn geometry() -> impl Strategy<Value = ExperimentGeometry> {
    (
        prop::array::uniform4(-3.0..3.0f64),
        prop::array::uniform4(0.1..3.0f64),
    )
        .prop_map(|(t, d)| ExperimentGeometry::new(t, d).unwrap())
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn term_count_and_powers(n in 0usize..6, m in 0usize..6, g in geometry()) {
        let terms = expand_output(&FockInput::number_states(n, m), &g).unwrap();
        prop_assert_eq!(terms.len(), (n + 1) * (m + 1));
        for t in &terms {
            prop_assert_eq!(t.power_c() + t.power_d(), n + m);
            prop_assert_eq!(t.binomial, binomial(n, t.p) * binomial(m, t.q));
            prop_assert_eq!(t.sign(), if (n - t.p) % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn amplitude_squared_is_joint_density(g in geometry(), tau in prop::array::uniform2(-6.0..9.0f64)) {
        let amp = coincidence_amplitude_11(&FockInput::number_states(1, 1), &g, tau[0], tau[1]).unwrap();
        let joint = joint_probability(&g, tau[0], tau[1]).unwrap();
        prop_assert!((amp.norm_sqr() - joint).abs() <= 1e-12);
    }

    #[test]
    fn port_swap_negates(g in geometry(), tau in prop::array::uniform2(-6.0..9.0f64)) {
        let swapped = ExperimentGeometry {
            t_a: g.t_b,
            t_b: g.t_a,
            delta_a: g.delta_b,
            delta_b: g.delta_a,
            ..g
        };
        let input = FockInput::number_states(1, 1);
        let a = coincidence_amplitude_11(&input, &g, tau[0], tau[1]).unwrap();
        let b = coincidence_amplitude_11(&input, &swapped, tau[0], tau[1]).unwrap();
        prop_assert!((a + b).norm() <= 1e-15);
        prop_assert!((a.norm_sqr() - b.norm_sqr()).abs() <= 1e-15);
    }

    #[test]
    fn amplitude_is_minus_projection(
        g in geometry(),
        tau in prop::array::uniform2(-6.0..9.0f64),
        theta in 0.0..std::f64::consts::FRAC_PI_2,
        phi in 0.0..std::f64::consts::FRAC_PI_2,
    ) {
        // superpositions with n + m <= 2 in every block
        let a = vec![Complex64::new(theta.cos(), 0.0), Complex64::new(0.0, theta.sin())];
        let b = vec![Complex64::new(phi.cos(), 0.0), Complex64::new(phi.sin(), 0.0)];
        let input = FockInput::new(a, b, 2).unwrap();
        let terms = expand_output(&input, &g).unwrap();
        let projected = project(&terms, 1, 1, &g, tau[0], tau[1]);
        let amp = coincidence_amplitude_11(&input, &g, tau[0], tau[1]).unwrap();
        prop_assert!((amp + projected).norm() <= 1e-15);
    }
}

#[test]
fn consistency_lattice() {
    let g = ExperimentGeometry::new([2.0, 5.0, 2.0, 2.0], [1.0, 1.0, 3.0, 0.1]).unwrap();
    let input = FockInput::number_states(1, 1);
    for i in 0..21 {
        for j in 0..21 {
            let (tc, td) = (1.0 + 0.4 * i as f64, 1.0 + 0.4 * j as f64);
            let amp = coincidence_amplitude_11(&input, &g, tc, td).unwrap();
            assert!((amp.norm_sqr() - joint_probability(&g, tc, td).unwrap()).abs() <= 1e-12);
        }
    }
}
