use std::f64::consts::{FRAC_1_SQRT_2, PI};

use dqca_core::entanglement::{
    asymptotic_rho, asymptotic_rho_bloch, entropy, reduced_density, DensityMatrix2,
};
use dqca_core::evolution::{evolve, spectral_evolve, spectral_grid_size, step};
use dqca_core::{BlochAngles, ModelParams, SpinorField};
use num_complex::Complex64;
use proptest::prelude::*;

fn model() -> impl Strategy<Value = ModelParams> {
    prop_oneof![
        (0.0..=std::f64::consts::FRAC_PI_2).prop_map(|t| ModelParams::qw(t).unwrap()),
        (-1.0f64..=1.0).prop_map(|b| ModelParams::dqca(b).unwrap()),
        (-PI..PI, -PI..PI).prop_map(|(r, t)| ModelParams::meyer(r, t).unwrap()),
    ]
}

fn angles() -> impl Strategy<Value = BlochAngles> {
    (0.0..=PI, 0.0..2.0 * PI).prop_map(|(g, f)| BlochAngles::new(g, f).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_step_conserves_probability(params in model(), a in angles(), n0 in -20i64..20, t in 1u64..80) {
        let mut field = SpinorField::from_bloch(n0, a);
        for _ in 0..t {
            field = step(&field, &params);
            prop_assert!((field.norm_sqr() - 1.0).abs() < 1e-12);
        }
        let total: f64 = field.probability().iter().map(|&(_, p)| p).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn amplitude_stays_in_the_light_cone(params in model(), a in angles(), n0 in -50i64..50, t in 0u64..60) {
        let field = evolve(&SpinorField::from_bloch(n0, a), &params, t);
        for (n, p) in field.probability() {
            if p > 0.0 {
                prop_assert!((n0 - t as i64..=n0 + t as i64).contains(&n));
            }
        }
    }

    #[test]
    fn bloch_states_are_normalised(a in angles()) {
        let (x, y) = a.amplitudes();
        prop_assert!((x.norm_sqr() + y.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn variance_is_non_negative(params in model(), a in angles(), n0 in -1000i64..1000, t in 0u64..50) {
        let field = evolve(&SpinorField::from_bloch(n0, a), &params, t);
        let m1 = field.position_moment(1);
        prop_assert!(field.position_moment(2) - m1 * m1 >= -1e-10);
        prop_assert!(field.std_deviation() >= 0.0);
    }

    #[test]
    fn spectral_engine_matches_stepping(params in model(), a in angles(), t in 0u64..120) {
        let init = SpinorField::from_bloch(3, a);
        let direct = evolve(&init, &params, t);
        let spectral = spectral_evolve(&init, &params, t, spectral_grid_size(&init, t)).unwrap();
        for (n, [r, l]) in direct.sites() {
            let [sr, sl] = spectral.at(n);
            prop_assert!((r - sr).norm() < 1e-10 && (l - sl).norm() < 1e-10);
        }
    }

    #[test]
    fn reduced_density_is_always_valid(params in model(), a in angles(), t in 0u64..100) {
        let field = evolve(&SpinorField::from_bloch(0, a), &params, t);
        let rho = reduced_density(&field);
        prop_assert!(DensityMatrix2::new(*rho.matrix()).is_ok());
        let s = entropy(&rho);
        prop_assert!((0.0..=1.0).contains(&s));
    }

    #[test]
    fn bloch_and_amplitude_forms_agree(beta in -1.0f64..=1.0, a in angles()) {
        let (x, y) = a.amplitudes();
        let direct = asymptotic_rho(beta, x, y).unwrap();
        let bloch = asymptotic_rho_bloch(beta, a).unwrap();
        prop_assert!(direct.max_abs_diff(&bloch) < 1e-14);
    }
}

#[test]
fn maximal_asymptotic_entanglement_only_on_the_stated_locus() {
    for beta in [0.2, 0.5, FRAC_1_SQRT_2, 0.9] {
        for i in 0..20 {
            for j in 0..20 {
                let gamma = PI * i as f64 / 19.0;
                let phi = 2.0 * PI * j as f64 / 20.0;
                let s = entropy(
                    &asymptotic_rho_bloch(beta, BlochAngles::new(gamma, phi).unwrap()).unwrap(),
                );
                assert!((0.0..=1.0).contains(&s));
                // Maximal iff the diagonal is balanced and the off-diagonal vanishes.
                let balanced =
                    (gamma.cos()).abs() < 1e-12 && (phi.cos() * gamma.sin()).abs() < 1e-12;
                assert_eq!(
                    s > 1.0 - 1e-12,
                    balanced,
                    "beta={beta} gamma={gamma} phi={phi}"
                );
            }
        }
    }
    let rho = asymptotic_rho_bloch(0.3, BlochAngles::new(PI / 2.0, 1.5 * PI).unwrap()).unwrap();
    assert!((entropy(&rho) - 1.0).abs() < 1e-12);
}

#[test]
fn mass_outside_the_airy_buffer_is_small() {
    let beta = FRAC_1_SQRT_2;
    let t = 500u64;
    let init = SpinorField::localized(
        0,
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(0.0, FRAC_1_SQRT_2),
    )
    .unwrap();
    let field = evolve(&init, &ModelParams::dqca(beta).unwrap(), t);
    let edge = t as f64 * (1.0 - beta * beta).sqrt() + 5.0 * (t as f64).cbrt();
    let outside: f64 = field
        .probability()
        .iter()
        .filter(|&&(n, _)| (n as f64).abs() > edge)
        .map(|&(_, p)| p)
        .sum();
    assert!(outside <= 0.01, "outside mass {outside}");
}
