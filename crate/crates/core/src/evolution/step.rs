//! Position-space stepping.

use num_complex::Complex64;

use super::{BandCoefficients, Dqca, Meyer, ModelParams, Qw};
use crate::lattice::SpinorField;

/// Applies one nearest-neighbour update. The window grows by one site on
/// each side so no amplitude is ever lost at the edges.
pub(crate) fn apply_band(field: &SpinorField, band: &BandCoefficients) -> SpinorField {
    let old = field.amplitudes();
    let len = old.len();
    let zero = [Complex64::new(0.0, 0.0); 2];
    let get = |i: isize| -> [Complex64; 2] {
        if i < 0 || i as usize >= len {
            zero
        } else {
            old[i as usize]
        }
    };
    // out[j] sits at site offset - 1 + j, i.e. old index j - 1.
    let amps = (0..len + 2)
        .map(|j| {
            let j = j as isize;
            let from_left = band.minus.apply(get(j - 2));
            let onsite = band.zero.apply(get(j - 1));
            let from_right = band.plus.apply(get(j));
            [
                from_left[0] + onsite[0] + from_right[0],
                from_left[1] + onsite[1] + from_right[1],
            ]
        })
        .collect();
    SpinorField::from_parts(field.offset() - 1, amps, field.step_count() + 1)
}

/// One step of the coined walk: coin, then conditional shift.
pub fn qw_step(field: &SpinorField, params: Qw) -> SpinorField {
    apply_band(field, &ModelParams::Qw(params).band())
}

/// One step of the DQCA:
/// `psi_R(n) <- hop psi_R(n-1) - i beta psi_L(n)`,
/// `psi_L(n) <- hop psi_L(n+1) - i beta psi_R(n)`.
pub fn dqca_step(field: &SpinorField, params: Dqca) -> SpinorField {
    apply_band(field, &ModelParams::Dqca(params).band())
}

/// One step of Meyer's automaton with the literal band matrices.
pub fn meyer_step(field: &SpinorField, params: Meyer) -> SpinorField {
    apply_band(field, &params.coefficients())
}

pub fn step(field: &SpinorField, params: &ModelParams) -> SpinorField {
    apply_band(field, &params.band())
}

/// `t` direct steps.
pub fn evolve(init: &SpinorField, params: &ModelParams, t: u64) -> SpinorField {
    let band = params.band();
    let mut field = init.clone();
    for _ in 0..t {
        field = apply_band(&field, &band);
    }
    field
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Mat2;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn r_init() -> SpinorField {
        SpinorField::localized(0, c(1.0, 0.0), c(0.0, 0.0)).unwrap()
    }

    fn eq12() -> SpinorField {
        SpinorField::localized(0, c(FRAC_1_SQRT_2, 0.0), c(0.0, FRAC_1_SQRT_2)).unwrap()
    }

    /// Hand transcription of the DQCA update, independent of the band
    /// matrices.
    fn dqca_by_hand(field: &SpinorField, beta: f64) -> Vec<(i64, [Complex64; 2])> {
        let hop = (1.0 - beta * beta).sqrt();
        let mib = c(0.0, -beta);
        (field.offset() - 1..field.end() + 1)
            .map(|n| {
                let r = hop * field.at(n - 1)[0] + mib * field.at(n)[1];
                let l = hop * field.at(n + 1)[1] + mib * field.at(n)[0];
                (n, [r, l])
            })
            .collect()
    }

    #[test]
    fn dqca_single_step_from_right_mover() {
        for beta in [0.1, FRAC_1_SQRT_2, -0.4, 0.95] {
            let f = dqca_step(&r_init(), Dqca::new(beta).unwrap());
            let p: std::collections::HashMap<i64, f64> = f.probability().into_iter().collect();
            assert!((p[&0] - beta * beta).abs() < 1e-15);
            assert!((p[&1] - (1.0 - beta * beta)).abs() < 1e-15);
            assert_eq!(p[&-1], 0.0);
            assert_eq!(f.step_count(), 1);
        }
    }

    #[test]
    fn dqca_matches_hand_transcription() {
        let beta = 0.37;
        let mut f = eq12();
        for _ in 0..6 {
            let expected = dqca_by_hand(&f, beta);
            f = dqca_step(&f, Dqca::new(beta).unwrap());
            for (n, amp) in expected {
                assert!((f.at(n)[0] - amp[0]).norm() < 1e-15);
                assert!((f.at(n)[1] - amp[1]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn dqca_at_full_mass_only_flips_the_coin() {
        let init = SpinorField::localized(2, c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let f = dqca_step(&init, Dqca::new(1.0).unwrap());
        assert_eq!(
            f.at(2),
            [c(0.0, -1.0) * c(0.0, 0.8), c(0.0, -1.0) * c(0.6, 0.0)]
        );
        let p: Vec<_> = f
            .probability()
            .into_iter()
            .filter(|(_, p)| *p > 0.0)
            .collect();
        assert_eq!(p.len(), 1);
        assert!((p[0].1 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn dqca_massless_is_a_pure_shift() {
        let f = dqca_step(&r_init(), Dqca::new(0.0).unwrap());
        assert_eq!(f.at(1), [c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(f.at(0), [c(0.0, 0.0); 2]);
    }

    #[test]
    fn qw_first_steps() {
        let f = qw_step(&r_init(), Qw::new(PI / 4.0).unwrap());
        assert!((f.at(1)[0].norm_sqr() - 0.5).abs() < 1e-15);
        assert!((f.at(-1)[1].norm_sqr() - 0.5).abs() < 1e-15);
        assert_eq!(f.at(0), [c(0.0, 0.0); 2]);

        let left = SpinorField::localized(0, c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let f = qw_step(&left, Qw::new(0.0).unwrap());
        assert_eq!(f.at(-1), [c(0.0, 0.0), c(1.0, 0.0)]);
        assert!((f.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn dqca_two_steps_brute_force() {
        // Two steps at beta = 1/sqrt(2) from (1, 0), worked out by hand:
        // step 1: R(1) = h, L(0) = -i b;  step 2: R(2) = h^2, R(0) = -b^2,
        // L(1) = -i b h, L(-1) = -i b h.
        let b = FRAC_1_SQRT_2;
        let h = b;
        let f = evolve(&r_init(), &ModelParams::dqca(b).unwrap(), 2);
        let expected = [
            (-1, b * b * h * h),
            (0, b.powi(4)),
            (1, b * b * h * h),
            (2, h.powi(4)),
        ];
        for (n, p) in expected {
            let [r, l] = f.at(n);
            assert!((r.norm_sqr() + l.norm_sqr() - p).abs() < 1e-15, "site {n}");
        }
        assert!((f.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn meyer_is_sigma_x_conjugate_of_dqca() {
        for beta in [0.2, FRAC_1_SQRT_2, -0.6] {
            let meyer = Meyer::new(f64::asin(beta), 0.0).unwrap().coefficients();
            let dqca = ModelParams::dqca(beta).unwrap().band();
            let conj = dqca.conjugated(&Mat2::sigma_x());
            assert!(meyer.max_abs_diff(&conj) < 1e-12);
        }
    }

    #[test]
    fn meyer_probability_is_reflected_dqca() {
        let beta: f64 = 0.45;
        let meyer = ModelParams::meyer(beta.asin(), 0.0).unwrap();
        let dqca = ModelParams::dqca(beta).unwrap();
        let init = SpinorField::localized(0, c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let mut fm = init.clone();
        let mut fd = init;
        for _ in 0..20 {
            fm = step(&fm, &meyer);
            fd = step(&fd, &dqca);
            for (n, p) in fd.probability() {
                let [r, l] = fm.at(-n);
                assert!((r.norm_sqr() + l.norm_sqr() - p).abs() < 1e-13);
            }
        }
    }
}
