//! Two-component spinor fields on a finite window of the integer lattice.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on the total norm of a state.
pub const NORM_TOL: f64 = 1e-12;

/// Physical scales attached to the dimensionless lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeUnits {
    /// Site spacing.
    pub d: f64,
    /// Time step.
    pub tau: f64,
    pub hbar: f64,
    /// Speed of light.
    pub c: f64,
}

impl Default for LatticeUnits {
    fn default() -> Self {
        LatticeUnits {
            d: 1.0,
            tau: 1.0,
            hbar: 1.0,
            c: 1.0,
        }
    }
}

impl LatticeUnits {
    pub fn new(d: f64, tau: f64, hbar: f64, c: f64) -> Result<Self> {
        for (name, value) in [("d", d), ("tau", tau), ("hbar", hbar), ("c", c)] {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "lattice units must be finite and strictly positive",
                });
            }
        }
        Ok(LatticeUnits { d, tau, hbar, c })
    }
}

/// Bloch-sphere angles of a pure coin state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAngles {
    gamma: f64,
    phi: f64,
}

impl BlochAngles {
    /// `gamma` in `[0, pi]`, `phi` in `[0, 2 pi)`.
    pub fn new(gamma: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&gamma) {
            return Err(Error::InvalidParameter {
                name: "gamma",
                value: gamma,
                reason: "polar angle must lie in [0, pi]",
            });
        }
        if !(0.0..2.0 * PI).contains(&phi) {
            return Err(Error::InvalidParameter {
                name: "phi",
                value: phi,
                reason: "azimuth must lie in [0, 2 pi)",
            });
        }
        Ok(BlochAngles { gamma, phi })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Coin amplitudes `(cos(gamma/2), e^{i phi} sin(gamma/2))`.
    pub fn amplitudes(&self) -> (Complex64, Complex64) {
        let (s, c) = (0.5 * self.gamma).sin_cos();
        (Complex64::new(c, 0.0), Complex64::from_polar(s, self.phi))
    }
}

/// Walker state: one `(right, left)` amplitude pair per site over the
/// dense window `[offset, offset + len)`. Sites outside the window carry
/// zero amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorField {
    offset: i64,
    amps: Vec<[Complex64; 2]>,
    step_count: u64,
}

impl SpinorField {
    /// Builds a field from explicit amplitudes. The total norm must be 1.
    pub fn new(offset: i64, amps: Vec<[Complex64; 2]>) -> Result<Self> {
        let field = SpinorField {
            offset,
            amps,
            step_count: 0,
        };
        field.check_finite()?;
        let norm = field.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(field)
    }

    /// Used by the evolution engines, which preserve the norm themselves.
    pub(crate) fn from_parts(offset: i64, amps: Vec<[Complex64; 2]>, step_count: u64) -> Self {
        SpinorField {
            offset,
            amps,
            step_count,
        }
    }

    /// State `(a, b)^T` localised at site `n0`.
    pub fn localized(n0: i64, a: Complex64, b: Complex64) -> Result<Self> {
        SpinorField::new(n0, vec![[a, b]])
    }

    /// Localised state with coin `(cos(gamma/2), e^{i phi} sin(gamma/2))`.
    pub fn from_bloch(n0: i64, angles: BlochAngles) -> Self {
        let (a, b) = angles.amplitudes();
        SpinorField::from_parts(n0, vec![[a, b]], 0)
    }

    /// Lattice index of the first stored site.
    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    /// Index one past the last stored site.
    pub fn end(&self) -> i64 {
        self.offset + self.amps.len() as i64
    }

    pub fn step_count(&self) -> u64 {
        self.step_count
    }

    pub fn amplitudes(&self) -> &[[Complex64; 2]] {
        &self.amps
    }

    /// Amplitudes at site `n`, zero outside the window.
    pub fn at(&self, n: i64) -> [Complex64; 2] {
        let idx = n - self.offset;
        if idx < 0 || idx >= self.amps.len() as i64 {
            [Complex64::new(0.0, 0.0); 2]
        } else {
            self.amps[idx as usize]
        }
    }

    /// `(site, amplitudes)` pairs over the window.
    pub fn sites(&self) -> impl Iterator<Item = (i64, [Complex64; 2])> + '_ {
        self.amps
            .iter()
            .enumerate()
            .map(move |(i, a)| (self.offset + i as i64, *a))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps
            .iter()
            .map(|[r, l]| r.norm_sqr() + l.norm_sqr())
            .sum()
    }

    pub(crate) fn check_finite(&self) -> Result<()> {
        match self.sites().find(|(_, [r, l])| {
            !(r.re.is_finite() && r.im.is_finite() && l.re.is_finite() && l.im.is_finite())
        }) {
            Some((site, _)) => Err(Error::NonFinite { site }),
            None => Ok(()),
        }
    }

    /// Drops leading and trailing sites with probability below `floor`.
    pub fn trimmed(&self, floor: f64) -> SpinorField {
        let keep = |a: &[Complex64; 2]| a[0].norm_sqr() + a[1].norm_sqr() >= floor;
        let first = self.amps.iter().position(keep);
        let last = self.amps.iter().rposition(keep);
        match (first, last) {
            (Some(first), Some(last)) => SpinorField {
                offset: self.offset + first as i64,
                amps: self.amps[first..=last].to_vec(),
                step_count: self.step_count,
            },
            _ => self.clone(),
        }
    }

    /// Per-site probabilities `|psi_R|^2 + |psi_L|^2`.
    pub fn probability(&self) -> Vec<(i64, f64)> {
        self.sites()
            .map(|(n, [r, l])| (n, r.norm_sqr() + l.norm_sqr()))
            .collect()
    }

    /// `sum_n n^r P(n)` in lattice units.
    pub fn position_moment(&self, r: u32) -> f64 {
        self.sites()
            .map(|(n, [a, b])| (n as f64).powi(r as i32) * (a.norm_sqr() + b.norm_sqr()))
            .sum()
    }

    pub fn mean_position(&self) -> f64 {
        self.position_moment(1)
    }

    pub fn std_deviation(&self) -> f64 {
        let mean = self.position_moment(1);
        (self.position_moment(2) - mean * mean).max(0.0).sqrt()
    }
}

/// See [`SpinorField::localized`].
pub fn make_localized(n0: i64, a: Complex64, b: Complex64) -> Result<SpinorField> {
    SpinorField::localized(n0, a, b)
}

/// See [`SpinorField::from_bloch`].
pub fn from_bloch(n0: i64, angles: BlochAngles) -> SpinorField {
    SpinorField::from_bloch(n0, angles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn localized_state_validation() {
        let f = make_localized(0, c(FRAC_1_SQRT_2, 0.0), c(0.0, FRAC_1_SQRT_2)).unwrap();
        assert_eq!(f.probability().len(), 1);
        assert!(matches!(
            make_localized(0, c(1.0, 0.0), c(0.1, 0.0)),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            make_localized(0, c(f64::NAN, 0.0), c(0.0, 0.0)),
            Err(Error::NonFinite { site: 0 })
        ));
    }

    #[test]
    fn translated_point_mass() {
        let f = make_localized(5, c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(f.probability(), vec![(5, 1.0)]);
        assert_eq!(f.step_count(), 0);
        assert_eq!(f.at(4), [c(0.0, 0.0); 2]);
    }

    #[test]
    fn bloch_points() {
        let eq12 = from_bloch(0, BlochAngles::new(PI / 2.0, PI / 2.0).unwrap());
        let [a, b] = eq12.at(0);
        assert!((a - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((b - c(0.0, FRAC_1_SQRT_2)).norm() < 1e-15);

        let pole = from_bloch(0, BlochAngles::new(0.0, 4.0).unwrap());
        assert_eq!(pole.at(0), [c(1.0, 0.0), c(0.0, 0.0)]);

        let equator = from_bloch(0, BlochAngles::new(PI / 2.0, 0.0).unwrap());
        let [a, b] = equator.at(0);
        assert!((a.re - FRAC_1_SQRT_2).abs() < 1e-15 && (b.re - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn bloch_ranges() {
        assert!(BlochAngles::new(-0.1, 0.0).is_err());
        assert!(BlochAngles::new(PI + 1e-9, 0.0).is_err());
        assert!(BlochAngles::new(1.0, 2.0 * PI).is_err());
        assert!(BlochAngles::new(PI, 3.0 * PI / 2.0).is_ok());
    }

    #[test]
    fn units_must_be_positive() {
        assert!(LatticeUnits::new(1.0, 1.0, 1.0, 1.0).is_ok());
        assert!(LatticeUnits::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(LatticeUnits::new(1.0, -1.0, 1.0, 1.0).is_err());
        assert_eq!(
            LatticeUnits::default(),
            LatticeUnits::new(1.0, 1.0, 1.0, 1.0).unwrap()
        );
    }

    #[test]
    fn moments_of_point_masses() {
        let origin = make_localized(0, c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(origin.position_moment(1), 0.0);
        assert_eq!(origin.std_deviation(), 0.0);
        let three = make_localized(3, c(0.0, 1.0), c(0.0, 0.0)).unwrap();
        assert_eq!(three.position_moment(2), 9.0);
        assert_eq!(three.std_deviation(), 0.0);
    }

    #[test]
    fn trimming_keeps_support() {
        let z = c(0.0, 0.0);
        let f =
            SpinorField::new(-2, vec![[z, z], [c(0.6, 0.0), z], [z, c(0.0, 0.8)], [z, z]]).unwrap();
        let t = f.trimmed(1e-300);
        assert_eq!(t.offset(), -1);
        assert_eq!(t.len(), 2);
        assert_eq!(t.probability(), f.probability()[1..3].to_vec());
    }
}
