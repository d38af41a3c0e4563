//! One-step unitaries of the coined quantum walk, the Dirac quantum
//! cellular automaton and Meyer's two-component automaton, together with
//! their momentum-space representation.
//!
//! All three models are nearest-neighbour maps
//! `psi'(n) = W_{-1} psi(n-1) + W_0 psi(n) + W_{+1} psi(n+1)`
//! and share one banded position-space engine ([`step`]). The momentum
//! picture ([`momentum`]) gives the dispersion relation, the DQCA
//! eigensystem and an exact FFT engine ([`spectral`]) used as a second,
//! independent route to the same states.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Mat2;

pub mod hamiltonian;
pub mod momentum;
pub mod spectral;
pub mod step;

pub use hamiltonian::{
    dirac_limit_check, effective_hamiltonian, extract_hamiltonian, HermitianMatrix2,
};
pub use momentum::{
    dispersion, eigensystem, group_velocity, model_group_velocity, momentum_unitary,
    MomentumEigensystem, UnitaryMatrix2,
};
pub use spectral::{spectral_evolve, spectral_grid_size};
pub use step::{dqca_step, evolve, meyer_step, qw_step, step};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Coined quantum walk with the real rotation coin
/// `C(theta) = [[cos, -sin], [sin, cos]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Qw {
    theta: f64,
}

impl Qw {
    /// `theta` in `[0, pi/2]`.
    pub fn new(theta: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2).contains(&theta) {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: theta,
                reason: "coin angle must lie in [0, pi/2]",
            });
        }
        Ok(Qw { theta })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn coin(&self) -> Mat2 {
        let (s, c) = self.theta.sin_cos();
        Mat2::from_real(c, -s, s, c)
    }
}

/// Dirac quantum cellular automaton,
/// `U = sqrt(1 - beta^2) (T_- |L><L| + T_+ |R><R|) - i beta sigma_x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dqca {
    beta: f64,
}

impl Dqca {
    /// `beta` in `[-1, 1]`.
    pub fn new(beta: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&beta) {
            return Err(Error::InvalidParameter {
                name: "beta",
                value: beta,
                reason: "mass parameter must satisfy |beta| <= 1",
            });
        }
        Ok(Dqca { beta })
    }

    /// Parameters for which the long-time analysis holds, `0 < |beta| < 1`.
    pub fn new_massive(beta: f64) -> Result<Self> {
        if !(beta.abs() > 0.0 && beta.abs() < 1.0) {
            return Err(Error::InvalidParameter {
                name: "beta",
                value: beta,
                reason: "asymptotic analysis requires 0 < |beta| < 1",
            });
        }
        Ok(Dqca { beta })
    }

    /// DQCA with the same dispersion relation as the walk, `cos theta = sqrt(1 - beta^2)`.
    pub fn matching(qw: Qw) -> Self {
        Dqca {
            beta: qw.theta().sin(),
        }
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Shift amplitude `sqrt(1 - beta^2)`, also the maximal group speed.
    pub fn hop(&self) -> f64 {
        (1.0 - self.beta * self.beta).max(0.0).sqrt()
    }
}

/// Meyer's two-component automaton with angles `(rho, theta)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Meyer {
    rho: f64,
    theta: f64,
}

impl Meyer {
    pub fn new(rho: f64, theta: f64) -> Result<Self> {
        for (name, value) in [("rho", rho), ("theta", theta)] {
            if !value.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "angle must be finite",
                });
            }
        }
        Ok(Meyer { rho, theta })
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// The three update matrices, transcribed literally.
    pub fn coefficients(&self) -> MeyerCoefficients {
        let (sr, cr) = self.rho.sin_cos();
        let (st, ct) = self.theta.sin_cos();
        let z = Complex64::new(0.0, 0.0);
        BandCoefficients {
            minus: Mat2::new(z, I * st, z, ct.into()).scale(cr.into()),
            zero: Mat2::new(st.into(), -I * ct, -I * ct, st.into()).scale(sr.into()),
            plus: Mat2::new(ct.into(), z, I * st, z).scale(cr.into()),
        }
    }
}

/// Coefficients of a nearest-neighbour update
/// `psi'(n) = minus psi(n-1) + zero psi(n) + plus psi(n+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandCoefficients {
    pub minus: Mat2,
    pub zero: Mat2,
    pub plus: Mat2,
}

/// Meyer's `(w_{-1}, w_0, w_{+1})`.
pub type MeyerCoefficients = BandCoefficients;

impl BandCoefficients {
    /// `minus e^{-ip} + zero + plus e^{ip}`.
    pub fn symbol(&self, p: f64) -> Mat2 {
        self.minus.scale(Complex64::from_polar(1.0, -p))
            + self.zero
            + self.plus.scale(Complex64::from_polar(1.0, p))
    }

    /// Conjugates every coefficient by `v`: `v W v^dagger`.
    pub fn conjugated(&self, v: &Mat2) -> BandCoefficients {
        let vd = v.adjoint();
        BandCoefficients {
            minus: *v * self.minus * vd,
            zero: *v * self.zero * vd,
            plus: *v * self.plus * vd,
        }
    }

    pub fn max_abs_diff(&self, other: &BandCoefficients) -> f64 {
        self.minus
            .max_abs_diff(&other.minus)
            .max(self.zero.max_abs_diff(&other.zero))
            .max(self.plus.max_abs_diff(&other.plus))
    }
}

/// Step operator parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelParams {
    Qw(Qw),
    Dqca(Dqca),
    Meyer(Meyer),
}

impl From<Qw> for ModelParams {
    fn from(p: Qw) -> Self {
        ModelParams::Qw(p)
    }
}

impl From<Dqca> for ModelParams {
    fn from(p: Dqca) -> Self {
        ModelParams::Dqca(p)
    }
}

impl From<Meyer> for ModelParams {
    fn from(p: Meyer) -> Self {
        ModelParams::Meyer(p)
    }
}

impl ModelParams {
    pub fn qw(theta: f64) -> Result<Self> {
        Qw::new(theta).map(Into::into)
    }

    pub fn dqca(beta: f64) -> Result<Self> {
        Dqca::new(beta).map(Into::into)
    }

    pub fn meyer(rho: f64, theta: f64) -> Result<Self> {
        Meyer::new(rho, theta).map(Into::into)
    }

    /// Position-space update coefficients of the one-step unitary.
    pub fn band(&self) -> BandCoefficients {
        match self {
            ModelParams::Qw(qw) => {
                // Shift after coin: R moves right, L moves left.
                let coin = qw.coin();
                let project_r = Mat2::from_real(1.0, 0.0, 0.0, 0.0);
                let project_l = Mat2::from_real(0.0, 0.0, 0.0, 1.0);
                BandCoefficients {
                    minus: project_r * coin,
                    zero: Mat2::zero(),
                    plus: project_l * coin,
                }
            }
            ModelParams::Dqca(dqca) => {
                let hop = dqca.hop();
                BandCoefficients {
                    minus: Mat2::from_real(hop, 0.0, 0.0, 0.0),
                    zero: Mat2::sigma_x().scale(-I * dqca.beta()),
                    plus: Mat2::from_real(0.0, 0.0, 0.0, hop),
                }
            }
            ModelParams::Meyer(meyer) => meyer.coefficients(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn parameter_ranges() {
        assert!(Qw::new(-0.1).is_err());
        assert!(Qw::new(PI / 2.0 + 1e-9).is_err());
        assert!(Qw::new(PI / 4.0).is_ok());
        assert!(Dqca::new(1.0).is_ok());
        assert!(Dqca::new(-1.0).is_ok());
        assert!(Dqca::new(1.0001).is_err());
        assert!(Dqca::new_massive(1.0).is_err());
        assert!(Dqca::new_massive(0.0).is_err());
        assert!(Dqca::new_massive(-0.5).is_ok());
        assert!(Meyer::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn every_band_is_unitary_in_momentum_space() {
        let models = [
            ModelParams::qw(0.3).unwrap(),
            ModelParams::dqca(-0.8).unwrap(),
            ModelParams::meyer(0.7, 0.0).unwrap(),
            ModelParams::meyer(0.7, 1.2).unwrap(),
            ModelParams::meyer(-2.0, 3.0).unwrap(),
        ];
        for model in models {
            let band = model.band();
            for k in 0..64 {
                let p = -PI + 2.0 * PI * k as f64 / 64.0;
                assert!(
                    band.symbol(p).unitarity_defect() < 1e-10,
                    "{model:?} at p={p}"
                );
            }
        }
    }

    #[test]
    fn meyer_without_rho_has_no_onsite_term() {
        let w = Meyer::new(0.0, 0.0).unwrap().coefficients();
        assert_eq!(w.zero.max_abs(), 0.0);
        assert_eq!(w.plus, Mat2::from_real(1.0, 0.0, 0.0, 0.0));
        assert_eq!(w.minus, Mat2::from_real(0.0, 0.0, 0.0, 1.0));
    }

    #[test]
    fn matching_dqca_shares_the_shift_amplitude() {
        let qw = Qw::new(PI / 4.0).unwrap();
        let dqca = Dqca::matching(qw);
        assert!((dqca.hop() - qw.theta().cos()).abs() < 1e-15);
    }
}
