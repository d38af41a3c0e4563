//! Quasi-momentum representation: `U(p)`, the dispersion relation and the
//! DQCA eigensystem.
//!
//! With `psi(p) = sum_n psi(n) e^{-ipn}`, a right shift becomes
//! multiplication by `e^{-ip}`, so each one-step unitary is a 2x2 matrix
//! `U(p)` at every `p`. Its eigenvalues are `e^{-i lambda(p)}` and
//! `e^{+i lambda(p)}`; we always take the principal branch
//! `lambda in [0, pi]`.

use num_complex::Complex64;

use super::{Dqca, ModelParams};
use crate::error::{Error, Result};
use crate::matrix::Mat2;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `sin lambda` at or below this is treated as a singular point.
pub(crate) const SINGULAR_SIN: f64 = 4.0 * f64::EPSILON;

/// A 2x2 unitary matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitaryMatrix2(Mat2);

impl UnitaryMatrix2 {
    /// Accepts `m` when `m^dagger m = I` within `1e-12`.
    pub fn new(m: Mat2) -> Result<Self> {
        let defect = m.unitarity_defect();
        if defect > 1e-12 {
            return Err(Error::InvalidParameter {
                name: "unitarity defect",
                value: defect,
                reason: "matrix is not unitary",
            });
        }
        Ok(UnitaryMatrix2(m))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn power(&self, t: u64) -> Mat2 {
        self.0.unitary_power(t)
    }
}

/// Spectral data of `U_DA(p)` at one quasi-momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumEigensystem {
    pub p: f64,
    /// Eigenphase, `U phi_s = e^{-i s lambda} phi_s`.
    pub lambda: f64,
    /// Group velocity `d lambda / dp`.
    pub v: f64,
    pub phi_plus: [Complex64; 2],
    pub phi_minus: [Complex64; 2],
}

impl MomentumEigensystem {
    /// `sum_s e^{-i s lambda t} |phi_s><phi_s|`.
    pub fn power(&self, t: u64) -> Mat2 {
        let phase = self.lambda * t as f64;
        Mat2::outer(self.phi_plus).scale(Complex64::from_polar(1.0, -phase))
            + Mat2::outer(self.phi_minus).scale(Complex64::from_polar(1.0, phase))
    }
}

/// Wraps `p` into `[-pi, pi)`.
pub fn wrap_momentum(p: f64) -> f64 {
    use std::f64::consts::PI;
    let w = (p + PI).rem_euclid(2.0 * PI) - PI;
    if w >= PI {
        w - 2.0 * PI
    } else {
        w
    }
}

/// `U(p)` for the given model.
pub fn momentum_unitary(p: f64, params: &ModelParams) -> UnitaryMatrix2 {
    let left = Complex64::from_polar(1.0, -p);
    let right = Complex64::from_polar(1.0, p);
    let m = match params {
        ModelParams::Qw(qw) => {
            let (s, c) = qw.theta().sin_cos();
            Mat2::new(left * c, -left * s, right * s, right * c)
        }
        ModelParams::Dqca(dqca) => {
            let hop = dqca.hop();
            let off = -I * dqca.beta();
            Mat2::new(left * hop, off, off, right * hop)
        }
        ModelParams::Meyer(meyer) => meyer.coefficients().symbol(p),
    };
    UnitaryMatrix2(m)
}

/// `(cos lambda, sin lambda)` of the DQCA at `p`.
///
/// `sin lambda` is taken as `sqrt(beta^2 + (1 - beta^2) sin^2 p)` rather
/// than from `1 - cos^2`, which keeps it accurate near `lambda = 0`.
fn dqca_cos_sin(p: f64, dqca: Dqca) -> (f64, f64) {
    let hop = dqca.hop();
    let (sp, cp) = p.sin_cos();
    let beta = dqca.beta();
    (hop * cp, (beta * beta + hop * hop * sp * sp).sqrt())
}

/// `(hop, cos lambda, sin lambda)` for the models whose symbol has the form
/// `cos lambda = hop cos p`: the walk (`hop = cos theta`), the DQCA and
/// Meyer's automaton at `theta = 0` (`hop = cos rho`).
fn hop_cos_sin(p: f64, params: &ModelParams) -> Result<(f64, f64, f64)> {
    let (hop, mass) = match params {
        ModelParams::Qw(qw) => (qw.theta().cos(), qw.theta().sin()),
        ModelParams::Dqca(dqca) => (dqca.hop(), dqca.beta()),
        ModelParams::Meyer(meyer) => {
            if meyer.theta() != 0.0 {
                return Err(Error::Unsupported(
                    "dispersion of Meyer's automaton is only defined for theta = 0",
                ));
            }
            (meyer.rho().cos(), meyer.rho().sin())
        }
    };
    let (sp, cp) = p.sin_cos();
    Ok((hop, hop * cp, (mass * mass + hop * hop * sp * sp).sqrt()))
}

/// Dispersion relation `lambda(p)` in `[0, pi]`.
///
/// QW: `cos lambda = cos theta cos p`; DQCA: `cos lambda = sqrt(1-beta^2) cos p`.
/// Meyer's automaton is supported at `theta = 0`, where its symbol is
/// `U_DA(-p)` with `sqrt(1 - beta^2) -> cos rho`, `beta -> sin rho`.
pub fn dispersion(p: f64, params: &ModelParams) -> Result<f64> {
    let (_, cos_l, sin_l) = hop_cos_sin(p, params)?;
    Ok(sin_l.atan2(cos_l))
}

/// `d lambda / dp` for any model supported by [`dispersion`].
pub fn model_group_velocity(p: f64, params: &ModelParams) -> Result<f64> {
    let (hop, _, sin_l) = hop_cos_sin(p, params)?;
    if sin_l <= SINGULAR_SIN {
        return Err(Error::SingularPoint { p });
    }
    Ok(hop * p.sin() / sin_l)
}

/// Group velocity `v(p) = sqrt(1 - beta^2) sin p / sin lambda(p)`.
pub fn group_velocity(p: f64, dqca: Dqca) -> Result<f64> {
    let (_, sin_l) = dqca_cos_sin(p, dqca);
    if sin_l <= SINGULAR_SIN {
        return Err(Error::SingularPoint { p });
    }
    Ok(dqca.hop() * p.sin() / sin_l)
}

/// Eigenphase, group velocity and eigenvectors of `U_DA(p)`:
/// `phi_s = (sqrt(1 + s v), s sqrt(1 - s v)) / sqrt(2)`.
///
/// For `beta < 0` the lower components pick up the sign of `beta`.
pub fn eigensystem(p: f64, params: Dqca) -> Result<MomentumEigensystem> {
    let (cos_l, sin_l) = dqca_cos_sin(p, params);
    if sin_l <= SINGULAR_SIN {
        return Err(Error::SingularPoint { p });
    }
    let lambda = sin_l.atan2(cos_l);
    let v = params.hop() * p.sin() / sin_l;
    let sign = if params.beta() < 0.0 { -1.0 } else { 1.0 };
    let root = |x: f64| x.max(0.0).sqrt();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let vector = |s: f64| {
        [
            Complex64::new(h * root(1.0 + s * v), 0.0),
            Complex64::new(s * sign * h * root(1.0 - s * v), 0.0),
        ]
    };
    Ok(MomentumEigensystem {
        p,
        lambda,
        v,
        phi_plus: vector(1.0),
        phi_minus: vector(-1.0),
    })
}
