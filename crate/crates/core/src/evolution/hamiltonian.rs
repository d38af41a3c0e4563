//! Effective Hamiltonian of the DQCA and its Dirac limit.

use num_complex::Complex64;

use super::momentum::{dispersion, momentum_unitary, SINGULAR_SIN};
use super::{Dqca, ModelParams};
use crate::error::{Error, Result};
use crate::lattice::LatticeUnits;
use crate::matrix::Mat2;

/// A 2x2 Hermitian matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianMatrix2(Mat2);

impl HermitianMatrix2 {
    /// Accepts `m` when `m = m^dagger` within `1e-12`.
    pub fn new(m: Mat2) -> Result<Self> {
        let defect = m.hermiticity_defect();
        if defect > 1e-12 {
            return Err(Error::InvalidParameter {
                name: "hermiticity defect",
                value: defect,
                reason: "matrix is not Hermitian",
            });
        }
        Ok(HermitianMatrix2(m))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    /// `exp(-i tau H / hbar)`.
    pub fn propagator(&self, units: &LatticeUnits) -> Mat2 {
        self.0.exp_i_hermitian(units.tau / units.hbar)
    }
}

/// `lambda / sin(lambda)` times the Pauli vector; `None` at `sin lambda = 0`
/// unless `lambda = 0`, where the ratio tends to 1.
fn hamiltonian_matrix(
    p: f64,
    dqca: Dqca,
    units: &LatticeUnits,
    allow_origin: bool,
) -> Option<Mat2> {
    let lambda = dispersion(p, &ModelParams::Dqca(dqca)).ok()?;
    let sin_l = lambda.sin();
    let ratio = if sin_l > SINGULAR_SIN {
        lambda / sin_l
    } else if allow_origin && lambda < 1.0 {
        1.0
    } else {
        return None;
    };
    let scale = units.hbar * ratio / units.tau;
    let diag = dqca.hop() * p.sin();
    let beta = dqca.beta();
    Some(Mat2::from_real(diag, beta, beta, -diag).scale(Complex64::new(scale, 0.0)))
}

/// `H(p) = hbar lambda / (tau sin lambda) [[hop sin p, beta], [beta, -hop sin p]]`
/// so that `exp(-i tau H / hbar) = U_DA(p)`. `p` is the dimensionless
/// `p d / hbar`.
pub fn extract_hamiltonian(p: f64, params: Dqca, units: &LatticeUnits) -> Result<HermitianMatrix2> {
    hamiltonian_matrix(p, params, units, false)
        .map(HermitianMatrix2)
        .ok_or(Error::SingularPoint { p })
}

/// Effective Hamiltonian of any model supported by [`dispersion`]:
/// `H = (hbar / tau) (lambda / sin lambda) i (U(p) - cos lambda I)`, which
/// satisfies `exp(-i tau H / hbar) = U(p)` because these symbols have unit
/// determinant. For the DQCA it equals [`extract_hamiltonian`].
pub fn effective_hamiltonian(
    p: f64,
    params: &ModelParams,
    units: &LatticeUnits,
) -> Result<HermitianMatrix2> {
    let lambda = dispersion(p, params)?;
    let sin_l = lambda.sin();
    if sin_l <= SINGULAR_SIN {
        return Err(Error::SingularPoint { p });
    }
    let u = *momentum_unitary(p, params).matrix();
    let traceless = u - Mat2::identity().scale(Complex64::new(lambda.cos(), 0.0));
    let scale = units.hbar * lambda / (units.tau * sin_l);
    HermitianMatrix2::new(traceless.scale(Complex64::new(0.0, scale)))
}

/// Largest operator-norm distance between `H(p)` and the Dirac matrix
/// `[[P c, m c^2], [m c^2, -P c]]` for `|p d / hbar| <= p_max`, with
/// `P = p hbar / d` and `m = beta hbar / (d c)`.
///
/// Requires `tau = d / c`. At `lambda = 0` the limit `lambda / sin lambda -> 1`
/// is used.
pub fn dirac_limit_check(params: Dqca, units: &LatticeUnits, p_max: f64) -> Result<f64> {
    let light_time = units.d / units.c;
    if (units.tau - light_time).abs() > 1e-12 * light_time {
        return Err(Error::InvalidParameter {
            name: "tau",
            value: units.tau,
            reason: "Dirac limit requires tau = d / c",
        });
    }
    if !(p_max.is_finite() && p_max >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "p_max",
            value: p_max,
            reason: "momentum bound must be finite and non-negative",
        });
    }
    const SAMPLES: usize = 200;
    let energy = units.hbar * units.c / units.d;
    let mass_term = params.beta() * energy;
    let mut worst: f64 = 0.0;
    for k in 0..=SAMPLES {
        let p = if p_max == 0.0 {
            0.0
        } else {
            -p_max + 2.0 * p_max * k as f64 / SAMPLES as f64
        };
        let h = hamiltonian_matrix(p, params, units, true).ok_or(Error::SingularPoint { p })?;
        let kinetic = p * energy;
        let dirac = Mat2::from_real(kinetic, mass_term, mass_term, -kinetic);
        worst = worst.max((h - dirac).operator_norm());
        if p_max == 0.0 {
            break;
        }
    }
    Ok(worst)
}
