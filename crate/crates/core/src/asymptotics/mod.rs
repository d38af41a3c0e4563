//! Long-time behaviour of the DQCA started from a localised state.
//!
//! Two approximations are provided:
//!
//! * the weak limit ([`weak_limit`]): the rescaled position `x / t`
//!   converges in distribution to an explicit density supported on
//!   `|y| <= sqrt(1 - beta^2)`, which fixes the ballistic spreading rate;
//! * the stationary-phase approximation ([`stationary`]) of the integrals
//!   `I_i(alpha, t)` that build the exact spinor, which resolves the
//!   oscillations of the distribution at each lattice site.
//!
//! The exact `I_i` are available by adaptive quadrature for comparison.

pub mod stationary;
pub mod weak_limit;

pub use stationary::{
    approx_spinor, exact_spinor, i1_stationary, i2_stationary, i3_stationary, i_exact,
    i_exact_lattice, i_exact_with, prob_approx, prob_approx_init10, spinor_from_integrals,
    stationary_points, IntegralKind, OscillatoryIntegralResult, QuadratureMethod, QuadratureRule,
    StationaryPointData, BOUNDARY_MARGIN,
};
pub use weak_limit::{
    asymptotic_sigma, weak_limit_moment, weak_limit_pdf_dqca, weak_limit_pdf_qw, WeakLimitDensity,
};

use crate::error::{Error, Result};

/// `sqrt(1 - beta^2)` after checking `0 < |beta| < 1`.
pub(crate) fn massive_support(beta: f64) -> Result<f64> {
    if !(beta.abs() > 0.0 && beta.abs() < 1.0) {
        return Err(Error::InvalidParameter {
            name: "beta",
            value: beta,
            reason: "asymptotic analysis requires 0 < |beta| < 1",
        });
    }
    Ok((1.0 - beta * beta).sqrt())
}
