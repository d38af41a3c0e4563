//! Stationary-phase approximation of the DQCA spinor.
//!
//! From a localised coin `(a, b)` the spinor at site `n` after `t` steps is
//!
//! ```text
//! psi_R(n, t) = a Re I_1 - a Re I_2 - i b Im I_3
//! psi_L(n, t) = b Re I_1 + b Re I_2 - i a Im I_3
//! ```
//!
//! with `I_i(alpha, t) = int dp/(2 pi) e^{i t (lambda(p) + alpha p)} g_i(p)`,
//! `alpha = n / t`, `g_1 = 1`, `g_2 = v`, `g_3 = sqrt(1 - v^2)`. The phase is
//! stationary where `v(p) = -alpha`; expanding around the two roots gives a
//! closed form for `I_1`, and `I_2 ~ -alpha I_1`, `I_3 ~ sqrt(1 - alpha^2) I_1`.

use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;
use rayon::prelude::*;

use super::massive_support;
use crate::error::{Error, Result};
use crate::quadrature::{adaptive_simpson, gauss_kronrod};

/// Relative distance from the causal edge `|alpha| = sqrt(1 - beta^2)`
/// inside which the stationary-phase formula is not evaluated.
pub const BOUNDARY_MARGIN: f64 = 1e-9;

/// Default absolute tolerance of the exact integrals.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Stationary point of `lambda(p) + |alpha| p` and the quantities built on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryPointData {
    pub alpha: f64,
    /// `p_s` in `[0, pi/2]`; the roots are `-p_s` and `pi + p_s` for
    /// `alpha > 0`.
    pub p_s: f64,
    pub lambda_s: f64,
    /// `lambda''(p_s) >= 0`.
    pub lambda_pp: f64,
    /// `phi(alpha) = lambda_s - |alpha| p_s`.
    pub phi_alpha: f64,
}

/// How an [`OscillatoryIntegralResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureMethod {
    ExactQuadrature,
    StationaryPhase,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatoryIntegralResult {
    pub value: Complex64,
    pub method: QuadratureMethod,
    /// Absolute error estimate, never negative.
    pub est_error: f64,
}

/// Which of the three integrals: `g_1 = 1`, `g_2 = v`, `g_3 = sqrt(1 - v^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegralKind {
    I1,
    I2,
    I3,
}

impl IntegralKind {
    pub fn from_index(i: u8) -> Result<Self> {
        match i {
            1 => Ok(IntegralKind::I1),
            2 => Ok(IntegralKind::I2),
            3 => Ok(IntegralKind::I3),
            _ => Err(Error::InvalidParameter {
                name: "i",
                value: i as f64,
                reason: "integral index must be 1, 2 or 3",
            }),
        }
    }
}

/// Roots of `v(p) + alpha = 0` and the curvature there.
pub fn stationary_points(alpha: f64, beta: f64) -> Result<StationaryPointData> {
    let s = massive_support(beta)?;
    let a = alpha.abs();
    if !(a <= s * (1.0 - BOUNDARY_MARGIN)) {
        return Err(Error::Domain {
            what: "|alpha|",
            value: a,
            bound: s,
        });
    }
    let s2 = s * s;
    let inner = (s2 - a * a) / ((1.0 - a * a) * s2);
    let p_s = inner.clamp(0.0, 1.0).sqrt().acos();
    let (sp, cp) = p_s.sin_cos();
    let lambda_s = (beta * beta + s2 * sp * sp).sqrt().atan2(s * cp);
    let lambda_pp = (s2 - a * a).sqrt() * (1.0 - a * a) / beta.abs();
    Ok(StationaryPointData {
        alpha,
        p_s,
        lambda_s,
        lambda_pp,
        phi_alpha: lambda_s - a * p_s,
    })
}

fn check_time(t: u64) -> Result<()> {
    if t == 0 {
        return Err(Error::InvalidParameter {
            name: "t",
            value: 0.0,
            reason: "time step must be positive",
        });
    }
    Ok(())
}

/// Integrand `e^{i t (lambda + alpha p)} g(p) / (2 pi)`.
fn integrand(kind: IntegralKind, alpha: f64, t: f64, beta: f64) -> impl Fn(f64) -> Complex64 {
    let s = (1.0 - beta * beta).sqrt();
    move |p: f64| {
        let (sp, cp) = p.sin_cos();
        let sin_l = (beta * beta + s * s * sp * sp).sqrt();
        let lambda = sin_l.atan2(s * cp);
        let v = s * sp / sin_l;
        let g = match kind {
            IntegralKind::I1 => 1.0,
            IntegralKind::I2 => v,
            IntegralKind::I3 => (1.0 - v * v).max(0.0).sqrt(),
        };
        Complex64::from_polar(g / (2.0 * PI), t * (lambda + alpha * p))
    }
}

/// Quadrature rule for [`i_exact_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureRule {
    GaussKronrod,
    Simpson,
}

/// `I_i(alpha, t)` by the chosen adaptive rule.
pub fn i_exact_with(
    kind: IntegralKind,
    alpha: f64,
    t: u64,
    beta: f64,
    tol: f64,
    rule: QuadratureRule,
) -> Result<OscillatoryIntegralResult> {
    massive_support(beta)?;
    check_time(t)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol,
            reason: "tolerance must be positive",
        });
    }
    let tf = t as f64;
    let f = integrand(kind, alpha, tf, beta);
    // The phase derivative is at most t (1 + |alpha|); aim for a few panels
    // per oscillation. Panel counts are even so the grid is symmetric in p.
    let cycles = (tf * (1.0 + alpha.abs())).ceil() as usize;
    let integral = match rule {
        QuadratureRule::GaussKronrod => gauss_kronrod(f, -PI, PI, 2 * cycles + 16, tol)?,
        QuadratureRule::Simpson => adaptive_simpson(f, -PI, PI, 6 * cycles + 30, tol)?,
    };
    Ok(OscillatoryIntegralResult {
        value: integral.value,
        method: QuadratureMethod::ExactQuadrature,
        est_error: integral.error,
    })
}

/// `I_i(alpha, t)` by adaptive Gauss-Kronrod quadrature.
pub fn i_exact(
    kind: IntegralKind,
    alpha: f64,
    t: u64,
    beta: f64,
    tol: f64,
) -> Result<OscillatoryIntegralResult> {
    i_exact_with(kind, alpha, t, beta, tol, QuadratureRule::GaussKronrod)
}

/// `I_i(n / t, t)` at every lattice site `|n| <= t`, in order of `n`.
pub fn i_exact_lattice(
    kind: IntegralKind,
    t: u64,
    beta: f64,
    tol: f64,
) -> Result<Vec<(i64, OscillatoryIntegralResult)>> {
    check_time(t)?;
    let t_i = t as i64;
    (-t_i..=t_i)
        .into_par_iter()
        .map(|n| i_exact(kind, n as f64 / t as f64, t, beta, tol).map(|r| (n, r)))
        .collect()
}

/// Stationary-phase value of `I_1(alpha, t)`:
/// `(2 pi t lambda'')^{-1/2} [e^{i t phi + i pi/4} + e^{i t (|alpha| pi - phi + pi) - i pi/4}]`.
pub fn i1_stationary(alpha: f64, t: u64, beta: f64) -> Result<OscillatoryIntegralResult> {
    check_time(t)?;
    let sp = stationary_points(alpha, beta)?;
    let tf = t as f64;
    let curvature = tf * sp.lambda_pp;
    let amplitude = 1.0 / (2.0 * PI * curvature).sqrt();
    let first = Complex64::from_polar(1.0, tf * sp.phi_alpha + FRAC_PI_4);
    let second =
        Complex64::from_polar(1.0, tf * (alpha.abs() * PI - sp.phi_alpha + PI) - FRAC_PI_4);
    Ok(OscillatoryIntegralResult {
        value: (first + second) * amplitude,
        method: QuadratureMethod::StationaryPhase,
        est_error: curvature.powf(-1.5),
    })
}

fn scaled(base: OscillatoryIntegralResult, factor: f64) -> OscillatoryIntegralResult {
    OscillatoryIntegralResult {
        value: base.value * factor,
        method: base.method,
        est_error: base.est_error * factor.abs(),
    }
}

/// `I_2 ~ -alpha I_1`.
pub fn i2_stationary(alpha: f64, t: u64, beta: f64) -> Result<OscillatoryIntegralResult> {
    i1_stationary(alpha, t, beta).map(|r| scaled(r, -alpha))
}

/// `I_3 ~ sqrt(1 - alpha^2) I_1`.
pub fn i3_stationary(alpha: f64, t: u64, beta: f64) -> Result<OscillatoryIntegralResult> {
    i1_stationary(alpha, t, beta).map(|r| scaled(r, (1.0 - alpha * alpha).sqrt()))
}

/// Assembles `(psi_R, psi_L)` from the three integrals. The `I_3` terms
/// carry the sign of `beta`.
pub fn spinor_from_integrals(
    a: Complex64,
    b: Complex64,
    i1: Complex64,
    i2: Complex64,
    i3: Complex64,
    beta: f64,
) -> (Complex64, Complex64) {
    let minus_i = Complex64::new(0.0, -1.0);
    let sign = if beta < 0.0 { -1.0 } else { 1.0 };
    let im3 = sign * i3.im;
    (
        a * i1.re - a * i2.re + minus_i * b * im3,
        b * i1.re + b * i2.re + minus_i * a * im3,
    )
}

fn check_coin(a: Complex64, b: Complex64) -> Result<()> {
    let norm = a.norm_sqr() + b.norm_sqr();
    if (norm - 1.0).abs() > crate::lattice::NORM_TOL {
        return Err(Error::NotNormalized { norm });
    }
    Ok(())
}

fn in_support(n: i64, t: u64, beta: f64) -> Result<bool> {
    let s = massive_support(beta)?;
    let alpha = n as f64 / t as f64;
    Ok(alpha.abs() <= s * (1.0 - BOUNDARY_MARGIN))
}

/// Stationary-phase spinor at site `n` after `t` steps from the coin
/// `(a, b)` at the origin; `(0, 0)` outside the causal support.
pub fn approx_spinor(
    n: i64,
    t: u64,
    beta: f64,
    a: Complex64,
    b: Complex64,
) -> Result<(Complex64, Complex64)> {
    check_time(t)?;
    check_coin(a, b)?;
    let zero = Complex64::new(0.0, 0.0);
    if !in_support(n, t, beta)? {
        return Ok((zero, zero));
    }
    let alpha = n as f64 / t as f64;
    let i1 = i1_stationary(alpha, t, beta)?.value;
    let i2 = i1 * -alpha;
    let i3 = i1 * (1.0 - alpha * alpha).sqrt();
    Ok(spinor_from_integrals(a, b, i1, i2, i3, beta))
}

/// Spinor at site `n` assembled from the exact (quadrature) integrals.
pub fn exact_spinor(
    n: i64,
    t: u64,
    beta: f64,
    a: Complex64,
    b: Complex64,
    tol: f64,
) -> Result<(Complex64, Complex64)> {
    check_coin(a, b)?;
    let alpha = n as f64 / t as f64;
    let i1 = i_exact(IntegralKind::I1, alpha, t, beta, tol)?.value;
    let i2 = i_exact(IntegralKind::I2, alpha, t, beta, tol)?.value;
    let i3 = i_exact(IntegralKind::I3, alpha, t, beta, tol)?.value;
    Ok(spinor_from_integrals(a, b, i1, i2, i3, beta))
}

/// `|psi_R|^2 + |psi_L|^2` of [`approx_spinor`].
pub fn prob_approx(n: i64, t: u64, beta: f64, a: Complex64, b: Complex64) -> Result<f64> {
    let (r, l) = approx_spinor(n, t, beta, a, b)?;
    Ok(r.norm_sqr() + l.norm_sqr())
}

/// Closed-form stationary-phase probability for the initial coin `(1, 0)`:
///
/// ```text
/// P = 1/(pi t lambda'') { (1+alpha)^2 [1 + (-1)^(t+n)] cos^2(t phi + pi/4)
///                       + (1-alpha^2) [1 - (-1)^(t+n)] sin^2(t phi + pi/4) }
/// ```
///
/// `alpha t` must be an integer `n`; the parity is taken from `t + n`.
/// Zero outside the causal support.
pub fn prob_approx_init10(alpha: f64, t: u64, beta: f64) -> Result<f64> {
    check_time(t)?;
    let tf = t as f64;
    let n_real = alpha * tf;
    let n = n_real.round();
    if (n_real - n).abs() > 1e-9 * tf.max(1.0) {
        return Err(Error::Domain {
            what: "alpha t (must be an integer lattice site)",
            value: n_real,
            bound: n,
        });
    }
    let n = n as i64;
    if !in_support(n, t, beta)? {
        return Ok(0.0);
    }
    let alpha = n as f64 / tf;
    let sp = stationary_points(alpha, beta)?;
    let even = (t as i64 + n).rem_euclid(2) == 0;
    let angle = tf * sp.phi_alpha + FRAC_PI_4;
    let bracket = if even {
        2.0 * (1.0 + alpha).powi(2) * angle.cos().powi(2)
    } else {
        2.0 * (1.0 - alpha * alpha) * angle.sin().powi(2)
    };
    Ok(bracket / (PI * tf * sp.lambda_pp))
}
