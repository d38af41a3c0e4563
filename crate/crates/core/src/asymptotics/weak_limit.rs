//! Weak-limit densities of `x / t`.
//!
//! For the DQCA from `(1, i)/sqrt(2)` at the origin,
//! `P(y) = |beta| / (pi (1 - y^2) sqrt(1 - beta^2 - y^2))` on
//! `|y| < sqrt(1 - beta^2)`. The walk with coin angle `theta` has the same
//! shape with `cos theta` in place of `sqrt(1 - beta^2)`, times a linear
//! tilt set by the initial coin.
//!
//! Both densities diverge like an inverse square root at the support
//! edges. Every integral is taken after the substitution
//! `y = s sin u` (`s` the support bound), which cancels the singularity.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::massive_support;
use crate::error::{Error, Result};
use crate::quadrature::integrate_real;

const QUAD_TOL: f64 = 1e-13;
const QUAD_PANELS: usize = 16;

/// Limiting density of `x / t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeakLimitDensity {
    /// DQCA with mass parameter `beta`, initial coin `(1, i)/sqrt(2)`.
    Dqca { beta: f64 },
    /// Coined walk with angle `theta` and initial coin `(a, b)`.
    Qw {
        theta: f64,
        a: Complex64,
        b: Complex64,
    },
}

impl WeakLimitDensity {
    pub fn dqca(beta: f64) -> Result<Self> {
        massive_support(beta)?;
        Ok(WeakLimitDensity::Dqca { beta })
    }

    pub fn qw(theta: f64, a: Complex64, b: Complex64) -> Result<Self> {
        if !(theta > 0.0 && theta < FRAC_PI_2) {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: theta,
                reason: "weak limit of the walk requires 0 < theta < pi/2",
            });
        }
        let norm = a.norm_sqr() + b.norm_sqr();
        if (norm - 1.0).abs() > crate::lattice::NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(WeakLimitDensity::Qw { theta, a, b })
    }

    /// Edge of the support, `sqrt(1 - beta^2)` or `cos theta`.
    pub fn support_bound(&self) -> f64 {
        match *self {
            WeakLimitDensity::Dqca { beta } => (1.0 - beta * beta).sqrt(),
            WeakLimitDensity::Qw { theta, .. } => theta.cos().abs(),
        }
    }

    /// `pdf(y) sqrt(s^2 - y^2)`: the density without its edge singularity.
    fn regular_part(&self, y: f64) -> f64 {
        match *self {
            WeakLimitDensity::Dqca { beta } => beta.abs() / (PI * (1.0 - y * y)),
            WeakLimitDensity::Qw { theta, a, b } => {
                let cos2 = theta.cos().powi(2);
                let tilt =
                    b.norm_sqr() - a.norm_sqr() - (2.0 * theta).sin() * (a * b.conj()).re / cos2;
                theta.sin().abs() / (PI * (1.0 - y * y)) * (1.0 - tilt * y)
            }
        }
    }

    /// Density at `y`; errors outside the open support.
    pub fn pdf(&self, y: f64) -> Result<f64> {
        let s = self.support_bound();
        if !(y.abs() < s) {
            return Err(Error::Domain {
                what: "y",
                value: y,
                bound: s,
            });
        }
        Ok(self.regular_part(y) / (s * s - y * y).sqrt())
    }

    /// `int_{y0}^{y1} g(y) pdf(y) dy` in the variable `u = asin(y / s)`.
    fn integrate_with<G: Fn(f64) -> f64>(&self, y0: f64, y1: f64, g: G) -> Result<f64> {
        let s = self.support_bound();
        let u0 = (y0 / s).clamp(-1.0, 1.0).asin();
        let u1 = (y1 / s).clamp(-1.0, 1.0).asin();
        integrate_real(
            |u| {
                let y = s * u.sin();
                g(y) * self.regular_part(y)
            },
            u0,
            u1,
            QUAD_PANELS,
            QUAD_TOL,
        )
    }

    /// Probability mass on `[y0, y1]` (clipped to the support).
    pub fn mass_between(&self, y0: f64, y1: f64) -> Result<f64> {
        self.integrate_with(y0, y1, |_| 1.0)
    }

    /// Total mass, 1 up to quadrature error.
    pub fn normalization(&self) -> Result<f64> {
        let s = self.support_bound();
        self.mass_between(-s, s)
    }

    /// `int y^r pdf(y) dy`.
    pub fn moment(&self, r: u32) -> Result<f64> {
        let s = self.support_bound();
        self.integrate_with(-s, s, |y| y.powi(r as i32))
    }

    /// L1 distance between site probabilities after `t` steps, read as a
    /// distribution of `n / t`, and this density, both binned into `bins`
    /// equal bins over the support. Mass outside the support counts in full.
    pub fn binned_l1(&self, probabilities: &[(i64, f64)], t: u64, bins: usize) -> Result<f64> {
        if t == 0 || bins == 0 {
            return Err(Error::InvalidParameter {
                name: "t, bins",
                value: 0.0,
                reason: "time and bin count must be positive",
            });
        }
        let s = self.support_bound();
        let width = 2.0 * s / bins as f64;
        let mut empirical = vec![0.0; bins];
        let mut distance = 0.0;
        for &(n, p) in probabilities {
            let k = ((n as f64 / t as f64 + s) / width).floor();
            if k >= 0.0 && k < bins as f64 {
                empirical[k as usize] += p;
            } else {
                distance += p;
            }
        }
        for (k, e) in empirical.iter().enumerate() {
            let lo = -s + width * k as f64;
            distance += (e - self.mass_between(lo, lo + width)?).abs();
        }
        Ok(distance)
    }

    /// Closed-form distribution function of the DQCA density,
    /// `1/2 + atan(|beta| tan u) / pi` with `y = s sin u`. `None` for the walk.
    pub fn cdf(&self, y: f64) -> Option<f64> {
        match *self {
            WeakLimitDensity::Dqca { beta } => {
                let s = self.support_bound();
                if y <= -s {
                    return Some(0.0);
                }
                if y >= s {
                    return Some(1.0);
                }
                let u = (y / s).asin();
                Some(0.5 + (beta.abs() * u.tan()).atan() / PI)
            }
            WeakLimitDensity::Qw { .. } => None,
        }
    }
}

/// DQCA weak-limit density at `y`.
pub fn weak_limit_pdf_dqca(y: f64, beta: f64) -> Result<f64> {
    WeakLimitDensity::dqca(beta)?.pdf(y)
}

/// Walk weak-limit density at `y` for initial coin `(a, b)`.
pub fn weak_limit_pdf_qw(y: f64, theta: f64, a: Complex64, b: Complex64) -> Result<f64> {
    WeakLimitDensity::qw(theta, a, b)?.pdf(y)
}

/// `lim E[(x/t)^r]` for the DQCA. Odd moments vanish.
pub fn weak_limit_moment(r: u32, beta: f64) -> Result<f64> {
    if r == 0 {
        return Err(Error::InvalidParameter {
            name: "r",
            value: 0.0,
            reason: "moment order must be positive",
        });
    }
    let density = WeakLimitDensity::dqca(beta)?;
    if r % 2 == 1 {
        return Ok(0.0);
    }
    density.moment(r)
}

/// Ballistic standard deviation `t sqrt(1 - |beta|)`.
pub fn asymptotic_sigma(t: f64, beta: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "t",
            value: t,
            reason: "time must be non-negative",
        });
    }
    Ok(t * (1.0 - beta.abs()).max(0.0).sqrt())
}
