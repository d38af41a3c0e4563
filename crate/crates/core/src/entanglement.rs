//! Entanglement between the coin and the position of the walker.
//!
//! The coin state is obtained by tracing out the lattice,
//! `rho_c = sum_n psi(n) psi(n)^dagger`, and the entanglement of the pure
//! global state is the base-2 von Neumann entropy of `rho_c`.
//!
//! For the DQCA started from a localised coin `(a, b)` the long-time
//! average of `rho_c` has the closed form
//!
//! ```text
//! rho = 1/2 [[ |beta| |b|^2 + (2 - |beta|) |a|^2, 2 |beta| Re(a b*) ],
//!            [ 2 |beta| Re(a b*), |beta| |a|^2 + (2 - |beta|) |b|^2 ]]
//! ```

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::evolution::{step, ModelParams};
use crate::lattice::{BlochAngles, SpinorField, NORM_TOL};
use crate::matrix::Mat2;

/// Tolerance on Hermiticity, trace and spectrum of a [`DensityMatrix2`].
pub const DENSITY_TOL: f64 = 1e-12;

/// Eigenvalues below this are treated as exactly zero in [`entropy`].
pub const EIGEN_FLOOR: f64 = 1e-15;

/// A 2x2 density matrix: Hermitian, unit trace, spectrum in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2(Mat2);

impl DensityMatrix2 {
    pub fn new(m: Mat2) -> Result<Self> {
        let herm = m.hermiticity_defect();
        if herm > DENSITY_TOL {
            return Err(Error::InvalidParameter {
                name: "hermiticity defect",
                value: herm,
                reason: "density matrix must be Hermitian",
            });
        }
        let trace = m.trace();
        if (trace - 1.0).norm() > DENSITY_TOL {
            return Err(Error::InvalidParameter {
                name: "trace",
                value: trace.re,
                reason: "density matrix must have unit trace",
            });
        }
        for ev in m.hermitian_eigenvalues() {
            if !(-DENSITY_TOL..=1.0 + DENSITY_TOL).contains(&ev) {
                return Err(Error::InvalidParameter {
                    name: "eigenvalue",
                    value: ev,
                    reason: "density matrix spectrum must lie in [0, 1]",
                });
            }
        }
        Ok(DensityMatrix2(m))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0.get(row, col)
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 2] {
        self.0.hermitian_eigenvalues()
    }

    /// `V rho V^dagger`.
    pub fn conjugated(&self, v: &Mat2) -> Result<Self> {
        DensityMatrix2::new(*v * self.0 * v.adjoint())
    }

    /// Entrywise mean of a non-empty set of density matrices.
    pub fn average<'a, I>(items: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a DensityMatrix2>,
    {
        let mut sum = Mat2::zero();
        let mut count = 0usize;
        for rho in items {
            sum = sum + rho.0;
            count += 1;
        }
        if count == 0 {
            return Err(Error::InvalidParameter {
                name: "count",
                value: 0.0,
                reason: "cannot average an empty set",
            });
        }
        DensityMatrix2::new(sum.scale(Complex64::new(1.0 / count as f64, 0.0)))
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix2) -> f64 {
        self.0.max_abs_diff(&other.0)
    }
}

/// Coin reduced density matrix `sum_n psi(n) psi(n)^dagger`.
pub fn reduced_density(field: &SpinorField) -> DensityMatrix2 {
    let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
    for [r, l] in field.amplitudes() {
        m[0][0] += r * r.conj();
        m[0][1] += r * l.conj();
        m[1][1] += l * l.conj();
    }
    m[1][0] = m[0][1].conj();
    m[0][0].im = 0.0;
    m[1][1].im = 0.0;
    DensityMatrix2(Mat2(m))
}

/// Base-2 von Neumann entropy, in `[0, 1]`.
pub fn entropy(rho: &DensityMatrix2) -> f64 {
    let s: f64 = rho
        .eigenvalues()
        .iter()
        .map(|&ev| {
            let ev = ev.clamp(0.0, 1.0);
            if ev < EIGEN_FLOOR {
                0.0
            } else {
                -ev * ev.log2()
            }
        })
        .sum();
    s.clamp(0.0, 1.0)
}

/// Long-time averaged coin density matrix of the DQCA from the coin `(a, b)`.
pub fn asymptotic_rho(beta: f64, a: Complex64, b: Complex64) -> Result<DensityMatrix2> {
    if !(beta.abs() <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "beta",
            value: beta,
            reason: "mass parameter must satisfy |beta| <= 1",
        });
    }
    let norm = a.norm_sqr() + b.norm_sqr();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm });
    }
    let m = beta.abs();
    let (pa, pb) = (a.norm_sqr() / norm, b.norm_sqr() / norm);
    let off = m * (a * b.conj()).re / norm;
    let upper = 0.5 * (m * pb + (2.0 - m) * pa);
    Ok(DensityMatrix2(Mat2::from_real(
        upper,
        off,
        off,
        1.0 - upper,
    )))
}

/// [`asymptotic_rho`] in Bloch form:
/// `1/2 [[1 + (1 - |beta|) cos g, |beta| cos f sin g], [.., 1 - (1 - |beta|) cos g]]`.
pub fn asymptotic_rho_bloch(beta: f64, angles: BlochAngles) -> Result<DensityMatrix2> {
    if !(beta.abs() <= 1.0) {
        return Err(Error::InvalidParameter {
            name: "beta",
            value: beta,
            reason: "mass parameter must satisfy |beta| <= 1",
        });
    }
    let m = beta.abs();
    let (sg, cg) = angles.gamma().sin_cos();
    let diag = 0.5 * (1.0 - m) * cg;
    let off = 0.5 * m * angles.phi().cos() * sg;
    Ok(DensityMatrix2(Mat2::from_real(
        0.5 + diag,
        off,
        off,
        0.5 - diag,
    )))
}

/// `(t, S(t))` for `t = 0..=t_max` under exact evolution.
pub fn entropy_series(
    init: &SpinorField,
    params: &ModelParams,
    t_max: u64,
) -> Result<Vec<(u64, f64)>> {
    Ok(density_series(init, params, t_max)?
        .into_iter()
        .map(|(t, rho)| (t, entropy(&rho)))
        .collect())
}

/// `(t, rho_c(t))` for `t = 0..=t_max` under exact evolution.
pub fn density_series(
    init: &SpinorField,
    params: &ModelParams,
    t_max: u64,
) -> Result<Vec<(u64, DensityMatrix2)>> {
    if t_max == 0 {
        return Err(Error::InvalidParameter {
            name: "t_max",
            value: 0.0,
            reason: "series length must be positive",
        });
    }
    let mut out = Vec::with_capacity(t_max as usize + 1);
    let mut field = init.clone();
    out.push((0, reduced_density(&field)));
    for t in 1..=t_max {
        field = step(&field, params);
        out.push((t, reduced_density(&field)));
    }
    Ok(out)
}
