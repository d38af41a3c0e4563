//! Exact spectral evolution.
//!
//! A state that has been stepped `t` times from a window of `len` sites
//! lives on `len + 2t` sites. On a momentum grid of `M >= len + 2t + 1`
//! points the discrete Fourier transform is therefore exact: the state is
//! transformed once, every grid point is multiplied by `U(p_k)^t` and the
//! result is transformed back.

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::momentum::{eigensystem, momentum_unitary};
use super::ModelParams;
use crate::error::{Error, Result};
use crate::lattice::SpinorField;
use crate::matrix::Mat2;

/// Smallest power-of-two grid that holds `t` steps of `field`.
pub fn spectral_grid_size(field: &SpinorField, t: u64) -> usize {
    (field.len() + 2 * t as usize + 1)
        .next_power_of_two()
        .max(2)
}

fn propagator(p: f64, params: &ModelParams, t: u64) -> Mat2 {
    if let ModelParams::Dqca(dqca) = params {
        // Closed-form eigenvectors away from the massless singular points.
        if let Ok(eig) = eigensystem(p, *dqca) {
            return eig.power(t);
        }
    }
    momentum_unitary(p, params).power(t)
}

/// Evolves `init` by `t` steps through momentum space on a grid of
/// `grid_size` points.
pub fn spectral_evolve(
    init: &SpinorField,
    params: &ModelParams,
    t: u64,
    grid_size: usize,
) -> Result<SpinorField> {
    if t == 0 {
        return Ok(init.clone());
    }
    let width = init.len() + 2 * t as usize;
    if grid_size < width + 1 {
        return Err(Error::GridTooSmall {
            grid: grid_size,
            required: width + 1,
        });
    }
    if !grid_size.is_multiple_of(2) {
        return Err(Error::OddGrid(grid_size));
    }

    let zero = Complex64::new(0.0, 0.0);
    let mut right = vec![zero; grid_size];
    let mut left = vec![zero; grid_size];
    let shift = t as usize;
    for (i, [r, l]) in init.amplitudes().iter().enumerate() {
        right[i + shift] = *r;
        left[i + shift] = *l;
    }

    let mut planner = FftPlanner::new();
    let forward = planner.plan_fft_forward(grid_size);
    let inverse = planner.plan_fft_inverse(grid_size);
    forward.process(&mut right);
    forward.process(&mut left);

    let step = 2.0 * std::f64::consts::PI / grid_size as f64;
    for k in 0..grid_size {
        let p = if k < grid_size / 2 {
            k as f64 * step
        } else {
            (k as f64 - grid_size as f64) * step
        };
        let [r, l] = propagator(p, params, t).apply([right[k], left[k]]);
        right[k] = r;
        left[k] = l;
    }

    inverse.process(&mut right);
    inverse.process(&mut left);
    let norm = 1.0 / grid_size as f64;
    let amps = right
        .iter()
        .zip(&left)
        .take(width)
        .map(|(r, l)| [r * norm, l * norm])
        .collect();
    Ok(SpinorField::from_parts(
        init.offset() - t as i64,
        amps,
        init.step_count() + t,
    ))
}
