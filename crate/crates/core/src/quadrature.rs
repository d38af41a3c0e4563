//! Adaptive quadrature for smooth, possibly highly oscillatory integrands.
//!
//! Two independent rules are provided. [`gauss_kronrod`] is a globally
//! adaptive 7/15-point Gauss-Kronrod scheme; [`adaptive_simpson`] is a
//! locally adaptive Simpson scheme. Both start from a caller-chosen number
//! of equal panels so that integrands with many oscillations are resolved
//! from the first pass.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Kronrod abscissae on `[0, 1]`; odd indices are the Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Upper bound on the number of subintervals before giving up.
const MAX_INTERVALS: usize = 200_000;

/// Value and error estimate of a definite integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

fn kronrod_panel<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).norm(),
    }
}

/// Sum over panels in ascending order of their left end, so the result does
/// not depend on the order in which panels were refined.
fn ordered_sum(mut panels: Vec<Panel>) -> (Complex64, f64) {
    panels.sort_by(|x, y| x.a.total_cmp(&y.a));
    panels
        .iter()
        .fold((Complex64::new(0.0, 0.0), 0.0), |(v, e), p| {
            (v + p.value, e + p.error)
        })
}

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of `f` over `[a, b]`,
/// starting from `panels` equal pieces, to absolute tolerance `tol`.
pub fn gauss_kronrod<F>(f: F, a: f64, b: f64, panels: usize, tol: f64) -> Result<Integral>
where
    F: Fn(f64) -> Complex64,
{
    let panels = panels.max(1);
    let width = (b - a) / panels as f64;
    let mut heap: BinaryHeap<Panel> = (0..panels)
        .map(|k| {
            let lo = a + width * k as f64;
            let hi = if k + 1 == panels { b } else { lo + width };
            kronrod_panel(&f, lo, hi)
        })
        .collect();
    let mut total_error: f64 = heap.iter().map(|p| p.error).sum();
    let mut evaluations = 15 * panels;

    // Written so that a NaN running error keeps refining and ends in an error.
    while !(total_error <= tol) {
        if heap.len() >= MAX_INTERVALS || !total_error.is_finite() {
            let (estimate, error) = ordered_sum(heap.into_vec());
            return Err(Error::NoConvergence {
                estimate,
                error,
                tol,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Cannot split further in double precision.
            let mut all = heap.into_vec();
            all.push(worst);
            let (estimate, error) = ordered_sum(all);
            return Err(Error::NoConvergence {
                estimate,
                error,
                tol,
            });
        }
        let left = kronrod_panel(&f, worst.a, mid);
        let right = kronrod_panel(&f, mid, worst.b);
        evaluations += 30;
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // Refresh the running sum now and then to avoid drift.
        if heap.len().is_multiple_of(1024) {
            total_error = heap.iter().map(|p| p.error).sum();
        }
    }

    let (value, error) = ordered_sum(heap.into_vec());
    Ok(Integral {
        value,
        error,
        evaluations,
    })
}

struct SimpsonState<'a, F> {
    f: &'a F,
    evaluations: usize,
    failed: bool,
}

impl<F: Fn(f64) -> Complex64> SimpsonState<'_, F> {
    #[allow(clippy::too_many_arguments)]
    fn refine(
        &mut self,
        a: f64,
        b: f64,
        fa: Complex64,
        fm: Complex64,
        fb: Complex64,
        whole: Complex64,
        tol: f64,
        depth: u32,
    ) -> (Complex64, f64) {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (self.f)(lm);
        let frm = (self.f)(rm);
        self.evaluations += 2;
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        let err = delta.norm() / 15.0;
        if err <= tol || depth == 0 {
            if err > tol {
                self.failed = true;
            }
            return (left + right + delta / 15.0, err);
        }
        let (lv, le) = self.refine(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1);
        let (rv, re) = self.refine(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
        (lv + rv, le + re)
    }
}

/// Locally adaptive Simpson quadrature with Richardson correction over
/// `panels` equal pieces, to absolute tolerance `tol`.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, panels: usize, tol: f64) -> Result<Integral>
where
    F: Fn(f64) -> Complex64,
{
    let panels = panels.max(1);
    let width = (b - a) / panels as f64;
    let mut state = SimpsonState {
        f: &f,
        evaluations: 0,
        failed: false,
    };
    let panel_tol = tol / panels as f64;
    let mut value = Complex64::new(0.0, 0.0);
    let mut error = 0.0;
    let mut lo = a;
    let mut f_lo = f(a);
    state.evaluations += 1;
    for k in 0..panels {
        let hi = if k + 1 == panels {
            b
        } else {
            a + width * (k + 1) as f64
        };
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        let f_hi = f(hi);
        state.evaluations += 2;
        let whole = (hi - lo) / 6.0 * (f_lo + 4.0 * f_mid + f_hi);
        let (v, e) = state.refine(lo, hi, f_lo, f_mid, f_hi, whole, panel_tol, 40);
        value += v;
        error += e;
        lo = hi;
        f_lo = f_hi;
    }
    if state.failed && error > tol {
        return Err(Error::NoConvergence {
            estimate: value,
            error,
            tol,
        });
    }
    Ok(Integral {
        value,
        error,
        evaluations: state.evaluations,
    })
}

/// Real-valued convenience wrapper around [`gauss_kronrod`].
pub fn integrate_real<F>(f: F, a: f64, b: f64, panels: usize, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    gauss_kronrod(|x| Complex64::new(f(x), 0.0), a, b, panels, tol).map(|i| i.value.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomials_are_exact() {
        let i = integrate_real(|x| x.powi(5) - 3.0 * x * x + 1.0, -1.0, 2.0, 1, 1e-14).unwrap();
        let exact = (64.0 - 1.0) / 6.0 - (8.0 + 1.0) + 3.0;
        assert!((i - exact).abs() < 1e-13);
    }

    #[test]
    fn oscillatory_exponential() {
        // int_0^{2 pi} e^{i 40 x} e^{x / 5} dx, closed form.
        let f = |x: f64| Complex64::from_polar((x / 5.0).exp(), 40.0 * x);
        let z = Complex64::new(0.2, 40.0);
        let exact = ((z * 2.0 * PI).exp() - 1.0) / z;
        let gk = gauss_kronrod(f, 0.0, 2.0 * PI, 16, 1e-12).unwrap();
        let simpson = adaptive_simpson(f, 0.0, 2.0 * PI, 23, 1e-11).unwrap();
        assert!((gk.value - exact).norm() < 1e-11);
        assert!((simpson.value - exact).norm() < 1e-9);
    }

    #[test]
    fn endpoint_singularity_needs_refinement() {
        let i = integrate_real(|x| x.sqrt(), 0.0, 1.0, 1, 1e-10).unwrap();
        assert!((i - 2.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn non_convergence_is_reported_with_estimate() {
        let f = |x: f64| Complex64::new(1.0 / x.abs(), 0.0);
        match gauss_kronrod(f, -1.0, 1.0, 2, 1e-12) {
            Err(Error::NoConvergence { .. }) => {}
            other => panic!("expected NoConvergence, got {other:?}"),
        }
    }
}
