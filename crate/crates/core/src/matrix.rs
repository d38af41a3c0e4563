//! Dense 2x2 complex matrices.
//!
//! Every operator acting on the coin space is a `Mat2`. The helpers here
//! are the handful of closed forms that a 2x2 matrix admits: Pauli
//! decomposition, exponentials of Hermitian matrices and integer powers of
//! unitaries.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Row-major 2x2 complex matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2::new(a.into(), b.into(), c.into(), d.into())
    }

    pub const fn zero() -> Self {
        Mat2([[ZERO, ZERO], [ZERO, ZERO]])
    }

    pub const fn identity() -> Self {
        Mat2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub const fn sigma_x() -> Self {
        Mat2([[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn sigma_y() -> Self {
        Mat2([[ZERO, -I], [I, ZERO]])
    }

    pub fn sigma_z() -> Self {
        Mat2::from_real(1.0, 0.0, 0.0, -1.0)
    }

    /// `|u><u|` for a two-component vector.
    pub fn outer(u: [Complex64; 2]) -> Self {
        Mat2([
            [u[0] * u[0].conj(), u[0] * u[1].conj()],
            [u[1] * u[0].conj(), u[1] * u[1].conj()],
        ])
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2::new(
            m[0][0].conj(),
            m[1][0].conj(),
            m[0][1].conj(),
            m[1][1].conj(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let m = &self.0;
        Mat2::new(m[0][0] * s, m[0][1] * s, m[1][0] * s, m[1][1] * s)
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    #[inline]
    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        (*self - *other).max_abs()
    }

    /// Spectral (operator 2-) norm.
    pub fn operator_norm(&self) -> f64 {
        // Largest eigenvalue of the Hermitian A^dagger A.
        let g = self.adjoint() * *self;
        let a = g.0[0][0].re;
        let d = g.0[1][1].re;
        let b = g.0[0][1].norm();
        let mean = 0.5 * (a + d);
        let half_gap = (0.25 * (a - d) * (a - d) + b * b).sqrt();
        (mean + half_gap).max(0.0).sqrt()
    }

    /// Deviation of `U^dagger U` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self).max_abs_diff(&Mat2::identity())
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    /// Pauli components `(h0, hx, hy, hz)` with `M = h0 I + h . sigma`.
    ///
    /// The components are real exactly when `M` is Hermitian.
    pub fn pauli_components(&self) -> [Complex64; 4] {
        let m = &self.0;
        [
            0.5 * (m[0][0] + m[1][1]),
            0.5 * (m[0][1] + m[1][0]),
            0.5 * I * (m[0][1] - m[1][0]),
            0.5 * (m[0][0] - m[1][1]),
        ]
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let [h0, hx, hy, hz] = self.pauli_components();
        let r = (hx.re * hx.re + hy.re * hy.re + hz.re * hz.re).sqrt();
        [h0.re - r, h0.re + r]
    }

    /// `exp(-i s H)` for Hermitian `H`.
    pub fn exp_i_hermitian(&self, s: f64) -> Mat2 {
        let [h0, hx, hy, hz] = self.pauli_components();
        let (nx, ny, nz) = (hx.re, hy.re, hz.re);
        let r = (nx * nx + ny * ny + nz * nz).sqrt();
        let global = Complex64::from_polar(1.0, -s * h0.re);
        if r == 0.0 {
            return Mat2::identity().scale(global);
        }
        let (sin, cos) = (s * r).sin_cos();
        let k = -I * (sin / r);
        let generator = Mat2::sigma_x().scale(nx.into())
            + Mat2::sigma_y().scale(ny.into())
            + Mat2::sigma_z().scale(nz.into());
        (Mat2::identity().scale(cos.into()) + generator.scale(k)).scale(global)
    }

    /// Integer power `U^t` of a unitary matrix through its spectral
    /// decomposition.
    ///
    /// `U` is written as `e^{i chi} V` with `V` in SU(2), and
    /// `V^t = cos(t l) I + sin(t l)/sin(l) (V - cos(l) I)` where
    /// `cos l = tr V / 2`.
    pub fn unitary_power(&self, t: u64) -> Mat2 {
        if t == 0 {
            return Mat2::identity();
        }
        let chi = 0.5 * self.det().arg();
        let phase = Complex64::from_polar(1.0, -chi);
        let v = self.scale(phase);
        let [h0, hx, hy, hz] = v.pauli_components();
        let half_trace = h0.re;
        // Computed from the traceless part; accurate when V is close to +-I.
        let sin_l = (hx.norm_sqr() + hy.norm_sqr() + hz.norm_sqr()).sqrt();
        let lam = sin_l.atan2(half_trace);
        let tf = t as f64;
        let cos_tl = (tf * lam).cos();
        let ratio = if lam.sin() > 1e-12 {
            (tf * lam).sin() / lam.sin()
        } else {
            // limit of sin(t l)/sin(l) at l = 0 and l = pi
            let sign = if half_trace > 0.0 || t % 2 == 1 {
                1.0
            } else {
                -1.0
            };
            sign * tf
        };
        let vt = Mat2::identity().scale(cos_tl.into())
            + (v - Mat2::identity().scale(half_trace.into())).scale(ratio.into());
        vt.scale(Complex64::from_polar(1.0, chi * tf))
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2::new(
            a[0][0] + b[0][0],
            a[0][1] + b[0][1],
            a[1][0] + b[1][0],
            a[1][1] + b[1][1],
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        self + (-rhs)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale((-1.0).into())
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }
}
