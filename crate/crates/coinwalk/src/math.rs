//! Small dense complex linear algebra for the two-level coin space.
//!
//! Everything here is 2×2: coin flips, Kraus operators, and POVM elements
//! all act on the coin qubit alone. Eigenvalues of Hermitian matrices are
//! computed in closed form from the trace and the off-diagonal modulus, so
//! no iterative solver is involved anywhere.

use num_complex::Complex64;
use serde::Serialize;
use std::ops::{Add, Mul, Sub};

pub(crate) const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A 2×2 complex matrix, stored row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const fn zero() -> Self {
        Mat2([[C_ZERO, C_ZERO], [C_ZERO, C_ZERO]])
    }

    pub const fn identity() -> Self {
        Mat2([[C_ONE, C_ZERO], [C_ZERO, C_ONE]])
    }

    pub fn from_real(rows: [[f64; 2]; 2]) -> Self {
        Mat2([
            [rows[0][0].into(), rows[0][1].into()],
            [rows[1][0].into(), rows[1][1].into()],
        ])
    }

    /// The outer product ∣u⟩⟨v∣ of two coin-space vectors.
    pub fn outer(u: [Complex64; 2], v: [Complex64; 2]) -> Self {
        Mat2([
            [u[0] * v[0].conj(), u[0] * v[1].conj()],
            [u[1] * v[0].conj(), u[1] * v[1].conj()],
        ])
    }

    /// Build a matrix from its two columns.
    pub fn from_columns(c0: [Complex64; 2], c1: [Complex64; 2]) -> Self {
        Mat2([[c0[0], c1[0]], [c0[1], c1[1]]])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Mat2([
            [self.0[0][0].conj(), self.0[1][0].conj()],
            [self.0[0][1].conj(), self.0[1][1].conj()],
        ])
    }

    pub fn mul_vec(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.0[0][0] * v[0] + self.0[0][1] * v[1],
            self.0[1][0] * v[0] + self.0[1][1] * v[1],
        ]
    }

    pub fn scale(&self, s: f64) -> Self {
        let s = Complex64::from(s);
        Mat2([
            [self.0[0][0] * s, self.0[0][1] * s],
            [self.0[1][0] * s, self.0[1][1] * s],
        ])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn determinant(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Largest entry modulus (the max-norm used by the tolerance checks).
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Max-norm of M†M − 1; zero for a unitary matrix.
    pub fn unitarity_deviation(&self) -> f64 {
        (self.adjoint() * *self - Mat2::identity()).max_abs()
    }

    /// Max-norm of M − M†; zero for a Hermitian matrix.
    pub fn hermiticity_deviation(&self) -> f64 {
        (*self - self.adjoint()).max_abs()
    }

    /// Eigenvalues of a Hermitian matrix, in closed form, ordered (low, high).
    ///
    /// For H = [[a, b], [b̄, d]] with real a, d the eigenvalues are
    /// (a+d)/2 ± sqrt(((a−d)/2)² + |b|²).
    pub fn hermitian_eigenvalues(&self) -> (f64, f64) {
        let a = self.0[0][0].re;
        let d = self.0[1][1].re;
        let mid = 0.5 * (a + d);
        let disc = (0.25 * (a - d) * (a - d) + self.0[0][1].norm_sqr()).sqrt();
        (mid - disc, mid + disc)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j];
            }
        }
        out
    }
}

impl Add for Mat2 {
    type Output = Mat2;

    fn add(self, rhs: Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][j] + rhs.0[i][j];
            }
        }
        out
    }
}

impl Sub for Mat2 {
    type Output = Mat2;

    fn sub(self, rhs: Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][j] - rhs.0[i][j];
            }
        }
        out
    }
}
