//! Complex 2×2 matrices.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

pub type C64 = Complex64;

/// A column vector of two complex entries.
pub type Col2 = [C64; 2];

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mat2 {
    pub a11: C64,
    pub a12: C64,
    pub a21: C64,
    pub a22: C64,
}

impl Mat2 {
    pub const fn new(a11: C64, a12: C64, a21: C64, a22: C64) -> Self {
        Self { a11, a12, a21, a22 }
    }

    pub const fn identity() -> Self {
        Self::new(ONE, ZERO, ZERO, ONE)
    }

    pub const fn zero() -> Self {
        Self::new(ZERO, ZERO, ZERO, ZERO)
    }

    /// Pauli matrix σ₃ = diag(1, −1).
    pub const fn sigma3() -> Self {
        Self::new(ONE, ZERO, ZERO, C64::new(-1.0, 0.0))
    }

    pub fn diag(d1: C64, d2: C64) -> Self {
        Self::new(d1, ZERO, ZERO, d2)
    }

    pub fn from_cols(c1: Col2, c2: Col2) -> Self {
        Self::new(c1[0], c2[0], c1[1], c2[1])
    }

    pub fn col(&self, j: usize) -> Col2 {
        match j {
            0 => [self.a11, self.a21],
            1 => [self.a12, self.a22],
            _ => panic!("column index {j} out of range"),
        }
    }

    pub fn det(&self) -> C64 {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    pub fn trace(&self) -> C64 {
        self.a11 + self.a22
    }

    /// Inverse, or `None` for an exactly singular matrix.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d == ZERO {
            return None;
        }
        let s = d.inv();
        Some(Self::new(self.a22 * s, -self.a12 * s, -self.a21 * s, self.a11 * s))
    }

    pub fn conj_transpose(&self) -> Self {
        Self::new(self.a11.conj(), self.a21.conj(), self.a12.conj(), self.a22.conj())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::new(self.a11 * s, self.a12 * s, self.a21 * s, self.a22 * s)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    pub fn apply(&self, v: Col2) -> Col2 {
        [self.a11 * v[0] + self.a12 * v[1], self.a21 * v[0] + self.a22 * v[1]]
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.a11.norm().max(self.a12.norm()).max(self.a21.norm()).max(self.a22.norm())
    }

    pub fn is_finite(&self) -> bool {
        [self.a11, self.a12, self.a21, self.a22].iter().all(|z| z.is_finite())
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> [C64; 4] {
        [self.a11, self.a12, self.a21, self.a22]
    }
}

impl Default for Mat2 {
    fn default() -> Self {
        Self::identity()
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, b: Mat2) -> Mat2 {
        Mat2::new(
            self.a11 * b.a11 + self.a12 * b.a21,
            self.a11 * b.a12 + self.a12 * b.a22,
            self.a21 * b.a11 + self.a22 * b.a21,
            self.a21 * b.a12 + self.a22 * b.a22,
        )
    }
}

impl Mul<C64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: C64) -> Mat2 {
        self.scale(s)
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: f64) -> Mat2 {
        Mat2::new(self.a11 * s, self.a12 * s, self.a21 * s, self.a22 * s)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, b: Mat2) -> Mat2 {
        Mat2::new(self.a11 + b.a11, self.a12 + b.a12, self.a21 + b.a21, self.a22 + b.a22)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, b: Mat2) -> Mat2 {
        Mat2::new(self.a11 - b.a11, self.a12 - b.a12, self.a21 - b.a21, self.a22 - b.a22)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2::new(-self.a11, -self.a12, -self.a21, -self.a22)
    }
}

/// Exact exponential of a 2×2 matrix.
///
/// Splits `m = τI + N` with `N` traceless, so `exp(m) = e^τ (cosh μ I + sinh μ/μ N)`
/// where `μ² = −det N`. Returns `None` if any exponent leaves the double range.
pub fn expm(m: &Mat2) -> Option<Mat2> {
    if m.a12 == ZERO && m.a21 == ZERO {
        return Some(Mat2::diag(exp_checked(m.a11)?, exp_checked(m.a22)?));
    }
    let tau = m.trace() * 0.5;
    let n = Mat2::new(m.a11 - tau, m.a12, m.a21, m.a22 - tau);
    let mu2 = n.a11 * n.a11 + n.a12 * n.a21;
    let mu = mu2.sqrt();
    let (c, s) = if mu.norm() < 1e-3 {
        // series for cosh μ and sinh μ / μ
        let c = ONE + mu2 * (0.5 + mu2 * (1.0 / 24.0 + mu2 * (1.0 / 720.0 + mu2 / 40320.0)));
        let s = ONE + mu2 * (1.0 / 6.0 + mu2 * (1.0 / 120.0 + mu2 * (1.0 / 5040.0 + mu2 / 362880.0)));
        let e = exp_checked(tau)?;
        (c * e, s * e)
    } else {
        let ep = exp_checked(tau + mu)?;
        let em = exp_checked(tau - mu)?;
        ((ep + em) * 0.5, (ep - em) / (mu * 2.0))
    };
    Some(Mat2::new(c + s * n.a11, s * n.a12, s * n.a21, c + s * n.a22))
}

/// `e^z`, or `None` when the real part would overflow.
pub fn exp_checked(z: C64) -> Option<C64> {
    if z.re > 700.0 {
        None
    } else {
        Some(z.exp())
    }
}
