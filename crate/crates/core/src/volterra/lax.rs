//! Lax matrices of the gauge-transformed pair.
//!
//! With λ = ς² − ½ and R = (0 r; −r̄ 0) the untransformed pair is
//! Φ_z = (iλσ + A)Φ, Φ_t = (−2iλ²σ + B)Φ with A = ςR − (i/4)|r|²σ. Removing the
//! Θ gauge gives A1, B1, whose off-diagonals carry e^{∓2iθ}.

use crate::algebra::{Mat2, C64, I};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaxMatrices {
    pub a1: Mat2,
    pub b1: Mat2,
}

impl LaxMatrices {
    pub fn at(r: C64, rz: C64, k: C64, theta: f64) -> Self {
        Self { a1: build_a1(r, k, theta), b1: build_b1(r, rz, k, theta) }
    }
}

/// A1 = (−(i/2)|r|², ς r e^{−2iθ}; −ς r̄ e^{2iθ}, (i/2)|r|²).
pub fn build_a1(r: C64, k: C64, theta: f64) -> Mat2 {
    let g = C64::from_polar(1.0, -2.0 * theta);
    let d = I * (0.5 * r.norm_sqr());
    Mat2::new(-d, k * r * g, -(k * r.conj() * g.conj()), d)
}

/// B1: off-diagonals −2ς³r + ς(r + i r_z + ½|r|²r) (and the reflected (2,1) entry)
/// under the gauge factor, diagonal iς²|r|² − (i/4)|r|⁴ + ½(r̄r_z − r r̄_z) times σ.
pub fn build_b1(r: C64, rz: C64, k: C64, theta: f64) -> Mat2 {
    let g = C64::from_polar(1.0, -2.0 * theta);
    let a = r.norm_sqr();
    let k2 = k * k;
    let k3 = k2 * k;
    let cross = I * (r.conj() * rz).im; // ½(r̄r_z − r r̄_z)
    let d = I * a * k2 - I * (0.25 * a * a) + cross;
    let up = -k3 * r * 2.0 + k * (r + I * rz + r * (0.5 * a));
    let lo = k3 * r.conj() * 2.0 + k * (-r.conj() + I * rz.conj() - r.conj() * (0.5 * a));
    Mat2::new(d, up * g, lo * g.conj(), -d)
}

/// Untransformed z-part without the iλσ term: ςR − (i/4)|r|²σ.
pub fn build_a(r: C64, k: C64) -> Mat2 {
    let d = I * (0.25 * r.norm_sqr());
    Mat2::new(-d, k * r, -(k * r.conj()), d)
}

/// Untransformed t-part without the −2iλ²σ term.
pub fn build_b(r: C64, rz: C64, k: C64) -> Mat2 {
    let a = r.norm_sqr();
    let k2 = k * k;
    let k3 = k2 * k;
    let cross = I * (r.conj() * rz).im;
    let d = I * a * k2 - I * (0.125 * a * a) + cross * 0.5;
    let up = -k3 * r * 2.0 + k * (r + I * rz + r * (0.5 * a));
    let lo = k3 * r.conj() * 2.0 + k * (-r.conj() + I * rz.conj() - r.conj() * (0.5 * a));
    Mat2::new(d, up, lo, -d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn examples() {
        assert_eq!(build_a1(c(0.0, 0.0), c(1.3, 0.2), 0.7), Mat2::zero());
        assert_eq!(build_b1(c(0.0, 0.0), c(0.0, 0.0), c(1.3, 0.2), 0.7), Mat2::zero());
        let m = build_a1(c(1.0, 0.0), c(1.0, 0.0), 0.0);
        let expect = Mat2::new(c(0.0, -0.5), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.5));
        assert!((m - expect).max_abs() < 1e-16);
        let (a, k) = (0.7, 1.3);
        let b = build_b1(c(a, 0.0), c(0.0, 0.0), c(k, 0.0), 0.0);
        assert!((b.a12 - c(-2.0 * k * k * k * a + k * (a + 0.5 * a * a * a), 0.0)).norm() < 1e-14);
        assert!((b.a11 - c(0.0, k * k * a * a - 0.25 * a.powi(4))).norm() < 1e-14);
    }

    proptest! {
        #[test]
        fn traceless_and_parity(re in -2.0..2.0f64, im in -2.0..2.0f64, p in -2.0..2.0f64, q in -2.0..2.0f64,
                                kr in -3.0..3.0f64, ki in -3.0..3.0f64, th in -5.0..5.0f64) {
            let (r, rz, k) = (c(re, im), c(p, q), c(kr, ki));
            let s = Mat2::sigma3();
            for m in [build_a1(r, k, th), build_b1(r, rz, k, th)] {
                prop_assert!(m.trace().norm() < 1e-12);
            }
            prop_assert_eq!(build_a1(r, -k, th), s * build_a1(r, k, th) * s);
            let lhs = build_b1(r, rz, -k, th);
            let rhs = s * build_b1(r, rz, k, th) * s;
            prop_assert!((lhs - rhs).max_abs() <= 1e-12 * (1.0 + rhs.max_abs()));
        }

        #[test]
        fn gauge_relation(re in -2.0..2.0f64, im in -2.0..2.0f64, p in -2.0..2.0f64, q in -2.0..2.0f64,
                          kr in -3.0..3.0f64, ki in -3.0..3.0f64, th in -5.0..5.0f64) {
            // A1 = e^{−iθσ̂}A − iΘ₁σ and B1 = e^{−iθσ̂}B − iΘ₂σ
            let (r, rz, k) = (c(re, im), c(p, q), c(kr, ki));
            let dens = crate::algebra::theta_density(r, rz);
            let s = Mat2::sigma3();
            let a1 = crate::algebra::sigma_conj(c(0.0, -th), &build_a(r, k)).unwrap() - s * (I * dens.theta1);
            prop_assert!((a1 - build_a1(r, k, th)).max_abs() < 1e-12);
            let b1 = crate::algebra::sigma_conj(c(0.0, -th), &build_b(r, rz, k)).unwrap() - s * (I * dens.theta2);
            let got = build_b1(r, rz, k, th);
            prop_assert!((b1 - got).max_abs() <= 1e-12 * (1.0 + got.max_abs()));
        }
    }
}
