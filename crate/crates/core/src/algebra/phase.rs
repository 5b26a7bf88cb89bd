//! Spectral phases and the four-region partition of the ς-plane.

use super::mat2::{Mat2, C64, I};
use serde::{Deserialize, Serialize};
use std::fmt;

/// λ = ς² − ½, the variable in which the phases are polynomial.
#[inline]
pub fn lambda(k: C64) -> C64 {
    k * k - 0.5
}

/// φ(ς) = iλ.
#[inline]
pub fn phase_phi(k: C64) -> C64 {
    I * lambda(k)
}

/// ψ(ς) = 2iλ².
#[inline]
pub fn phase_psi(k: C64) -> C64 {
    let l = lambda(k);
    I * l * l * 2.0
}

/// η(ς; z, t) = −λz + 2λ²t.
#[inline]
pub fn phase_eta(k: C64, z: f64, t: f64) -> C64 {
    let l = lambda(k);
    -l * z + l * l * (2.0 * t)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhasePair {
    pub phi: C64,
    pub psi: C64,
}

impl PhasePair {
    pub fn at(k: C64) -> Self {
        Self { phi: phase_phi(k), psi: phase_psi(k) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    D1,
    D2,
    D3,
    D4,
    Boundary,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Region::D1 => "D1",
            Region::D2 => "D2",
            Region::D3 => "D3",
            Region::D4 => "D4",
            Region::Boundary => "Boundary",
        };
        f.write_str(s)
    }
}

/// Scale-aware default tolerance for [`region_of`].
pub fn default_region_tol(k: C64) -> f64 {
    1e-12 * k.norm_sqr().max(1.0)
}

/// Classifies ς by the signs of Re φ and Re ψ.
pub fn region_of(k: C64, tol: f64) -> Region {
    let p = PhasePair::at(k);
    let (a, b) = (p.phi.re, p.psi.re);
    if a > tol && b > tol {
        Region::D1
    } else if a > tol && b < -tol {
        Region::D2
    } else if a < -tol && b < -tol {
        Region::D3
    } else if a < -tol && b > tol {
        Region::D4
    } else {
        Region::Boundary
    }
}

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
#[error("exponent 2x = {0:e} overflows double precision")]
pub struct Overflow(pub f64);

/// e^{xσ̂}M = e^{xσ} M e^{−xσ}: scales (1,2) by e^{2x} and (2,1) by e^{−2x}.
pub fn sigma_conj(x: C64, m: &Mat2) -> Result<Mat2, Overflow> {
    let two_x = x * 2.0;
    if two_x.re.abs() > 709.0 {
        return Err(Overflow(two_x.re));
    }
    let e = two_x.exp();
    let ei = (-two_x).exp();
    Ok(Mat2::new(m.a11, m.a12 * e, m.a21 * ei, m.a22))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mat2::ONE;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn phase_examples() {
        assert!(close(phase_phi(c(0.0, 0.0)), c(0.0, -0.5), 1e-15));
        assert!(close(phase_phi(c(1.0, 0.0)), c(0.0, 0.5), 1e-15));
        assert!(close(phase_phi(c(1.0, 0.5)), c(-1.0, 0.25), 1e-15));
        assert!(close(phase_psi(c(0.0, 0.0)), c(0.0, 0.5), 1e-15));
        assert!(close(phase_psi(c(1.0, 0.0)), c(0.0, 0.5), 1e-15));
        assert!(close(phase_psi(c(1.0, 0.5)), c(-1.0, -1.875), 1e-15));
    }

    #[test]
    fn eta_examples() {
        assert_eq!(phase_eta(c(0.7, 0.2), 0.0, 0.0), c(0.0, 0.0));
        let half = c(0.5f64.sqrt(), 0.0);
        assert!(phase_eta(half, 3.0, 2.0).norm() < 1e-15);
        assert!(close(phase_eta(ONE, 2.0, 1.0), c(-0.5, 0.0), 1e-15));
    }

    #[test]
    fn region_examples() {
        let tol = |k| default_region_tol(k);
        let k = c(1.2, 0.0);
        assert_eq!(region_of(k, tol(k)), Region::Boundary);
        let k = c(1.0, 0.5);
        assert_eq!(region_of(k, tol(k)), Region::D3);
        let k = c(0.3, 0.05);
        assert_eq!(region_of(k, tol(k)), Region::D4);
        let p = PhasePair::at(k);
        assert!((p.phi.re + 0.03).abs() < 1e-15);
        assert!((p.psi.re - 0.0495).abs() < 1e-15);
    }

    #[test]
    fn sigma_conj_examples() {
        let m = Mat2::new(c(1.0, 2.0), c(3.0, 0.0), c(0.0, -1.0), c(4.0, 1.0));
        assert_eq!(sigma_conj(c(0.0, 0.0), &m).unwrap(), m);
        let d = Mat2::diag(c(2.0, 1.0), c(-1.0, 0.5));
        assert_eq!(sigma_conj(c(0.3, -2.0), &d).unwrap(), d);
        let n = Mat2::new(c(0.0, 0.0), ONE, c(0.0, 0.0), c(0.0, 0.0));
        let got = sigma_conj(c(2f64.ln() / 2.0, 0.0), &n).unwrap();
        assert!(close(got.a12, c(2.0, 0.0), 1e-15));
        assert!(sigma_conj(c(400.0, 0.0), &n).is_err());
    }

    fn arb_c(r: f64) -> impl Strategy<Value = C64> {
        (-r..r, -r..r).prop_map(|(a, b)| C64::new(a, b))
    }

    fn arb_m() -> impl Strategy<Value = Mat2> {
        (arb_c(2.0), arb_c(2.0), arb_c(2.0), arb_c(2.0)).prop_map(|(a, b, c, d)| Mat2::new(a, b, c, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn phases_are_even(k in arb_c(10.0)) {
            prop_assert_eq!(phase_phi(-k), phase_phi(k));
            prop_assert_eq!(phase_psi(-k), phase_psi(k));
        }

        #[test]
        fn region_matches_signs(k in arb_c(3.0)) {
            let tol = default_region_tol(k);
            let r = region_of(k, tol);
            let a = -lambda(k).im;
            let b = -4.0 * lambda(k).re * lambda(k).im;
            let expect = match (a.abs() > tol && b.abs() > tol, a > 0.0, b > 0.0) {
                (false, _, _) => Region::Boundary,
                (true, true, true) => Region::D1,
                (true, true, false) => Region::D2,
                (true, false, false) => Region::D3,
                (true, false, true) => Region::D4,
            };
            prop_assert_eq!(r, expect);
        }
    }

    proptest! {
        #[test]
        fn sigma_conj_multiplicative(x in arb_c(1.5), m in arb_m(), n in arb_m()) {
            let lhs = sigma_conj(x, &(m * n)).unwrap();
            let rhs = sigma_conj(x, &m).unwrap() * sigma_conj(x, &n).unwrap();
            let scale = 1.0 + lhs.max_abs();
            prop_assert!((lhs - rhs).max_abs() <= 1e-12 * scale);
            let d0 = m.det();
            let d1 = sigma_conj(x, &m).unwrap().det();
            prop_assert!((d0 - d1).norm() <= 1e-12 * (1.0 + d0.norm() + m.max_abs().powi(2)));
        }

        #[test]
        fn sigma_conj_inverts(x in arb_c(1.5), m in arb_m()) {
            let back = sigma_conj(x, &sigma_conj(-x, &m).unwrap()).unwrap();
            prop_assert!((back - m).max_abs() <= 1e-14 * (1.0 + m.max_abs()) * 30.0);
        }
    }
}
