//! Fourth-order steppers for single eigenfunction columns.
//!
//! A column m of H obeys m' = (D + K(s)) m where D is a constant diagonal
//! (the λ-dependent shift left after removing e^{±E}) and K is A1 or B1. Both
//! steppers treat D exactly, so large |λ| never enters the state:
//! Magnus puts it inside the 2×2 exponential, ETD-RK4 integrates it through
//! scalar φ-functions and keeps the slaved component accurate when |hD| ≫ 1.

use super::VolterraError;
use crate::algebra::{expm, Col2, Mat2, C64};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    Magnus4,
    Etd4,
}

const GAUSS_OFFSET: f64 = 0.288_675_134_594_812_9; // √3/6
const COMM_WEIGHT: f64 = 0.144_337_567_297_406_43; // √3/12

/// One step of length `h` (may be negative) from `s`.
#[inline]
pub fn magnus_step<F>(coeff: &F, diag: &Mat2, s: f64, h: f64, m: Col2) -> Option<Col2>
where
    F: Fn(f64) -> Mat2,
{
    let k1 = *diag + coeff(s + (0.5 - GAUSS_OFFSET) * h);
    let k2 = *diag + coeff(s + (0.5 + GAUSS_OFFSET) * h);
    let omega = (k1 + k2) * (0.5 * h) + k2.commutator(&k1) * (COMM_WEIGHT * h * h);
    Some(expm(&omega)?.apply(m))
}

/// Taylor coefficients of φ-type functions used by ETD-RK4.
const P1: [f64; 12] = [
    1.0 / 2.0, 1.0 / 8.0, 1.0 / 48.0, 1.0 / 384.0, 1.0 / 3840.0, 1.0 / 46080.0, 1.0 / 645120.0, 1.0 / 10321920.0,
    1.0 / 185794560.0, 1.0 / 3715891200.0, 1.0 / 81749606400.0, 1.0 / 1961990553600.0,
];
const F1: [f64; 12] = [
    1.0 / 6.0, 1.0 / 6.0, 3.0 / 40.0, 1.0 / 45.0, 5.0 / 1008.0, 1.0 / 1120.0, 7.0 / 51840.0, 1.0 / 56700.0,
    1.0 / 492800.0, 1.0 / 4790016.0, 11.0 / 566092800.0, 1.0 / 605404800.0,
];
const F2: [f64; 12] = [
    1.0 / 6.0, 1.0 / 12.0, 1.0 / 40.0, 1.0 / 180.0, 1.0 / 1008.0, 1.0 / 6720.0, 1.0 / 51840.0, 1.0 / 453600.0,
    1.0 / 4435200.0, 1.0 / 47900160.0, 1.0 / 566092800.0, 1.0 / 7264857600.0,
];
const F3: [f64; 12] = [
    1.0 / 6.0, 0.0, -1.0 / 120.0, -1.0 / 360.0, -1.0 / 1680.0, -1.0 / 10080.0, -1.0 / 72576.0, -1.0 / 604800.0,
    -1.0 / 5702400.0, -1.0 / 59875200.0, -1.0 / 691891200.0, -1.0 / 8717829120.0,
];

fn series(c: &[f64; 12], z: C64) -> C64 {
    c.iter().rev().fold(C64::new(0.0, 0.0), |acc, &a| acc * z + a)
}

/// e^z, e^{z/2} and the ETD-RK4 weights for one diagonal entry z = d·h.
#[derive(Clone, Copy)]
struct EtdWeights {
    e: C64,
    e2: C64,
    p1: C64,
    f1: C64,
    f2: C64,
    f3: C64,
}

impl EtdWeights {
    fn new(z: C64) -> Option<Self> {
        if z.re > 700.0 {
            return None;
        }
        let e = z.exp();
        let e2 = (z * 0.5).exp();
        if z.norm() < 0.5 {
            return Some(Self { e, e2, p1: series(&P1, z), f1: series(&F1, z), f2: series(&F2, z), f3: series(&F3, z) });
        }
        let z2 = z * z;
        let z3 = z2 * z;
        Some(Self {
            e,
            e2,
            p1: (e2 - 1.0) / z,
            f1: (-4.0 - z + e * (4.0 - z * 3.0 + z2)) / z3,
            f2: (2.0 + z + e * (z - 2.0)) / z3,
            f3: (-4.0 - z * 3.0 - z2 + e * (4.0 - z)) / z3,
        })
    }
}

/// One ETD-RK4 (Cox–Matthews) step of length `h` from `s`.
#[inline]
pub fn etd_step<F>(coeff: &F, diag: &Mat2, s: f64, h: f64, m: Col2) -> Option<Col2>
where
    F: Fn(f64) -> Mat2,
{
    let w = [EtdWeights::new(diag.a11 * h)?, EtdWeights::new(diag.a22 * h)?];
    let k0 = coeff(s);
    let kh = coeff(s + 0.5 * h);
    let k1 = coeff(s + h);
    let n0 = k0.apply(m);
    let mut a = [C64::new(0.0, 0.0); 2];
    for j in 0..2 {
        a[j] = w[j].e2 * m[j] + w[j].p1 * n0[j] * h;
    }
    let na = kh.apply(a);
    let mut b = [C64::new(0.0, 0.0); 2];
    for j in 0..2 {
        b[j] = w[j].e2 * m[j] + w[j].p1 * na[j] * h;
    }
    let nb = kh.apply(b);
    let mut c = [C64::new(0.0, 0.0); 2];
    for j in 0..2 {
        c[j] = w[j].e2 * a[j] + w[j].p1 * (nb[j] * 2.0 - n0[j]) * h;
    }
    let nc = k1.apply(c);
    let mut out = [C64::new(0.0, 0.0); 2];
    for j in 0..2 {
        out[j] = w[j].e * m[j] + (w[j].f1 * n0[j] + w[j].f2 * (na[j] + nb[j]) * 2.0 + w[j].f3 * nc[j]) * h;
    }
    Some(out)
}

/// Integrates from `from` to `to` over cells of width `cell` aligned at 0,
/// with `sub` Magnus steps per cell. `visit(s, m)` sees every cell node.
#[allow(clippy::too_many_arguments)]
pub fn propagate<F, V>(
    scheme: Scheme,
    coeff: &F,
    diag: &Mat2,
    from: f64,
    to: f64,
    cell: f64,
    sub: usize,
    m0: Col2,
    growth_limit: f64,
    mut visit: V,
) -> Result<Col2, VolterraError>
where
    F: Fn(f64) -> Mat2,
    V: FnMut(f64, &Col2),
{
    let mut m = m0;
    visit(from, &m);
    if from == to {
        return Ok(m);
    }
    let dir = if to > from { 1.0 } else { -1.0 };
    // breakpoints: cell nodes strictly between the endpoints
    let q_from = from / cell;
    let q_to = to / cell;
    let snap = |q: f64| if (q - q.round()).abs() < 1e-9 { q.round() } else { q };
    let (q_from, q_to) = (snap(q_from), snap(q_to));
    let mut nodes = Vec::new();
    if dir > 0.0 {
        let mut j = q_from.floor() + 1.0;
        while j < q_to {
            nodes.push(j * cell);
            j += 1.0;
        }
    } else {
        let mut j = q_from.ceil() - 1.0;
        while j > q_to {
            nodes.push(j * cell);
            j -= 1.0;
        }
    }
    nodes.push(to);
    let mut s = from;
    for &next in &nodes {
        let len = next - s;
        let n = ((len.abs() / cell * sub as f64).ceil() as usize).max(1);
        let h = len / n as f64;
        for j in 0..n {
            let sj = s + j as f64 * h;
            let next = match scheme {
                Scheme::Magnus4 => magnus_step(coeff, diag, sj, h, m),
                Scheme::Etd4 => etd_step(coeff, diag, sj, h, m),
            };
            m = next.ok_or(VolterraError::RegionViolation { at: sj })?;
        }
        s = next;
        let size = m[0].norm().max(m[1].norm());
        if !(size <= growth_limit) {
            return Err(VolterraError::RegionViolation { at: s });
        }
        visit(s, &m);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{C64, ONE, ZERO};

    #[test]
    fn constant_coefficients_are_exact() {
        let a = Mat2::new(C64::new(0.1, 0.3), C64::new(0.5, 0.0), C64::new(-0.5, 0.2), C64::new(-0.1, -0.3));
        let d = Mat2::diag(ZERO, C64::new(0.0, -4.0));
        let got = propagate(Scheme::Magnus4, &|_| a, &d, 0.0, 1.0, 0.25, 1, [ONE, ZERO], 1e10, |_, _| {}).unwrap();
        let expect = expm(&(a + d)).unwrap().apply([ONE, ZERO]);
        assert!((got[0] - expect[0]).norm() < 1e-13 && (got[1] - expect[1]).norm() < 1e-13);
    }

    #[test]
    fn fourth_order_on_variable_coefficients() {
        // m' = s·N m with nilpotent N has the closed form m = (I + s²/2 N) m0
        let n = Mat2::new(ZERO, ONE, ZERO, ZERO);
        let coeff = |s: f64| n * s + Mat2::new(ZERO, ZERO, C64::new(0.3 * s.sin(), 0.0), ZERO);
        let d = Mat2::diag(ZERO, C64::new(-0.5, 2.0));
        for scheme in [Scheme::Magnus4, Scheme::Etd4] {
            let run = |sub| propagate(scheme, &coeff, &d, 0.0, 2.0, 0.5, sub, [ONE, ONE], 1e10, |_, _| {}).unwrap();
            let reference = run(256);
            let e1 = (run(4)[0] - reference[0]).norm();
            let e2 = (run(8)[0] - reference[0]).norm();
            assert!(e1 / e2 > 13.0, "{scheme:?} ratio {}", e1 / e2);
        }
    }

    #[test]
    fn etd_is_accurate_when_stiff() {
        // m2' = −Λ m2 + g(s) m1 with m1 ≡ 1: slaved solution m2 ≈ g/Λ − g'/Λ² + g''/Λ³
        let lam = 1e4;
        let g = |s: f64| (2.0 * s).sin();
        let coeff = |s: f64| Mat2::new(ZERO, ZERO, C64::new(g(s), 0.0), ZERO);
        let d = Mat2::diag(ZERO, C64::new(-lam, 0.0));
        let m = propagate(Scheme::Etd4, &coeff, &d, 0.0, 1.0, 0.1, 4, [ONE, ZERO], 1e10, |_, _| {}).unwrap();
        let gp = 2.0 * 2f64.cos();
        let expect = g(1.0) / lam - gp / (lam * lam) - 4.0 * g(1.0) / lam.powi(3);
        assert!((m[1].re - expect).abs() < 5e-8 * expect.abs(), "{} vs {}", m[1].re, expect);
    }

    #[test]
    fn etd_weights_are_continuous() {
        for z in [C64::new(0.49, 0.1), C64::new(-0.3, 0.39)] {
            let a = EtdWeights::new(z).unwrap();
            let b = EtdWeights::new(z * 1.03).unwrap();
            assert!((a.f1 - b.f1).norm() < 0.02 && (a.f3 - b.f3).norm() < 0.02);
            let zz = z * 1.03;
            let exact_f2 = (2.0 + zz + zz.exp() * (zz - 2.0)) / (zz * zz * zz);
            assert!((b.f2 - exact_f2).norm() < 1e-13);
        }
    }

    #[test]
    fn backward_visits_nodes() {
        let mut seen = Vec::new();
        propagate(Scheme::Etd4, &|_| Mat2::zero(), &Mat2::zero(), 1.0, 0.3, 0.25, 1, [ONE, ZERO], 1e10, |s, _| seen.push(s)).unwrap();
        assert_eq!(seen, vec![1.0, 0.75, 0.5, 0.3]);
    }
}
