//! Zeros of analytic spectral functions by the argument principle and Newton.

use super::SpectralError;
use crate::algebra::C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ZeroFamily {
    /// Zeros of u.
    Xi,
    /// Zeros of β.
    Mu,
    /// Zeros of U.
    Epsilon,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchBox {
    pub lo: C64,
    pub hi: C64,
}

impl SearchBox {
    pub fn new(lo: C64, hi: C64) -> Self {
        Self { lo, hi }
    }

    fn corners(&self) -> [C64; 4] {
        [self.lo, C64::new(self.hi.re, self.lo.im), self.hi, C64::new(self.lo.re, self.hi.im)]
    }

    fn center(&self) -> C64 {
        (self.lo + self.hi) * 0.5
    }

    fn diameter(&self) -> f64 {
        (self.hi - self.lo).norm()
    }

    fn contains(&self, z: C64) -> bool {
        z.re >= self.lo.re && z.re <= self.hi.re && z.im >= self.lo.im && z.im <= self.hi.im
    }

    // Off-centre split so that symmetric configurations do not land on a cut.
    fn quarters(&self) -> [SearchBox; 4] {
        let d = self.hi - self.lo;
        let m = self.lo + C64::new(d.re * 0.4871, d.im * 0.5129);
        [
            SearchBox::new(self.lo, m),
            SearchBox::new(C64::new(m.re, self.lo.im), C64::new(self.hi.re, m.im)),
            SearchBox::new(m, self.hi),
            SearchBox::new(C64::new(self.lo.re, m.im), C64::new(m.re, self.hi.im)),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Zero {
    pub location: C64,
    pub residual: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ZeroSet {
    pub family: Option<ZeroFamily>,
    /// Each zero is followed by its mirror −ζ.
    pub zeros: Vec<Zero>,
}

impl ZeroSet {
    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }
}

const MAX_SEGMENTS: usize = 1 << 16;

/// Unwrapped change of arg f along the straight segment a → b, divided by 2π.
fn arg_change<F: Fn(C64) -> C64>(f: &F, a: C64, b: C64, scale: f64) -> Result<f64, SpectralError> {
    let mut total = 0.0;
    let mut stack = vec![(a, f(a), b, f(b))];
    let mut used = 0;
    let floor = 1e-10 * scale;
    while let Some((p, fp, q, fq)) = stack.pop() {
        if fp.norm() < floor || fq.norm() < floor || !fp.is_finite() || !fq.is_finite() {
            return Err(SpectralError::WindingAmbiguous);
        }
        let d = (fq / fp).arg();
        if d.abs() < PI / 8.0 {
            total += d;
            continue;
        }
        used += 1;
        if used > MAX_SEGMENTS {
            return Err(SpectralError::WindingAmbiguous);
        }
        let m = (p + q) * 0.5;
        let fm = f(m);
        // second half pushed first so the first half is processed first
        stack.push((m, fm, q, fq));
        stack.push((p, fp, m, fm));
    }
    Ok(total / (2.0 * PI))
}

/// Winding number of f around the box boundary as a real number; an integer up to
/// quadrature error (zeros minus poles inside).
pub fn winding_number<F: Fn(C64) -> C64>(f: &F, b: &SearchBox, scale: f64) -> Result<f64, SpectralError> {
    let c = b.corners();
    let mut w = 0.0;
    for i in 0..4 {
        w += arg_change(f, c[i], c[(i + 1) % 4], scale)?;
    }
    Ok(w)
}

fn rounded(w: f64) -> Result<i64, SpectralError> {
    let n = w.round();
    if (w - n).abs() > 0.1 {
        return Err(SpectralError::WindingAmbiguous);
    }
    Ok(n as i64)
}

fn newton<F: Fn(C64) -> C64>(f: &F, z0: C64, tol: f64, h0: f64) -> Result<Zero, SpectralError> {
    let mut z = z0;
    for _ in 0..60 {
        let fz = f(z);
        if fz.norm() <= tol {
            return Ok(Zero { location: z, residual: fz.norm() });
        }
        let h = h0.min(1e-3 * z.norm().max(1e-3));
        let d = (f(z + 2.0 * h) * -1.0 + f(z + h) * 8.0 - f(z - h) * 8.0 + f(z - 2.0 * h)) / (12.0 * h);
        if d.norm() == 0.0 || !d.is_finite() {
            return Err(SpectralError::NonSimpleZero(z));
        }
        z -= fz / d;
        if !z.is_finite() {
            break;
        }
    }
    let fz = f(z);
    if fz.norm() <= tol {
        Ok(Zero { location: z, residual: fz.norm() })
    } else {
        Err(SpectralError::NewtonDivergence(z0))
    }
}

/// Zeros of f inside `b`, each refined to |f| ≤ 1e−10·scale and paired with −ζ.
/// f must be analytic and pole-free in the box.
pub fn find_zeros<F: Fn(C64) -> C64>(
    f: &F,
    b: &SearchBox,
    scale: f64,
    family: Option<ZeroFamily>,
) -> Result<ZeroSet, SpectralError> {
    let tol = 1e-10 * scale;
    let mut found: Vec<Zero> = Vec::new();
    let mut queue = vec![(*b, rounded(winding_number(f, b, scale)?)?)];
    while let Some((bx, n)) = queue.pop() {
        if n < 0 {
            return Err(SpectralError::WindingAmbiguous);
        }
        if n == 0 {
            continue;
        }
        let tiny = bx.diameter() < 1e-6 * b.diameter();
        if n == 1 {
            match newton(f, bx.center(), tol, bx.diameter() * 1e-3) {
                Ok(z) if bx.contains(z.location) => {
                    found.push(z);
                    continue;
                }
                Ok(_) | Err(SpectralError::NewtonDivergence(_)) if !tiny => {}
                Ok(_) => return Err(SpectralError::NewtonDivergence(bx.center())),
                Err(e) => return Err(e),
            }
        } else if tiny {
            return Err(SpectralError::NonSimpleZero(bx.center()));
        }
        for q in bx.quarters() {
            let w = winding_number(f, &q, scale).and_then(rounded)?;
            queue.push((q, w));
        }
    }
    found.sort_by(|a, b| a.location.re.total_cmp(&b.location.re).then(a.location.im.total_cmp(&b.location.im)));
    let mut zeros = Vec::with_capacity(2 * found.len());
    for z in found {
        let mirror = Zero { location: -z.location, residual: f(-z.location).norm() };
        zeros.push(z);
        zeros.push(mirror);
    }
    Ok(ZeroSet { family, zeros })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn planted(z0: C64) -> impl Fn(C64) -> C64 {
        move |k: C64| (k * k - z0 * z0) / (k * k + 1.0)
    }

    #[test]
    fn recovers_planted_zero() {
        let z0 = C64::new(0.8, 0.6);
        let f = planted(z0);
        let b = SearchBox::new(C64::new(0.1, 0.05), C64::new(1.7, 0.9));
        let set = find_zeros(&f, &b, 1.0, None).unwrap();
        assert_eq!(set.zeros.len(), 2);
        assert!((set.zeros[0].location - z0).norm() < 1e-10);
        assert!((set.zeros[1].location + z0).norm() < 1e-10);
    }

    #[test]
    fn empty_box_and_poles() {
        let f = planted(C64::new(0.8, 0.6));
        let b = SearchBox::new(C64::new(2.0, 2.0), C64::new(3.0, 3.0));
        assert!(find_zeros(&f, &b, 1.0, None).unwrap().is_empty());
        let around_pole = SearchBox::new(C64::new(-0.3, 0.8), C64::new(0.3, 1.3));
        assert!((winding_number(&f, &around_pole, 1.0).unwrap() + 1.0).abs() < 1e-9);
    }

    #[test]
    fn two_zeros_are_separated() {
        let f = |k: C64| (k - C64::new(0.3, 0.2)) * (k - C64::new(0.6, 0.7));
        let b = SearchBox::new(C64::new(0.0, 0.0), C64::new(1.0, 1.0));
        let set = find_zeros(&f, &b, 1.0, None).unwrap();
        assert_eq!(set.zeros.len(), 4);
    }

    #[test]
    fn boundary_zero_is_ambiguous() {
        let f = |k: C64| k - C64::new(0.5, 0.0);
        let b = SearchBox::new(C64::new(0.0, 0.0), C64::new(1.0, 1.0));
        assert!(matches!(winding_number(&f, &b, 1.0), Err(SpectralError::WindingAmbiguous)));
    }
}
