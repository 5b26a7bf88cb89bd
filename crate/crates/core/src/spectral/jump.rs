//! Jump matrices of E across the four rays arg(ς² − ½) ∈ {0, π/2, π, 3π/2}.
//!
//! On each ray E₋ = E₊·G, where E₊ is the branch from D2 or D3 and E₋ the one
//! from D1 or D4.

use super::scattering::{derived_quantities, require, SpectralPoint};
use super::SpectralError;
use crate::algebra::{lambda, Mat2, Region, C64, I};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ray {
    /// arg λ = 0, between D3 and D1.
    Zero,
    /// arg λ = π/2, between D3 and D4.
    HalfPi,
    /// arg λ = π, between D2 and D4.
    Pi,
    /// arg λ = 3π/2, between D2 and D1.
    ThreeHalfPi,
}

impl Ray {
    pub const ALL: [Ray; 4] = [Ray::Zero, Ray::HalfPi, Ray::Pi, Ray::ThreeHalfPi];

    pub fn angle(self) -> f64 {
        match self {
            Ray::Zero => 0.0,
            Ray::HalfPi => 0.5 * PI,
            Ray::Pi => PI,
            Ray::ThreeHalfPi => 1.5 * PI,
        }
    }

    /// (plus side, minus side).
    pub fn sides(self) -> (Region, Region) {
        match self {
            Ray::Zero => (Region::D3, Region::D1),
            Ray::HalfPi => (Region::D3, Region::D4),
            Ray::Pi => (Region::D2, Region::D4),
            Ray::ThreeHalfPi => (Region::D2, Region::D1),
        }
    }

    /// Conventional label: G1 and G3 are the triangular jumps, G4 the one carrying
    /// δ alone and G2 their composite.
    pub fn label(self) -> &'static str {
        match self {
            Ray::ThreeHalfPi => "G1",
            Ray::Zero => "G2",
            Ray::HalfPi => "G3",
            Ray::Pi => "G4",
        }
    }

    /// Point ς on the ray with |λ| = rho, in the right half ς-plane.
    pub fn point(self, rho: f64) -> C64 {
        (C64::from_polar(rho, self.angle()) + 0.5).sqrt()
    }
}

/// e^{2iη} with η = −λz + 2λ²t.
fn phase(k: C64, z: f64, t: f64) -> C64 {
    (I * 2.0 * crate::algebra::phase_eta(k, z, t)).exp()
}

/// G on `ray` at (z, t, ς).
pub fn jump_matrix(ray: Ray, z: f64, t: f64, spec: &SpectralPoint, beta_sign: f64) -> Result<Mat2, SpectralError> {
    let k = spec.k;
    let d = derived_quantities(spec, beta_sign);
    let e = phase(k, z, t);
    let one = C64::new(1.0, 0.0);
    Ok(match ray {
        Ray::ThreeHalfPi => Mat2::new(one, C64::new(0.0, 0.0), require(d.cap_delta, "Delta")? * e, one),
        Ray::HalfPi => Mat2::new(one, require(d.cap_delta_star, "Delta*")? / e, C64::new(0.0, 0.0), one),
        Ray::Pi => {
            let (dl, ds) = (require(d.delta, "delta")?, require(d.delta_star, "delta*")?);
            Mat2::new(one, -dl / e, -ds * e, one + dl * ds)
        }
        Ray::Zero => {
            let g = |x: Option<C64>, w| require(x, w);
            let (u, v, us, vs) = (g(spec.u, "u")?, g(spec.v, "v")?, g(spec.u_star, "u*")?, g(spec.v_star, "v*")?);
            let (bu, bv, bus, bvs) =
                (g(spec.big_u, "U")?, g(spec.big_v, "V")?, g(spec.big_u_star, "U*")?, g(spec.big_v_star, "V*")?);
            let (b, bs) = (require(d.beta, "beta")?, require(d.beta_star, "beta*")?);
            if (b * bs).norm() <= super::DIVISION_FLOOR {
                return Err(SpectralError::DivisionFloor("beta"));
            }
            Mat2::new(
                (bu * bus + bv * bvs) / (b * bs),
                (bu * v - bv * u) / (bs * e),
                (bus * vs - bvs * us) * e / b,
                u * us + v * vs,
            )
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JumpSample {
    pub ray: Ray,
    pub k: C64,
    pub g: Mat2,
}

/// Jump samples on the contour at fixed (z, t).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RhpData {
    pub z: f64,
    pub t: f64,
    pub jumps: Vec<JumpSample>,
    pub residues: Vec<super::Residue>,
}

impl RhpData {
    /// Largest |det G − 1| over the samples.
    pub fn max_det_error(&self) -> f64 {
        self.jumps.iter().fold(0.0, |a, j| a.max((j.g.det() - 1.0).norm()))
    }
}

/// Which ray, if any, ς lies on (to relative tolerance `tol` in arg λ).
pub fn ray_of(k: C64, tol: f64) -> Option<Ray> {
    let l = lambda(k);
    Ray::ALL.into_iter().find(|r| {
        let d = (l.arg() - r.angle()).rem_euclid(2.0 * PI);
        d.min(2.0 * PI - d) <= tol
    })
}
