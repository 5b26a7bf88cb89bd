//! The closed 1-form Θ = Θ₁ dz + Θ₂ dt that carries the gauge phase.

use super::mat2::C64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct ThetaDensity {
    pub theta1: f64,
    pub theta2: f64,
}

/// Θ₁ = |r|²/4 and Θ₂ = |r|⁴/8 + (i/4)(r̄r_z − r r̄_z).
///
/// The bracket r̄r_z − r r̄_z = 2i Im(r̄ r_z) is purely imaginary, so Θ₂ is
/// evaluated in the manifestly real form |r|⁴/8 − Im(r̄ r_z)/2.
pub fn theta_density(r: C64, rz: C64) -> ThetaDensity {
    let a = r.norm_sqr();
    ThetaDensity { theta1: 0.25 * a, theta2: 0.125 * a * a - 0.5 * (r.conj() * rz).im }
}

/// Flux of the conservation law (|r|²)_t = ∂_z F.
pub fn conserved_flux(r: C64, rz: C64) -> f64 {
    let a = r.norm_sqr();
    0.5 * a * a - 2.0 * (r.conj() * rz).im
}
