//! Jump data of the reduced Riemann–Hilbert problems in z (at fixed t = 0) and in t (at z = 0).

use crate::algebra::{lambda, Mat2, C64, I};
use crate::spectral::{derived_quantities, require, JumpSample, Ray, SpectralData, SpectralError, DIVISION_FLOOR};

/// G^(z) = (1, −δe^{2iλz}; −δ*e^{−2iλz}, 1 + δδ*) at every sample on the real-λ contour.
pub fn assemble_x_rhp(data: &SpectralData, z: f64) -> Result<Vec<JumpSample>, SpectralError> {
    data.points
        .iter()
        .map(|p| {
            let d = derived_quantities(p, 1.0);
            let (dl, ds) = (require(d.delta, "delta")?, require(d.delta_star, "delta*")?);
            let l = lambda(p.k);
            let e = (I * l * (2.0 * z)).exp();
            let ray = if l.re >= 0.0 { Ray::Zero } else { Ray::Pi };
            let one = C64::new(1.0, 0.0);
            Ok(JumpSample { ray, k: p.k, g: Mat2::new(one, -dl * e, -ds / e, one + dl * ds) })
        })
        .collect()
}

/// G^(t) = (1/(UU*), −(V/U)e^{−4iλ²t}; −(V*/U*)e^{4iλ²t}, 1) on the real-λ² contour.
pub fn assemble_t_rhp(data: &SpectralData, t: f64) -> Result<Vec<JumpSample>, SpectralError> {
    data.points
        .iter()
        .map(|p| {
            let (u, us) = (require(p.big_u, "U")?, require(p.big_u_star, "U*")?);
            let (v, vs) = (require(p.big_v, "V")?, require(p.big_v_star, "V*")?);
            if u.norm() <= DIVISION_FLOOR || us.norm() <= DIVISION_FLOOR {
                return Err(SpectralError::DivisionFloor("U"));
            }
            let l = lambda(p.k);
            let e = (I * l * l * (4.0 * t)).exp();
            let ray = if l.re.abs() >= l.im.abs() {
                if l.re >= 0.0 { Ray::Zero } else { Ray::Pi }
            } else if l.im >= 0.0 {
                Ray::HalfPi
            } else {
                Ray::ThreeHalfPi
            };
            let one = C64::new(1.0, 0.0);
            Ok(JumpSample { ray, k: p.k, g: Mat2::new(one / (u * us), -v / (u * e), -vs * e / us, one) })
        })
        .collect()
}
