//! The global relation linking initial and boundary spectral data.

use super::scattering::{compute_big_uv, compute_uv};
use super::SpectralError;
use crate::algebra::{lambda, C64, I};
use crate::numerics::integrate_complex;
use crate::potential::{BoundaryTrace, PotentialField};
use crate::volterra::{build_a1, column_z, unit, VolterraOptions};

/// c⁺(ς) = ∫₀^Z e^{−2iλζ} (A1 H3)₁₂(ζ, T, ς) dζ by composite fourth-order quadrature.
pub fn c_plus(field: &PotentialField, k: C64, opts: &VolterraOptions) -> Result<C64, SpectralError> {
    let slice = field.slice(field.grid.t_max).map_err(crate::volterra::VolterraError::from)?;
    let n = slice.r.len();
    let mut col = vec![[C64::new(0.0, 0.0); 2]; n];
    let mut filled = 0;
    column_z(&slice, k, 1, slice.z_max(), 0.0, unit(1), opts, |z, c| {
        let i = ((z / slice.dz).round() as usize).min(n - 1);
        col[i] = *c;
        filled += 1;
    })?;
    debug_assert_eq!(filled, n);
    let l = lambda(k);
    let f: Vec<C64> = (0..n)
        .map(|i| {
            let a = build_a1(slice.r[i], k, slice.theta[i]);
            let z = i as f64 * slice.dz;
            (-I * l * (2.0 * z)).exp() * (a.a11 * col[i][0] + a.a12 * col[i][1])
        })
        .collect();
    Ok(integrate_complex(&f, slice.dz))
}

/// u V − U v − e^{4iλ²T} c⁺ at ς, valid for Im λ ≤ 0 and Im λ² ≥ 0.
/// `trace` supplies the boundary data entering U and V, so a perturbed trace can
/// be checked against the unperturbed field.
pub fn global_relation_residual(
    field: &PotentialField,
    trace: &BoundaryTrace,
    k: C64,
    opts: &VolterraOptions,
) -> Result<C64, SpectralError> {
    let (u, v) = compute_uv(field, k, opts)?;
    let (bu, bv) = compute_big_uv(trace, k, opts)?;
    let l = lambda(k);
    let t = field.grid.t_max;
    Ok(u * bv - bu * v - (I * l * l * (4.0 * t)).exp() * c_plus(field, k, opts)?)
}
