//! Default ς-grids along the rays arg(ς² − ½) = const.

use super::jump::Ray;
use crate::algebra::C64;

pub const DEFAULT_POINTS_PER_RAY: usize = 256;
pub const DEFAULT_RHO_MAX: f64 = 50.0;

/// `n` points on `ray` with |λ| = ρ_max (j/n)², j = 1..=n, clustered toward λ = 0.
pub fn ray_grid(ray: Ray, n: usize, rho_max: f64) -> Vec<C64> {
    (1..=n).map(|j| ray.point(rho_max * (j as f64 / n as f64).powi(2))).collect()
}

/// Each point followed by its mirror −ς.
pub fn symmetric_grid(ks: &[C64]) -> Vec<C64> {
    ks.iter().flat_map(|&k| [k, -k]).collect()
}

/// All four rays, symmetrised, in a fixed order.
pub fn default_grid(n: usize, rho_max: f64) -> Vec<C64> {
    let one_sided: Vec<C64> = Ray::ALL.iter().flat_map(|&r| ray_grid(r, n, rho_max)).collect();
    symmetric_grid(&one_sided)
}
