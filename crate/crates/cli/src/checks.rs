//! Invariant measurements shared by `verify` and the acceptance harness.
//! Each returns the worst deviation found.

use fokas_core::algebra::{lambda, C64};
use fokas_core::potential::PotentialField;
use fokas_core::spectral::{
    evaluate_e_in, global_relation_residual, jump_matrix, Ray, SpectralData, SpectralError, SpectralPoint,
};
use fokas_core::volterra::{solve_h, VolterraOptions, Which};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub measured: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: &str, measured: f64, threshold: f64) -> Self {
        Self { name: name.into(), measured, threshold, pass: measured <= threshold }
    }
}

/// ς with ς² − ½ = λ, taking the root in the closed right half-plane.
pub fn k_of_lambda(l: C64) -> C64 {
    (l + 0.5).sqrt()
}

/// Random (z, t, ς) at which both columns of H_which stay bounded: λ real, with
/// λ ≤ 0 for H1 and λ ≥ 0 for H2. z stays outside the absorbing layer.
pub fn admissible_samples(
    field: &PotentialField,
    which: Which,
    n: usize,
    lambda_max: f64,
    rng: &mut ChaCha8Rng,
) -> Vec<(f64, f64, C64)> {
    let z_top = field.grid.z_node(field.physical_extent());
    let (lo, hi) = match which {
        Which::H1 => (-lambda_max, 0.0),
        Which::H2 => (0.0, lambda_max),
        Which::H3 => (-lambda_max, lambda_max),
    };
    (0..n)
        .map(|_| {
            let z = rng.gen_range(0.0..=z_top);
            let t = rng.gen_range(0.0..=field.grid.t_max);
            let l = rng.gen_range(lo..=hi);
            let k = k_of_lambda(C64::new(l, 0.0));
            (z, t, if rng.gen_bool(0.5) { k } else { -k })
        })
        .collect()
}

pub fn det_h_error(field: &PotentialField, which: Which, samples: &[(f64, f64, C64)], opts: &VolterraOptions) -> Result<f64, SpectralError> {
    let errs = samples
        .par_iter()
        .map(|&(z, t, k)| Ok((solve_h(which, field, z, t, k, opts)?.h.det() - 1.0).norm()))
        .collect::<Result<Vec<f64>, SpectralError>>()?;
    Ok(errs.into_iter().fold(0.0, f64::max))
}

/// Largest deviation from even u, U and odd v, V over consecutive (ς, −ς) pairs.
pub fn parity_error(data: &SpectralData) -> f64 {
    let mut worst: f64 = 0.0;
    for pair in data.points.chunks(2) {
        let [p, m] = pair else { continue };
        if (p.k + m.k).norm() > 1e-15 * p.k.norm() {
            continue;
        }
        let mut upd = |a: Option<C64>, b: Option<C64>, sign: f64| {
            if let (Some(a), Some(b)) = (a, b) {
                worst = worst.max((a - b * sign).norm());
            }
        };
        upd(p.u, m.u, 1.0);
        upd(p.v, m.v, -1.0);
        upd(p.big_u, m.big_u, 1.0);
        upd(p.big_v, m.big_v, -1.0);
    }
    worst
}

/// |det w − 1| over `n` real ς in (0, k_max] and |det W − 1| over `n` ς with λ²
/// real (half on each of the real and imaginary λ axes).
pub fn det_w_errors(field: &PotentialField, n: usize, k_max: f64, opts: &VolterraOptions) -> Result<(f64, f64), SpectralError> {
    let real: Vec<C64> = (1..=n).map(|j| C64::new(k_max * j as f64 / n as f64, 0.0)).collect();
    let on_t: Vec<C64> = (1..=n)
        .map(|j| {
            let s = k_max * k_max * j as f64 / n as f64;
            let l = if j % 2 == 0 { C64::new(s - 0.5, 0.0) } else { C64::new(0.0, -s) };
            k_of_lambda(l)
        })
        .collect();
    let a = SpectralData::sweep(field, &real, opts)?;
    let b = SpectralData::sweep(field, &on_t, opts)?;
    let worst = |d: &SpectralData, f: fn(&SpectralPoint) -> Option<C64>| {
        d.points.iter().filter_map(f).fold(0.0f64, |m, x| m.max((x - 1.0).norm()))
    };
    Ok((worst(&a, SpectralPoint::det_w), worst(&b, SpectralPoint::det_big_w)))
}

/// Points on a ray with |λ| log-spaced in [rho_lo, rho_hi].
pub fn ray_samples(ray: Ray, n: usize, rho_lo: f64, rho_hi: f64) -> Vec<C64> {
    (0..n)
        .map(|j| {
            let s = if n > 1 { j as f64 / (n - 1) as f64 } else { 0.0 };
            ray.point(rho_lo * (rho_hi / rho_lo).powf(s))
        })
        .collect()
}

/// max ‖E₋ − E₊G‖ at (z, t) over `n` points per ray, reported per ray.
pub fn jump_mismatch(
    field: &PotentialField,
    z: f64,
    t: f64,
    n: usize,
    opts: &VolterraOptions,
    beta_sign: f64,
) -> Result<Vec<(Ray, f64)>, SpectralError> {
    Ray::ALL
        .iter()
        .map(|&ray| {
            let errs = ray_samples(ray, n, 0.1, 10.0)
                .par_iter()
                .map(|&k| {
                    let p = SpectralPoint::compute(field, k, opts)?;
                    let (plus, minus) = ray.sides();
                    let ep = evaluate_e_in(field, plus, z, t, k, &p, opts, beta_sign)?.e;
                    let em = evaluate_e_in(field, minus, z, t, k, &p, opts, beta_sign)?.e;
                    Ok((em - ep * jump_matrix(ray, z, t, &p, beta_sign)?).max_abs())
                })
                .collect::<Result<Vec<f64>, SpectralError>>()?;
            Ok((ray, errs.into_iter().fold(0.0, f64::max)))
        })
        .collect()
}

/// ς in D2 (λ in the open third quadrant) spread by a fixed rule.
pub fn d2_samples(n: usize) -> Vec<C64> {
    (0..n)
        .map(|j| {
            let s = (j as f64 + 0.5) / n as f64;
            let rho = 0.3 * 10f64.powf(s);
            let phi = PI * (1.1 + 0.3 * ((j * 7) % n) as f64 / n as f64);
            k_of_lambda(C64::from_polar(rho, phi))
        })
        .collect()
}

/// Largest global-relation residual over `ks` using `trace` for the boundary data.
pub fn global_relation_error(
    field: &PotentialField,
    trace: &fokas_core::potential::BoundaryTrace,
    ks: &[C64],
    opts: &VolterraOptions,
) -> Result<f64, SpectralError> {
    let r = ks
        .par_iter()
        .map(|&k| Ok(global_relation_residual(field, trace, k, opts)?.norm()))
        .collect::<Result<Vec<f64>, SpectralError>>()?;
    Ok(r.into_iter().fold(0.0, f64::max))
}

/// Global-relation residual for spectral.csv: evaluated on the closure of D2
/// (rays arg λ = π and 3π/2), absent elsewhere.
pub fn global_column(field: &PotentialField, ks: &[C64], opts: &VolterraOptions) -> Vec<Option<f64>> {
    ks.par_iter()
        .map(|&k| {
            let l = lambda(k);
            if l.im <= 0.0 && l.re <= 0.0 {
                global_relation_residual(field, &field.trace, k, opts).ok().map(|r| r.norm())
            } else {
                None
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use fokas_core::algebra::{region_of, Region};

    #[test]
    fn d2_samples_are_in_d2() {
        for k in d2_samples(20) {
            assert_eq!(region_of(k, 1e-12), Region::D2, "{k}");
        }
    }

    #[test]
    fn ray_samples_span_the_range() {
        let ks = ray_samples(Ray::Pi, 5, 0.1, 10.0);
        assert!((lambda(ks[0]).norm() - 0.1).abs() < 1e-12);
        assert!((lambda(ks[4]).norm() - 10.0).abs() < 1e-9);
    }
}
