//! Large-ς expansion H = I + h⁽¹⁾/ς + h⁽²⁾/ς² + h⁽³⁾/ς³ + … fitted on a ladder.

use super::eigen::{column_on_slice, VolterraOptions, Which};
use super::VolterraError;
use crate::algebra::{Mat2, C64};
use crate::potential::PotentialField;
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_PI_4;

/// Default ladder magnitudes |ς|.
pub fn default_ladder() -> Vec<f64> {
    vec![8.0, 12.0, 18.0, 27.0, 40.0]
}

/// The point with |ς| = `mag` on the ray arg(ς² − ½) = `alpha` (principal root).
pub fn ladder_point(mag: f64, alpha: f64) -> C64 {
    let c = alpha.cos();
    let rho = -0.5 * c + (0.25 * c * c - 0.25 + mag.powi(4)).sqrt();
    (C64::from_polar(rho, alpha) + 0.5).sqrt()
}

pub fn ladder_on_ray(mags: &[f64], alpha: f64) -> Vec<C64> {
    mags.iter().map(|&m| ladder_point(m, alpha)).collect()
}

/// Ray arg λ inside the region where column `col` of `which` stays bounded.
pub fn column_ray(which: Which, col: usize) -> f64 {
    match (which, col) {
        (Which::H1, 0) => -3.0 * FRAC_PI_4,
        (Which::H1, _) => 3.0 * FRAC_PI_4,
        (Which::H2, 0) => -FRAC_PI_4,
        (Which::H2, _) => FRAC_PI_4,
        (Which::H3, 0) => FRAC_PI_4,
        (Which::H3, _) => -FRAC_PI_4,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FitBasis {
    /// 1/ς, 1/ς², 1/ς³ for every entry.
    Standard,
    /// Odd powers for off-diagonal and even powers for diagonal entries, `terms` each.
    Parity { terms: usize },
}

impl FitBasis {
    fn powers(&self, diagonal: bool) -> Vec<i32> {
        match *self {
            FitBasis::Standard => vec![1, 2, 3],
            FitBasis::Parity { terms } => (0..terms as i32).map(|q| 2 * q + if diagonal { 2 } else { 1 }).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticCoeffs {
    pub h1: Mat2,
    pub h2: Mat2,
    pub h3: Mat2,
    /// Max modulus of the fit residual over ladder and entries.
    pub residual: f64,
}

impl AsymptoticCoeffs {
    pub fn zero() -> Self {
        Self { h1: Mat2::zero(), h2: Mat2::zero(), h3: Mat2::zero(), residual: 0.0 }
    }
}

pub fn check_ladder(mags: &[f64]) -> Result<(), VolterraError> {
    if mags.len() < 5 {
        return Err(VolterraError::IllConditionedFit(format!("ladder has {} points, need ≥ 5", mags.len())));
    }
    if mags.windows(2).any(|w| !(w[1] > w[0])) || mags[0] <= 0.0 {
        return Err(VolterraError::IllConditionedFit("ladder magnitudes must increase".into()));
    }
    if mags[mags.len() - 1] / mags[0] < 1.5 {
        return Err(VolterraError::IllConditionedFit("ladder too clustered".into()));
    }
    Ok(())
}

/// Least-squares fit of samples y(ς) against ς^{−p}; returns coefficients by power and the residual.
pub fn fit_powers(ks: &[C64], ys: &[C64], powers: &[i32]) -> Result<(Vec<(i32, C64)>, f64), VolterraError> {
    let (n, p) = (ks.len(), powers.len());
    if n < p {
        return Err(VolterraError::IllConditionedFit(format!("{n} samples for {p} unknowns")));
    }
    // scale each column by the ladder's smallest magnitude to balance the Vandermonde
    let s0 = ks.iter().map(|k| k.norm()).fold(f64::INFINITY, f64::min);
    let a = DMatrix::from_fn(n, p, |i, j| (ks[i] / s0).powi(-powers[j]));
    let b = DVector::from_iterator(n, ys.iter().copied());
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if !(smin > 1e-12 * smax) {
        return Err(VolterraError::IllConditionedFit(format!("condition number {:e}", smax / smin)));
    }
    let x = svd.solve(&b, 1e-14 * smax).map_err(|e| VolterraError::IllConditionedFit(e.to_string()))?;
    let resid = (&a * &x - &b).iter().fold(0.0f64, |m, v| m.max(v.norm()));
    let coeffs = powers.iter().zip(x.iter()).map(|(&q, &c)| (q, c * s0.powi(q))).collect();
    Ok((coeffs, resid))
}

/// Fits the expansion of `which` at (z, t) from per-column ladders placed inside
/// each column's region of boundedness.
pub fn asymptotic_coeffs(
    which: Which,
    field: &PotentialField,
    z: f64,
    t: f64,
    mags: &[f64],
    basis: FitBasis,
    opts: &VolterraOptions,
) -> Result<AsymptoticCoeffs, VolterraError> {
    check_ladder(mags)?;
    let slice = field.slice(t)?;
    let mut out = AsymptoticCoeffs::zero();
    for col in 0..2 {
        let ks = ladder_on_ray(mags, column_ray(which, col));
        let cols = ks
            .iter()
            .map(|&k| column_on_slice(which, field, &slice, z, k, col, opts))
            .collect::<Result<Vec<_>, _>>()?;
        for row in 0..2 {
            let diagonal = row == col;
            let ys: Vec<C64> = cols.iter().map(|c| if diagonal { c[row] - 1.0 } else { c[row] }).collect();
            let (coeffs, resid) = fit_powers(&ks, &ys, &basis.powers(diagonal))?;
            out.residual = out.residual.max(resid);
            for (q, c) in coeffs {
                let target = match q {
                    1 => &mut out.h1,
                    2 => &mut out.h2,
                    3 => &mut out.h3,
                    _ => continue,
                };
                match (row, col) {
                    (0, 0) => target.a11 = c,
                    (0, 1) => target.a12 = c,
                    (1, 0) => target.a21 = c,
                    _ => target.a22 = c,
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{lambda, region_of, Region};

    #[test]
    fn ladder_points_sit_on_the_ray() {
        for &alpha in &[FRAC_PI_4, -FRAC_PI_4, 3.0 * FRAC_PI_4, -3.0 * FRAC_PI_4] {
            for k in ladder_on_ray(&default_ladder(), alpha) {
                assert!((lambda(k).arg() - alpha).abs() < 1e-12);
            }
        }
        assert!((ladder_point(8.0, 0.3).norm() - 8.0).abs() < 1e-12);
        let k = ladder_point(8.0, -FRAC_PI_4);
        assert_eq!(region_of(k, 1e-12), Region::D1);
    }

    #[test]
    fn fit_recovers_polynomial() {
        let ks = ladder_on_ray(&default_ladder(), -FRAC_PI_4);
        let (a, b, c) = (C64::new(0.3, -0.1), C64::new(-1.0, 2.0), C64::new(5.0, 0.5));
        let ys: Vec<C64> = ks.iter().map(|&k| a / k + b / (k * k) + c / (k * k * k)).collect();
        let (coeffs, resid) = fit_powers(&ks, &ys, &[1, 2, 3]).unwrap();
        assert!(resid < 1e-14);
        assert!((coeffs[0].1 - a).norm() < 1e-12 && (coeffs[2].1 - c).norm() < 1e-8);
    }

    #[test]
    fn short_ladders_rejected() {
        assert!(check_ladder(&[8.0, 12.0, 18.0]).is_err());
        assert!(check_ladder(&[8.0, 8.1, 8.2, 8.3, 8.4]).is_err());
        assert!(check_ladder(&default_ladder()).is_ok());
    }
}
