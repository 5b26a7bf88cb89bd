//! r(z, t) from the large-ς behaviour of the second column of H3.

use super::{apply_weights, fit_weights, richardson, InverseError};
use crate::algebra::{theta_density, ThetaDensity, C64, I};
use crate::numerics::{cumulative_integral, derivative4};
use crate::potential::PotentialField;
use crate::volterra::{check_ladder, column_ray, column_z, ladder_on_ray, unit, VolterraOptions, Which};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Ladder magnitudes plus fit and extrapolation settings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LadderSpec {
    pub mags: Vec<f64>,
    /// Odd powers ς^{−1}, ς^{−3}, … kept in the fit.
    pub terms: usize,
    /// Also evaluate on the ladder scaled by `ratio` and extrapolate.
    pub richardson: bool,
    pub ratio: f64,
}

impl Default for LadderSpec {
    fn default() -> Self {
        Self { mags: crate::volterra::default_ladder(), terms: 3, richardson: true, ratio: 2.0 }
    }
}

impl LadderSpec {
    pub fn check(&self) -> Result<(), InverseError> {
        check_ladder(&self.mags).map_err(|e| InverseError::LadderInadmissible(e.to_string()))?;
        if !(self.ratio > 1.0) {
            return Err(InverseError::LadderInadmissible(format!("ladder ratio {}", self.ratio)));
        }
        if self.terms == 0 || self.terms > self.mags.len() {
            return Err(InverseError::LadderInadmissible(format!("{} fit terms", self.terms)));
        }
        Ok(())
    }

    pub(crate) fn scaled(&self) -> Vec<f64> {
        self.mags.iter().map(|m| self.ratio * m).collect()
    }
}

/// Θ densities expressed through h = (h⁽¹⁾)₁₂ and h_z.
pub fn theta_from_h(h: C64, hz: C64) -> ThetaDensity {
    let a = h.norm_sqr();
    ThetaDensity { theta1: a, theta2: -2.0 * a * a - 2.0 * (h.conj() * hz).im }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub sup_abs: f64,
    pub l2: f64,
    /// sup |r_rec − r| / sup |r| on the interior 80% of z and t nodes.
    pub interior_sup_rel: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reconstruction {
    pub z: Vec<f64>,
    pub t: Vec<f64>,
    /// Row-major, t outer.
    pub h: Vec<C64>,
    pub r_rec: Vec<C64>,
    pub theta: Vec<ThetaDensity>,
    pub error: ErrorReport,
}

/// (h⁽¹⁾)₁₂ at every z node of level `n`.
fn h_on_level(field: &PotentialField, n: usize, mags: &[f64], terms: usize, opts: &VolterraOptions) -> Result<Vec<C64>, InverseError> {
    let slice = field.slice(field.grid.t_level(n)).map_err(crate::volterra::VolterraError::from)?;
    let nodes = slice.r.len();
    let ks = ladder_on_ray(mags, column_ray(Which::H3, 1));
    let powers: Vec<i32> = (0..terms as i32).map(|q| 2 * q + 1).collect();
    let w = fit_weights(&ks, &powers)?;
    let mut samples = vec![vec![C64::new(0.0, 0.0); ks.len()]; nodes];
    for (j, &k) in ks.iter().enumerate() {
        column_z(&slice, k, 1, slice.z_max(), 0.0, unit(1), opts, |z, c| {
            let i = ((z / slice.dz).round() as usize).min(nodes - 1);
            samples[i][j] = c[0];
        })?;
    }
    Ok(samples.iter().map(|y| apply_weights(&w[0], y)).collect())
}

fn h_field(field: &PotentialField, mags: &[f64], terms: usize, opts: &VolterraOptions) -> Result<Vec<Vec<C64>>, InverseError> {
    (0..field.levels()).into_par_iter().map(|n| h_on_level(field, n, mags, terms, opts)).collect()
}

/// Reconstructs r on the field's nodes; `field` is consulted only through its
/// eigenfunctions, plus at the end as the reference for the error report.
pub fn reconstruct_field(field: &PotentialField, ladder: &LadderSpec, opts: &VolterraOptions) -> Result<Reconstruction, InverseError> {
    ladder.check()?;
    let mut h = h_field(field, &ladder.mags, ladder.terms, opts)?;
    if ladder.richardson {
        let fine = h_field(field, &ladder.scaled(), ladder.terms, opts)?;
        let p = 2 * ladder.terms as i32;
        for (row, frow) in h.iter_mut().zip(&fine) {
            for (a, b) in row.iter_mut().zip(frow) {
                *a = richardson(*a, *b, ladder.ratio, p);
            }
        }
    }
    let g = &field.grid;
    let (levels, nodes) = (field.levels(), g.nz + 1);
    let (dz, dts) = (g.dz(), g.dt_saved());
    let mut theta = Vec::with_capacity(levels * nodes);
    let mut hz_rows = Vec::with_capacity(levels);
    for row in &h {
        let hz = derivative4(row, dz);
        theta.extend(row.iter().zip(&hz).map(|(&a, &b)| theta_from_h(a, b)));
        hz_rows.push(hz);
    }
    // θ along the canonical path: up z = 0 in t, then along z
    let theta2_edge: Vec<f64> = (0..levels).map(|n| theta[n * nodes].theta2).collect();
    let edge = cumulative_integral(&theta2_edge, dts);
    let mut r_rec = Vec::with_capacity(levels * nodes);
    for n in 0..levels {
        let t1: Vec<f64> = theta[n * nodes..(n + 1) * nodes].iter().map(|d| d.theta1).collect();
        let cum = cumulative_integral(&t1, dz);
        r_rec.extend(h[n].iter().zip(&cum).map(|(&a, &c)| -I * 2.0 * a * C64::from_polar(1.0, 2.0 * (edge[n] + c))));
    }
    let error = error_report(field, &r_rec);
    Ok(Reconstruction {
        z: (0..nodes).map(|i| g.z_node(i)).collect(),
        t: (0..levels).map(|n| g.t_level(n)).collect(),
        h: h.concat(),
        r_rec,
        theta,
        error,
    })
}

fn error_report(field: &PotentialField, r_rec: &[C64]) -> ErrorReport {
    let (levels, nodes) = (field.levels(), field.grid.nz + 1);
    let (mut sup_abs, mut l2, mut sup_in, mut rmax) = (0.0f64, 0.0, 0.0f64, 0.0f64);
    let inside = |i: usize, n: usize| i * 10 >= n && i * 10 <= 9 * n;
    for n in 0..levels {
        for i in 0..nodes {
            let e = (r_rec[n * nodes + i] - field.r[field.idx(n, i)]).norm();
            sup_abs = sup_abs.max(e);
            l2 += e * e;
            rmax = rmax.max(field.r[field.idx(n, i)].norm());
            if inside(i, nodes - 1) && inside(n, levels - 1) {
                sup_in = sup_in.max(e);
            }
        }
    }
    let l2 = (l2 * field.grid.dz() * field.grid.dt_saved()).sqrt();
    ErrorReport { sup_abs, l2, interior_sup_rel: if rmax > 0.0 { sup_in / rmax } else { sup_in } }
}

/// Θ densities recomputed from (r, r_z) through the substitution r = −2ih e^{2iθ}.
pub fn theta_via_r(h: C64, hz: C64, theta: f64) -> ThetaDensity {
    let e = C64::from_polar(1.0, 2.0 * theta);
    let r = -I * 2.0 * h * e;
    let rz = -I * 2.0 * (hz + I * 2.0 * h.norm_sqr() * h) * e;
    theta_density(r, rz)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn theta_matches_direct_densities(hr in -1.0f64..1.0, hi in -1.0f64..1.0, zr in -2.0f64..2.0, zi in -2.0f64..2.0, th in -3.0f64..3.0) {
            let (h, hz) = (C64::new(hr, hi), C64::new(zr, zi));
            let a = theta_from_h(h, hz);
            let b = theta_via_r(h, hz, th);
            prop_assert!((a.theta1 - b.theta1).abs() < 1e-12);
            prop_assert!((a.theta2 - b.theta2).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_h() {
        assert_eq!(theta_from_h(C64::new(0.0, 0.0), C64::new(0.0, 0.0)), ThetaDensity { theta1: 0.0, theta2: 0.0 });
    }
}
