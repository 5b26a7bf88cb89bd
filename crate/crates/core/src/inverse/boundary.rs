//! s0(t), s1(t) from the large-ς expansion of H1 at z = 0.

use super::reconstruct::LadderSpec;
use super::{apply_weights, fit_weights, richardson, InverseError};
use crate::algebra::{C64, I};
use crate::numerics::cumulative_integral;
use crate::potential::BoundaryTrace;
use crate::volterra::{column_ray, column_t, ladder_on_ray, unit, VolterraOptions, Which};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryRecovery {
    pub t: Vec<f64>,
    pub s0: Vec<C64>,
    pub s1: Vec<C64>,
    pub theta2: Vec<f64>,
    /// (h⁽¹⁾)₁₂, (h⁽²⁾)₂₂, (h⁽³⁾)₁₂ per t (from the base ladder).
    pub h1: Vec<C64>,
    pub h2: Vec<C64>,
    pub h3: Vec<C64>,
    /// Width of the initial layer where the large-ς expansion is not yet valid.
    pub layer: f64,
}

impl BoundaryRecovery {
    /// Index of the first sample past the initial layer.
    pub fn first_valid(&self) -> usize {
        self.t.iter().position(|&t| t >= self.layer).unwrap_or(self.t.len())
    }
}

/// Step refinement for the t-legs. The ς⁻³ coefficient is read off samples of size
/// ς⁻³ against a coefficient of size ς³, so the default step is too coarse.
pub const BOUNDARY_REFINEMENT: usize = 4;

struct Coeffs {
    h1: Vec<C64>,
    h2: Vec<C64>,
    h3: Vec<C64>,
}

fn coefficients(trace: &BoundaryTrace, mags: &[f64], terms: usize, opts: &VolterraOptions) -> Result<Coeffs, InverseError> {
    let ks = ladder_on_ray(mags, column_ray(Which::H1, 1));
    let nodes = trace.s0.len();
    let cols = ks
        .par_iter()
        .map(|&k| {
            let mut col = vec![[C64::new(0.0, 0.0); 2]; nodes];
            column_t(trace, k, 1, 0.0, trace.t_max(), unit(1), opts, |t, c| {
                let n = ((t / trace.dt).round() as usize).min(nodes - 1);
                col[n] = *c;
            })?;
            Ok(col)
        })
        .collect::<Result<Vec<_>, InverseError>>()?;
    let odd: Vec<i32> = (0..terms as i32).map(|q| 2 * q + 1).collect();
    let even: Vec<i32> = (0..terms as i32).map(|q| 2 * q + 2).collect();
    let (wo, we) = (fit_weights(&ks, &odd)?, fit_weights(&ks, &even)?);
    if terms < 2 {
        return Err(InverseError::LadderInadmissible("boundary recovery needs at least two fit terms".into()));
    }
    let mut out = Coeffs { h1: Vec::with_capacity(nodes), h2: Vec::with_capacity(nodes), h3: Vec::with_capacity(nodes) };
    let mut y12 = vec![C64::new(0.0, 0.0); ks.len()];
    let mut y22 = y12.clone();
    for n in 0..nodes {
        for j in 0..ks.len() {
            y12[j] = cols[j][n][0];
            y22[j] = cols[j][n][1] - 1.0;
        }
        out.h1.push(apply_weights(&wo[0], &y12));
        out.h3.push(apply_weights(&wo[1], &y12));
        out.h2.push(apply_weights(&we[0], &y22));
    }
    Ok(out)
}

/// Boundary values rebuilt from the coefficients; Θ₂ is integrated from t = 0.
fn assemble(c: &Coeffs, dt: f64) -> (Vec<C64>, Vec<C64>, Vec<f64>) {
    let theta2: Vec<f64> = c
        .h1
        .iter()
        .zip(&c.h2)
        .zip(&c.h3)
        .map(|((&a, &b), &d)| {
            let m = a.norm_sqr();
            2.0 * m * m - 4.0 * (a.conj() * d).re + 4.0 * m * b.re + 2.0 * m
        })
        .collect();
    let cum = cumulative_integral(&theta2, dt);
    let mut s0 = Vec::with_capacity(cum.len());
    let mut s1 = Vec::with_capacity(cum.len());
    for n in 0..cum.len() {
        let e = C64::from_polar(1.0, 2.0 * cum[n]);
        let a = -I * 2.0 * c.h1[n] * e;
        s0.push(a);
        s1.push(c.h3[n] * 4.0 * e - I * 2.0 * a * c.h2[n] - I * a);
    }
    (s0, s1, theta2)
}

/// H1 equals I at t = 0, so its expansion holds only once e^{−4|λ|²t} has died
/// out for the smallest ladder magnitude.
pub fn initial_layer(mags: &[f64]) -> f64 {
    let m = mags.iter().copied().fold(f64::INFINITY, f64::min);
    let l = crate::algebra::lambda(crate::volterra::ladder_point(m, column_ray(Which::H1, 1))).norm();
    20.0 / (4.0 * l * l)
}

/// Recovers s0 and s1 on the trace's time nodes from the t-eigenfunction H1(0, t).
pub fn recover_boundary(trace: &BoundaryTrace, ladder: &LadderSpec, opts: &VolterraOptions) -> Result<BoundaryRecovery, InverseError> {
    ladder.check()?;
    let opts = &opts.refined(BOUNDARY_REFINEMENT);
    let c = coefficients(trace, &ladder.mags, ladder.terms, opts)?;
    let (mut s0, mut s1, theta2) = assemble(&c, trace.dt);
    if ladder.richardson {
        let fine = coefficients(trace, &ladder.scaled(), ladder.terms, opts)?;
        let (f0, f1, _) = assemble(&fine, trace.dt);
        let p = 2 * ladder.terms as i32;
        for n in 0..s0.len() {
            s0[n] = richardson(s0[n], f0[n], ladder.ratio, p);
            s1[n] = richardson(s1[n], f1[n], ladder.ratio, p - 2);
        }
    }
    Ok(BoundaryRecovery {
        t: (0..s0.len()).map(|n| n as f64 * trace.dt).collect(),
        s0,
        s1,
        theta2,
        h1: c.h1,
        h2: c.h2,
        h3: c.h3,
        layer: initial_layer(&ladder.mags),
    })
}
