//! The sampled potential and its interpolation services.

use super::grid::GridSpec;
use super::PotentialError;
use crate::algebra::{conserved_flux, theta_density, C64};
use crate::numerics::{cubic_stencil, cumulative_integral, derivative4, interp_uniform, lagrange4};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Provenance carried into the manifest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldMeta {
    pub preset: String,
    pub params: serde_json::Value,
    pub right_boundary: String,
}

impl Default for FieldMeta {
    fn default() -> Self {
        Self { preset: "custom".into(), params: serde_json::Value::Null, right_boundary: "sponge".into() }
    }
}

/// Boundary values at z = 0 at every solver step, with the running Θ₂ integral.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryTrace {
    pub dt: f64,
    pub s0: Vec<C64>,
    pub s1: Vec<C64>,
    pub theta: Vec<f64>,
}

impl BoundaryTrace {
    pub fn new(dt: f64, s0: Vec<C64>, s1: Vec<C64>) -> Self {
        let dens: Vec<f64> = s0.iter().zip(&s1).map(|(&a, &b)| theta_density(a, b).theta2).collect();
        let theta = cumulative_integral(&dens, dt);
        Self { dt, s0, s1, theta }
    }

    pub fn t_max(&self) -> f64 {
        self.dt * (self.s0.len() - 1) as f64
    }

    /// (s0, s1, ∫₀ᵗΘ₂) at time t by cubic interpolation.
    pub fn sample(&self, t: f64) -> (C64, C64, f64) {
        (
            interp_uniform(&self.s0, 0.0, self.dt, t),
            interp_uniform(&self.s1, 0.0, self.dt, t),
            interp_uniform(&self.theta, 0.0, self.dt, t),
        )
    }

    /// The same trace with `offset` added to the Dirichlet data.
    pub fn perturbed(&self, offset: C64) -> Self {
        Self::new(self.dt, self.s0.iter().map(|&s| s + offset).collect(), self.s1.clone())
    }
}

/// Interpolated point sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub r: C64,
    pub rz: C64,
    pub theta: f64,
}

/// A z-profile of the field at one time, with the cumulative phase on the canonical path.
#[derive(Clone, Debug)]
pub struct FieldSlice {
    pub t: f64,
    pub dz: f64,
    pub r: Vec<C64>,
    pub rz: Vec<C64>,
    pub theta: Vec<f64>,
}

impl FieldSlice {
    pub fn z_max(&self) -> f64 {
        self.dz * (self.r.len() - 1) as f64
    }

    pub fn sample(&self, z: f64) -> Sample {
        let (s, p) = cubic_stencil(self.r.len(), 0.0, self.dz, z);
        let w = lagrange4(p);
        let mut out = Sample { r: C64::new(0.0, 0.0), rz: C64::new(0.0, 0.0), theta: 0.0 };
        for j in 0..4 {
            out.r += self.r[s + j] * w[j];
            out.rz += self.rz[s + j] * w[j];
            out.theta += self.theta[s + j] * w[j];
        }
        out
    }
}

/// r, r_z and the cumulative Θ integrals on the stored grid (t outer, z inner).
#[derive(Clone, Debug)]
pub struct PotentialField {
    pub grid: GridSpec,
    pub r: Vec<C64>,
    pub rz: Vec<C64>,
    /// ∫₀^z Θ₁(ζ, t) dζ at each stored node.
    pub theta_cum_z: Vec<f64>,
    /// ∫₀^t Θ₂(0, τ) dτ at each stored level.
    pub theta_cum_t: Vec<f64>,
    pub trace: BoundaryTrace,
    pub meta: FieldMeta,
    pub schema_version: u32,
}

impl PotentialField {
    /// Builds derived arrays from stored samples of r and the fine boundary trace.
    pub fn from_samples(grid: GridSpec, r: Vec<C64>, trace: BoundaryTrace, meta: FieldMeta) -> Self {
        let m = grid.nz + 1;
        let levels = grid.n_saved() + 1;
        assert_eq!(r.len(), m * levels, "sample count does not match grid");
        let dz = grid.dz();
        let mut rz = Vec::with_capacity(r.len());
        let mut theta_cum_z = Vec::with_capacity(r.len());
        for row in r.chunks(m) {
            rz.extend(derivative4(row, dz));
            let dens: Vec<f64> = row.iter().map(|v| 0.25 * v.norm_sqr()).collect();
            theta_cum_z.extend(cumulative_integral(&dens, dz));
        }
        let theta_cum_t = (0..levels).map(|n| trace.theta[n * grid.save_every]).collect();
        Self { grid, r, rz, theta_cum_z, theta_cum_t, trace, meta, schema_version: SCHEMA_VERSION }
    }

    pub fn levels(&self) -> usize {
        self.grid.n_saved() + 1
    }

    pub fn idx(&self, n: usize, i: usize) -> usize {
        n * (self.grid.nz + 1) + i
    }

    pub fn row(&self, n: usize) -> &[C64] {
        let m = self.grid.nz + 1;
        &self.r[n * m..(n + 1) * m]
    }

    /// Cumulative Θ along (0,0)→(0,t)→(z,t) at a stored node.
    pub fn theta_cum(&self, n: usize, i: usize) -> f64 {
        self.theta_cum_t[n] + self.theta_cum_z[self.idx(n, i)]
    }

    /// Index of the stored level at time t, if t is one.
    pub fn level_of(&self, t: f64) -> Option<usize> {
        let q = t / self.grid.dt_saved();
        let n = q.round();
        ((q - n).abs() < 1e-9 && n >= 0.0 && (n as usize) < self.levels()).then_some(n as usize)
    }

    fn check_domain(&self, z: f64, t: f64) -> Result<(), PotentialError> {
        let eps = 1e-12;
        if !(z >= -eps && z <= self.grid.z_max * (1.0 + eps) && t >= -eps && t <= self.grid.t_max * (1.0 + eps)) {
            return Err(PotentialError::OutOfDomain { z, t });
        }
        Ok(())
    }

    /// Bicubic sample of r, r_z and the canonical-path Θ integral.
    pub fn sample(&self, z: f64, t: f64) -> Result<Sample, PotentialError> {
        self.check_domain(z, t)?;
        let (sz, pz) = cubic_stencil(self.grid.nz + 1, 0.0, self.grid.dz(), z);
        let (st, pt) = cubic_stencil(self.levels(), 0.0, self.grid.dt_saved(), t);
        let (wz, wt) = (lagrange4(pz), lagrange4(pt));
        let mut out = Sample { r: C64::new(0.0, 0.0), rz: C64::new(0.0, 0.0), theta: 0.0 };
        for a in 0..4 {
            for b in 0..4 {
                let w = wt[a] * wz[b];
                if w == 0.0 {
                    continue;
                }
                let k = self.idx(st + a, sz + b);
                out.r += self.r[k] * w;
                out.rz += self.rz[k] * w;
                out.theta += self.theta_cum_z[k] * w;
            }
        }
        out.theta += match self.level_of(t) {
            Some(n) => self.theta_cum_t[n],
            None => self.trace.sample(t).2,
        };
        Ok(out)
    }

    /// z-profile at time t; exact copy when t is a stored level.
    pub fn slice(&self, t: f64) -> Result<FieldSlice, PotentialError> {
        self.check_domain(0.0, t)?;
        let m = self.grid.nz + 1;
        let dz = self.grid.dz();
        if let Some(n) = self.level_of(t) {
            let base = n * m;
            return Ok(FieldSlice {
                t,
                dz,
                r: self.r[base..base + m].to_vec(),
                rz: self.rz[base..base + m].to_vec(),
                theta: (0..m).map(|i| self.theta_cum(n, i)).collect(),
            });
        }
        let (st, pt) = cubic_stencil(self.levels(), 0.0, self.grid.dt_saved(), t);
        let wt = lagrange4(pt);
        let th0 = self.trace.sample(t).2;
        let mut s = FieldSlice { t, dz, r: Vec::with_capacity(m), rz: Vec::with_capacity(m), theta: Vec::with_capacity(m) };
        for i in 0..m {
            let (mut r, mut rz, mut th) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0), 0.0);
            for (a, w) in wt.iter().enumerate() {
                let k = self.idx(st + a, i);
                r += self.r[k] * *w;
                rz += self.rz[k] * *w;
                th += self.theta_cum_z[k] * *w;
            }
            s.r.push(r);
            s.rz.push(rz);
            s.theta.push(th + th0);
        }
        Ok(s)
    }

    /// Last z index outside the absorbing layer.
    pub fn physical_extent(&self) -> usize {
        if self.meta.right_boundary == "sponge" {
            (self.grid.nz as f64 * 0.9).floor() as usize
        } else {
            self.grid.nz
        }
    }

    /// Largest |∫ along (0,0)→(z,0)→(z,t) − ∫ along (0,0)→(0,t)→(z,t)| over stored nodes
    /// outside the absorbing layer.
    pub fn path_discrepancy(&self) -> f64 {
        let levels = self.levels();
        let h = self.grid.dt_saved();
        let mut worst: f64 = 0.0;
        for i in 0..=self.physical_extent() {
            let dens: Vec<f64> = (0..levels)
                .map(|n| {
                    let k = self.idx(n, i);
                    theta_density(self.r[k], self.rz[k]).theta2
                })
                .collect();
            let along = cumulative_integral(&dens, h);
            for n in 0..levels {
                let other = self.theta_cum_z[self.idx(0, i)] + along[n];
                worst = worst.max((other - self.theta_cum(n, i)).abs());
            }
        }
        worst
    }
}

/// Max over interior stored nodes of |∂_t|r|² − ∂_z F| with fourth-order centred
/// differences, F = |r|⁴/2 + i(r̄r_z − r r̄_z). Nodes within two cells of an edge
/// or inside the absorbing layer are skipped.
pub fn conservation_residual(field: &PotentialField) -> f64 {
    let levels = field.levels();
    let (dz, dt) = (field.grid.dz(), field.grid.dt_saved());
    let last = field.physical_extent().min(field.grid.nz - 2);
    let dens = |n: usize, i: usize| field.r[field.idx(n, i)].norm_sqr();
    let flux = |n: usize, i: usize| {
        let k = field.idx(n, i);
        conserved_flux(field.r[k], field.rz[k])
    };
    let mut worst: f64 = 0.0;
    for n in 2..levels.saturating_sub(2) {
        for i in 2..last {
            let d_t = (dens(n - 2, i) - 8.0 * dens(n - 1, i) + 8.0 * dens(n + 1, i) - dens(n + 2, i)) / (12.0 * dt);
            let f_z = (flux(n, i - 2) - 8.0 * flux(n, i - 1) + 8.0 * flux(n, i + 1) - flux(n, i + 2)) / (12.0 * dz);
            worst = worst.max((d_t - f_z).abs());
        }
    }
    worst
}
