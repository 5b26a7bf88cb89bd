//! Eigenfunctions H1, H2, H3 along their integration paths.

use super::lax::{build_a1, build_b1};
use super::magnus::{propagate, Scheme};
use super::VolterraError;
use crate::algebra::{lambda, Col2, Mat2, C64, I, ONE, ZERO};
use crate::io::{fmt_f64, write_csv};
use crate::potential::{BoundaryTrace, FieldSlice, PotentialField};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Which {
    /// Normalized at (0, 0).
    H1,
    /// Normalized at (0, T).
    H2,
    /// Normalized at z = Z (standing in for z = ∞).
    H3,
}

impl Which {
    pub fn name(self) -> &'static str {
        match self {
            Which::H1 => "H1",
            Which::H2 => "H2",
            Which::H3 => "H3",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VolterraOptions {
    /// Bound on h·‖off-diagonal coefficient‖ for one Magnus step.
    pub target: f64,
    pub min_sub: usize,
    pub max_sub: usize,
    /// Column size beyond which the evaluation is declared outside its region.
    pub growth_limit: f64,
    /// Stepper for z-legs.
    pub scheme: Scheme,
    /// Stepper for t-legs.
    pub t_scheme: Scheme,
}

impl Default for VolterraOptions {
    fn default() -> Self {
        Self { target: 0.05, min_sub: 1, max_sub: 4096, growth_limit: 1e12, scheme: Scheme::Etd4, t_scheme: Scheme::Magnus4 }
    }
}

impl VolterraOptions {
    fn substeps(&self, cell: f64, bound: f64) -> usize {
        ((cell * bound / self.target).ceil() as usize).clamp(self.min_sub, self.max_sub)
    }

    /// The same options with every step split `factor` times finer.
    pub fn refined(&self, factor: usize) -> Self {
        Self { min_sub: self.min_sub * factor, target: self.target / factor as f64, ..*self }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenfunctionEval {
    pub h: Mat2,
    pub which: Which,
    pub z: f64,
    pub t: f64,
    pub k: C64,
    /// Largest Magnus step used on the z-leg.
    pub step: f64,
    pub order: u32,
    /// Crude bound on the neglected contribution beyond z = Z (H3 only).
    pub tail_bound: f64,
}

/// Constant diagonal of the z-equation for column `col` (0 or 1).
pub fn z_shift(k: C64, col: usize) -> Mat2 {
    let l = lambda(k);
    match col {
        0 => Mat2::diag(ZERO, -I * l * 2.0),
        _ => Mat2::diag(I * l * 2.0, ZERO),
    }
}

/// Constant diagonal of the t-equation for column `col`.
pub fn t_shift(k: C64, col: usize) -> Mat2 {
    let l = lambda(k);
    match col {
        0 => Mat2::diag(ZERO, I * l * l * 4.0),
        _ => Mat2::diag(-I * l * l * 4.0, ZERO),
    }
}

pub fn unit(col: usize) -> Col2 {
    if col == 0 {
        [ONE, ZERO]
    } else {
        [ZERO, ONE]
    }
}

fn z_bound(slice: &FieldSlice, k: C64) -> f64 {
    let rmax = slice.r.iter().fold(0.0f64, |a, r| a.max(r.norm()));
    k.norm() * rmax + rmax * rmax
}

fn t_bound(trace: &BoundaryTrace, k: C64) -> f64 {
    let kn = k.norm();
    let mut b: f64 = 0.0;
    for (s0, s1) in trace.s0.iter().zip(&trace.s1) {
        let (a, d) = (s0.norm(), s1.norm());
        b = b.max(2.0 * kn.powi(3) * a + kn * (a + d + a.powi(3)) + kn * kn * a * a + a.powi(4) + a * d);
    }
    b
}

/// Integrates column `col` of the z-equation at the slice's time from `from` to `to`.
pub fn column_z<V: FnMut(f64, &Col2)>(
    slice: &FieldSlice,
    k: C64,
    col: usize,
    from: f64,
    to: f64,
    m0: Col2,
    opts: &VolterraOptions,
    visit: V,
) -> Result<Col2, VolterraError> {
    let coeff = |z: f64| {
        let s = slice.sample(z);
        build_a1(s.r, k, s.theta)
    };
    let sub = opts.substeps(slice.dz, z_bound(slice, k));
    propagate(opts.scheme, &coeff, &z_shift(k, col), from, to, slice.dz, sub, m0, opts.growth_limit, visit)
}

/// Integrates column `col` of the t-equation at z = 0 from `from` to `to`.
pub fn column_t<V: FnMut(f64, &Col2)>(
    trace: &BoundaryTrace,
    k: C64,
    col: usize,
    from: f64,
    to: f64,
    m0: Col2,
    opts: &VolterraOptions,
    visit: V,
) -> Result<Col2, VolterraError> {
    let coeff = |t: f64| {
        let (s0, s1, th) = trace.sample(t);
        build_b1(s0, s1, k, th)
    };
    let sub = opts.substeps(trace.dt, t_bound(trace, k));
    propagate(opts.t_scheme, &coeff, &t_shift(k, col), from, to, trace.dt, sub, m0, opts.growth_limit, visit)
}

fn check_point(field: &PotentialField, z: f64, t: f64) -> Result<(), VolterraError> {
    let g = &field.grid;
    if !(z >= 0.0 && z <= g.z_max * (1.0 + 1e-12) && t >= 0.0 && t <= g.t_max * (1.0 + 1e-12)) {
        return Err(VolterraError::OutOfDomain { z, t });
    }
    Ok(())
}

/// Column `col` of H_which at (z, t), using a precomputed slice at time t.
pub fn column_on_slice(
    which: Which,
    field: &PotentialField,
    slice: &FieldSlice,
    z: f64,
    k: C64,
    col: usize,
    opts: &VolterraOptions,
) -> Result<Col2, VolterraError> {
    let t = slice.t;
    let m = match which {
        Which::H1 => column_t(&field.trace, k, col, 0.0, t, unit(col), opts, |_, _| {})?,
        Which::H2 => column_t(&field.trace, k, col, field.grid.t_max, t, unit(col), opts, |_, _| {})?,
        Which::H3 => return column_z(slice, k, col, slice.z_max(), z, unit(col), opts, |_, _| {}),
    };
    column_z(slice, k, col, 0.0, z, m, opts, |_, _| {})
}

/// Column `col` of H_which(z, t, ς).
pub fn solve_column(
    which: Which,
    field: &PotentialField,
    z: f64,
    t: f64,
    k: C64,
    col: usize,
    opts: &VolterraOptions,
) -> Result<Col2, VolterraError> {
    check_point(field, z, t)?;
    let slice = field.slice(t)?;
    column_on_slice(which, field, &slice, z, k, col, opts)
}

/// Both columns of H_which(z, t, ς).
pub fn solve_h(
    which: Which,
    field: &PotentialField,
    z: f64,
    t: f64,
    k: C64,
    opts: &VolterraOptions,
) -> Result<EigenfunctionEval, VolterraError> {
    check_point(field, z, t)?;
    let slice = field.slice(t)?;
    let c1 = column_on_slice(which, field, &slice, z, k, 0, opts)?;
    let c2 = column_on_slice(which, field, &slice, z, k, 1, opts)?;
    let sub = opts.substeps(slice.dz, z_bound(&slice, k));
    let tail_bound = if which == Which::H3 {
        let tail = slice.r.iter().rev().take(slice.r.len() / 10 + 1).fold(0.0f64, |a, r| a.max(r.norm()));
        k.norm() * tail * 0.1 * slice.z_max()
    } else {
        0.0
    };
    Ok(EigenfunctionEval {
        h: Mat2::from_cols(c1, c2),
        which,
        z,
        t,
        k,
        step: slice.dz / sub as f64,
        order: 4,
        tail_bound,
    })
}

pub const EIGEN_HEADER: [&str; 14] = [
    "which", "z", "t", "re_k", "im_k", "re_h11", "im_h11", "re_h12", "im_h12", "re_h21", "im_h21", "re_h22", "im_h22",
    "det_err",
];

pub fn write_eigen_csv(path: &Path, evals: &[EigenfunctionEval]) -> Result<(), csv::Error> {
    let rows = evals.iter().map(|e| {
        let mut row = vec![e.which.name().to_string(), fmt_f64(e.z), fmt_f64(e.t), fmt_f64(e.k.re), fmt_f64(e.k.im)];
        for v in e.h.entries() {
            row.push(fmt_f64(v.re));
            row.push(fmt_f64(v.im));
        }
        row.push(fmt_f64((e.h.det() - 1.0).norm()));
        row
    });
    write_csv(path, &EIGEN_HEADER, rows)
}
