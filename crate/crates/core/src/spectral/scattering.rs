//! Spectral functions u, v, U, V and the derived β, δ, Δ.
//!
//! w = H3(0,0) = (u* v; −v* u) and W = H2(0,0) = (U* V; −V* U), where f*(ς)
//! stands for conj f(ς̄). Each starred function is read off the column that is
//! bounded at ς itself, so no evaluation ever leaves its region.

use super::SpectralError;
use crate::algebra::{Col2, C64};
use crate::potential::{BoundaryTrace, PotentialField};
use crate::volterra::{column_t, column_z, unit, VolterraError, VolterraOptions};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// (v, u): second column of H3(0, 0, ς). Bounded for Im(ς² − ½) ≤ 0.
pub fn compute_uv(field: &PotentialField, k: C64, opts: &VolterraOptions) -> Result<(C64, C64), VolterraError> {
    let c = w_column(field, k, 1, opts)?;
    Ok((c[1], c[0]))
}

/// (u*, v*) from the first column of H3(0, 0, ς). Bounded for Im(ς² − ½) ≥ 0.
pub fn compute_uv_star(field: &PotentialField, k: C64, opts: &VolterraOptions) -> Result<(C64, C64), VolterraError> {
    let c = w_column(field, k, 0, opts)?;
    Ok((c[0], -c[1]))
}

fn w_column(field: &PotentialField, k: C64, col: usize, opts: &VolterraOptions) -> Result<Col2, VolterraError> {
    let slice = field.slice(0.0)?;
    column_z(&slice, k, col, slice.z_max(), 0.0, unit(col), opts, |_, _| {})
}

/// Column `col` of W = H2(0, 0), integrated backward in t from T at z = 0.
pub fn big_w_column(trace: &BoundaryTrace, k: C64, col: usize, opts: &VolterraOptions) -> Result<Col2, VolterraError> {
    column_t(trace, k, col, trace.t_max(), 0.0, unit(col), opts, |_, _| {})
}

/// (U, V) from the second column of W.
pub fn compute_big_uv(trace: &BoundaryTrace, k: C64, opts: &VolterraOptions) -> Result<(C64, C64), VolterraError> {
    let c = big_w_column(trace, k, 1, opts)?;
    Ok((c[1], c[0]))
}

/// (U*, V*) from the first column of W.
pub fn compute_big_uv_star(
    trace: &BoundaryTrace,
    k: C64,
    opts: &VolterraOptions,
) -> Result<(C64, C64), VolterraError> {
    let c = big_w_column(trace, k, 0, opts)?;
    Ok((c[0], -c[1]))
}

/// Independent route to (U, V): W⁻¹ = e^{2iλ²Tσ̂} H1(0, T), integrated forward from t = 0.
pub fn compute_big_uv_forward(
    trace: &BoundaryTrace,
    k: C64,
    opts: &VolterraOptions,
) -> Result<(C64, C64), VolterraError> {
    let t = trace.t_max();
    // W⁻¹ = (U, −V; V*, U*) so U = H1₁₁(0,T) and V = −e^{4iλ²T} H1₁₂(0,T)
    let c1 = column_t(trace, k, 0, 0.0, t, unit(0), opts, |_, _| {})?;
    let c2 = column_t(trace, k, 1, 0.0, t, unit(1), opts, |_, _| {})?;
    let l = crate::algebra::lambda(k);
    let phase = (crate::algebra::I * l * l * (4.0 * t)).exp();
    Ok((c1[0], -c2[0] * phase))
}

/// Spectral functions at one ς. Entries are `None` where the column they come from
/// is unbounded (or failed to integrate).
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub k: C64,
    pub u: Option<C64>,
    pub v: Option<C64>,
    pub u_star: Option<C64>,
    pub v_star: Option<C64>,
    pub big_u: Option<C64>,
    pub big_v: Option<C64>,
    pub big_u_star: Option<C64>,
    pub big_v_star: Option<C64>,
}

impl SpectralPoint {
    /// Evaluates every column at ς, keeping whichever stay bounded.
    pub fn compute(field: &PotentialField, k: C64, opts: &VolterraOptions) -> Result<Self, VolterraError> {
        let keep = |r: Result<(C64, C64), VolterraError>| match r {
            Ok(p) => Ok(Some(p)),
            Err(VolterraError::RegionViolation { .. }) => Ok(None),
            Err(e) => Err(e),
        };
        let uv = keep(compute_uv(field, k, opts))?;
        let uvs = keep(compute_uv_star(field, k, opts))?;
        let big = keep(compute_big_uv(&field.trace, k, opts))?;
        let bigs = keep(compute_big_uv_star(&field.trace, k, opts))?;
        Ok(Self {
            k,
            u: uv.map(|p| p.0),
            v: uv.map(|p| p.1),
            u_star: uvs.map(|p| p.0),
            v_star: uvs.map(|p| p.1),
            big_u: big.map(|p| p.0),
            big_v: big.map(|p| p.1),
            big_u_star: bigs.map(|p| p.0),
            big_v_star: bigs.map(|p| p.1),
        })
    }

    /// The point for zero data.
    pub fn trivial(k: C64) -> Self {
        let one = Some(C64::new(1.0, 0.0));
        let zero = Some(C64::new(0.0, 0.0));
        Self { k, u: one, v: zero, u_star: one, v_star: zero, big_u: one, big_v: zero, big_u_star: one, big_v_star: zero }
    }

    /// u u* + v v* (= det w).
    pub fn det_w(&self) -> Option<C64> {
        Some(self.u? * self.u_star? + self.v? * self.v_star?)
    }

    /// U U* + V V* (= det W).
    pub fn det_big_w(&self) -> Option<C64> {
        Some(self.big_u? * self.big_u_star? + self.big_v? * self.big_v_star?)
    }
}

/// Spectral functions on a list of ς.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralData {
    pub t_max: f64,
    pub points: Vec<SpectralPoint>,
}

impl SpectralData {
    /// Parallel sweep; results land in input order.
    pub fn sweep(field: &PotentialField, ks: &[C64], opts: &VolterraOptions) -> Result<Self, VolterraError> {
        let points = ks.par_iter().map(|&k| SpectralPoint::compute(field, k, opts)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self { t_max: field.grid.t_max, points })
    }
}

pub const DIVISION_FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DerivedData {
    /// β = u U* + s·v V* with s = `beta_sign` (default +1).
    pub beta: Option<C64>,
    /// β* = u* U + s·v* V.
    pub beta_star: Option<C64>,
    /// δ = v / u*.
    pub delta: Option<C64>,
    /// δ* = v* / u.
    pub delta_star: Option<C64>,
    /// Δ = −V* / (u β).
    pub cap_delta: Option<C64>,
    /// Δ* = −V / (u* β*).
    pub cap_delta_star: Option<C64>,
}

fn guarded(num: C64, den: C64) -> Option<C64> {
    (den.norm() > DIVISION_FLOOR).then(|| num / den)
}

/// β, δ, Δ and their starred partners wherever their inputs exist and denominators
/// clear the floor.
pub fn derived_quantities(p: &SpectralPoint, beta_sign: f64) -> DerivedData {
    let beta = (|| Some(p.u? * p.big_u_star? + p.v? * p.big_v_star? * beta_sign))();
    let beta_star = (|| Some(p.u_star? * p.big_u? + p.v_star? * p.big_v? * beta_sign))();
    DerivedData {
        beta,
        beta_star,
        delta: (|| guarded(p.v?, p.u_star?))(),
        delta_star: (|| guarded(p.v_star?, p.u?))(),
        cap_delta: (|| guarded(-p.big_v_star?, p.u? * beta?))(),
        cap_delta_star: (|| guarded(-p.big_v?, p.u_star? * beta_star?))(),
    }
}

/// Like [`derived_quantities`] but fails when any of the named quantities is missing.
pub fn require(value: Option<C64>, what: &'static str) -> Result<C64, SpectralError> {
    value.ok_or(SpectralError::DivisionFloor(what))
}
