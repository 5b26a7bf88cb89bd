//! Method-of-lines solver for r_t = i r_zz + i|r|²r + |r|²r_z.
//!
//! Fourth-order central differences in z (one-sided six-point closures next
//! to the Dirichlet nodes) and classical RK4 in t.

use super::data::{HermiteTrace, IBData, Profile, RightBoundary, Signal, DEFAULT_SPONGE};
use super::field::{BoundaryTrace, FieldMeta, PotentialField};
use super::grid::GridSpec;
use super::PotentialError;
use crate::algebra::{C64, I, ZERO};
use crate::numerics::left_derivative4;

const BLOWUP: f64 = 1e6;
const DECAY_TOL: f64 = 1e-8;
const CORNER_TOL: f64 = 1e-10;

/// Semi-discrete right-hand side on a uniform line with Dirichlet end nodes.
struct Mol {
    h: f64,
    gamma: Vec<f64>,
}

impl Mol {
    fn rhs(&self, u: &[C64], out: &mut [C64]) {
        let n = u.len() - 1;
        let s2 = 1.0 / (12.0 * self.h * self.h);
        let s1 = 1.0 / (12.0 * self.h);
        out[0] = ZERO;
        out[n] = ZERO;
        for i in 1..n {
            let (d2, d1) = if i == 1 {
                (
                    u[0] * 10.0 - u[1] * 15.0 - u[2] * 4.0 + u[3] * 14.0 - u[4] * 6.0 + u[5],
                    u[0] * -3.0 - u[1] * 10.0 + u[2] * 18.0 - u[3] * 6.0 + u[4],
                )
            } else if i == n - 1 {
                (
                    u[n] * 10.0 - u[n - 1] * 15.0 - u[n - 2] * 4.0 + u[n - 3] * 14.0 - u[n - 4] * 6.0 + u[n - 5],
                    u[n] * 3.0 + u[n - 1] * 10.0 - u[n - 2] * 18.0 + u[n - 3] * 6.0 - u[n - 4],
                )
            } else {
                (
                    -u[i - 2] + u[i - 1] * 16.0 - u[i] * 30.0 + u[i + 1] * 16.0 - u[i + 2],
                    u[i - 2] - u[i - 1] * 8.0 + u[i + 1] * 8.0 - u[i + 2],
                )
            };
            let a = u[i].norm_sqr();
            out[i] = I * (d2 * s2 + u[i] * a) + d1 * (s1 * a) - u[i] * self.gamma[i];
        }
    }
}

/// Quadratic damping ramp over the outer `frac` of each flagged side.
fn sponge_profile(n: usize, strength: f64, left: bool, right: bool) -> Vec<f64> {
    let width = ((n as f64) * 0.1).max(1.0);
    (0..=n)
        .map(|i| {
            let mut g = 0.0;
            let from_right = (n - i) as f64;
            if right && from_right < width {
                let s = 1.0 - from_right / width;
                g += strength * s * s;
            }
            if left && (i as f64) < width {
                let s = 1.0 - i as f64 / width;
                g += strength * s * s;
            }
            g
        })
        .collect()
}

struct Rk4 {
    mol: Mol,
    k: [Vec<C64>; 4],
    stage: Vec<C64>,
}

impl Rk4 {
    fn new(mol: Mol, len: usize) -> Self {
        let z = vec![ZERO; len];
        Self { mol, k: [z.clone(), z.clone(), z.clone(), z.clone()], stage: z }
    }

    /// Advances `u` by `dt`. `bc(c)` returns the left and right Dirichlet values with
    /// their time derivatives at fractional stage time c. Boundary stage values follow
    /// the RK recurrence applied to g' so the stages stay consistent with the interior
    /// (imposing g at stage times instead causes order reduction).
    fn step(&mut self, u: &mut [C64], dt: f64, bc: impl Fn(f64) -> [C64; 4]) {
        let n = u.len() - 1;
        let b0 = bc(0.0);
        let bh = bc(0.5);
        let b1 = bc(1.0);
        let [k1, k2, k3, k4] = &mut self.k;
        self.mol.rhs(u, k1);
        for i in 1..n {
            self.stage[i] = u[i] + k1[i] * (0.5 * dt);
        }
        self.stage[0] = b0[0] + b0[1] * (0.5 * dt);
        self.stage[n] = b0[2] + b0[3] * (0.5 * dt);
        self.mol.rhs(&self.stage, k2);
        for i in 1..n {
            self.stage[i] = u[i] + k2[i] * (0.5 * dt);
        }
        self.stage[0] = b0[0] + bh[1] * (0.5 * dt);
        self.stage[n] = b0[2] + bh[3] * (0.5 * dt);
        self.mol.rhs(&self.stage, k3);
        for i in 1..n {
            self.stage[i] = u[i] + k3[i] * dt;
        }
        self.stage[0] = b0[0] + bh[1] * dt;
        self.stage[n] = b0[2] + bh[3] * dt;
        self.mol.rhs(&self.stage, k4);
        for i in 1..n {
            u[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (dt / 6.0);
        }
        u[0] = b1[0];
        u[n] = b1[2];
    }
}

fn check_finite(u: &[C64], t: f64) -> Result<(), PotentialError> {
    if u.iter().any(|z| !z.is_finite() || z.norm() > BLOWUP) {
        return Err(PotentialError::BlowUp { t });
    }
    Ok(())
}

/// Solves the half-line problem on `grid` with Dirichlet data `s0` at z = 0.
pub fn solve_ibvp(data: &IBData, grid: &GridSpec) -> Result<PotentialField, PotentialError> {
    grid.validate()?;
    let corner = (data.r0.eval(0.0) - data.s0.eval(0.0)).norm();
    if corner > CORNER_TOL {
        return Err(PotentialError::CornerMismatch(corner));
    }
    let (nz, nt, dz, dt) = (grid.nz, grid.nt, grid.dz(), grid.dt());
    let gamma = match &data.right {
        RightBoundary::Sponge { strength } => {
            let tail = data.r0.eval(grid.z_max).norm();
            if tail > DECAY_TOL {
                return Err(PotentialError::NotDecaying(tail));
            }
            sponge_profile(nz, *strength, false, true)
        }
        RightBoundary::Dirichlet(_) => vec![0.0; nz + 1],
    };
    let right = |t: f64| match &data.right {
        RightBoundary::Sponge { .. } => (ZERO, ZERO),
        RightBoundary::Dirichlet(s) => (s.eval(t), s.derivative(t)),
    };
    let mut u: Vec<C64> = (0..=nz).map(|i| data.r0.eval(i as f64 * dz)).collect();
    u[0] = data.s0.eval(0.0);
    u[nz] = right(0.0).0;

    let mut rk = Rk4::new(Mol { h: dz, gamma }, nz + 1);
    let mut r = Vec::with_capacity((grid.n_saved() + 1) * (nz + 1));
    r.extend_from_slice(&u);
    let mut s0 = Vec::with_capacity(nt + 1);
    let mut s1 = Vec::with_capacity(nt + 1);
    s0.push(u[0]);
    s1.push(left_derivative4(&u, dz));
    for step in 0..nt {
        let t = step as f64 * dt;
        rk.step(&mut u, dt, |c| {
            let tc = t + c * dt;
            let (r, rd) = right(tc);
            [data.s0.eval(tc), data.s0.derivative(tc), r, rd]
        });
        s0.push(u[0]);
        s1.push(left_derivative4(&u, dz));
        if (step + 1) % grid.save_every == 0 {
            check_finite(&u, t + dt)?;
            r.extend_from_slice(&u);
        }
    }
    let trace = BoundaryTrace::new(dt, s0, s1);
    let (preset, params) = data.r0.label();
    let right_boundary = match data.right {
        RightBoundary::Sponge { .. } => "sponge",
        RightBoundary::Dirichlet(_) => "dirichlet",
    };
    let meta = FieldMeta { preset, params, right_boundary: right_boundary.into() };
    Ok(PotentialField::from_samples(*grid, r, trace, meta))
}

/// Runs the same scheme on the whole line [−Z, Z] with sponges on both sides and
/// returns the trace at z = 0 with its time derivative.
pub fn whole_line_trace(r0: &Profile, grid: &GridSpec) -> Result<HermiteTrace, PotentialError> {
    grid.validate()?;
    let (n, dz, dt) = (2 * grid.nz, grid.dz(), grid.dt());
    let mid = grid.nz;
    for z in [-grid.z_max, grid.z_max] {
        let tail = r0.eval(z).norm();
        if tail > DECAY_TOL {
            return Err(PotentialError::NotDecaying(tail));
        }
    }
    let gamma = sponge_profile(n, DEFAULT_SPONGE, true, true);
    let mut u: Vec<C64> = (0..=n).map(|i| r0.eval((i as f64 - mid as f64) * dz)).collect();
    u[0] = ZERO;
    u[n] = ZERO;
    let mut rk = Rk4::new(Mol { h: dz, gamma }, n + 1);
    let mut slope_buf = vec![ZERO; n + 1];
    let mut value = Vec::with_capacity(grid.nt + 1);
    let mut slope = Vec::with_capacity(grid.nt + 1);
    let mut record = |u: &[C64], rk: &Rk4, value: &mut Vec<C64>, slope: &mut Vec<C64>| {
        rk.mol.rhs(u, &mut slope_buf);
        value.push(u[mid]);
        slope.push(slope_buf[mid]);
    };
    record(&u, &rk, &mut value, &mut slope);
    for step in 0..grid.nt {
        rk.step(&mut u, dt, |_| [ZERO; 4]);
        if (step + 1) % grid.save_every == 0 {
            check_finite(&u, (step + 1) as f64 * dt)?;
        }
        record(&u, &rk, &mut value, &mut slope);
    }
    Ok(HermiteTrace { dt, value, slope })
}

/// Builds consistent half-line data for `r0`: decaying profiles get their
/// Dirichlet trace from a whole-line run, plane waves use the closed form.
pub fn consistent_data(r0: &Profile, grid: &GridSpec) -> Result<IBData, PotentialError> {
    match r0 {
        Profile::Zero => Ok(IBData::zero()),
        Profile::PlaneWave { amp, kappa } => Ok(IBData::plane_wave(*amp, *kappa, grid.z_max)),
        _ => {
            let trace = whole_line_trace(r0, grid)?;
            Ok(IBData {
                r0: r0.clone(),
                s0: Signal::Hermite(trace),
                right: RightBoundary::Sponge { strength: DEFAULT_SPONGE },
            })
        }
    }
}

/// Convenience: consistent data followed by the half-line solve.
pub fn simulate(r0: &Profile, grid: &GridSpec) -> Result<PotentialField, PotentialError> {
    let data = consistent_data(r0, grid)?;
    solve_ibvp(&data, grid)
}
