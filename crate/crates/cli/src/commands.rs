//! One function per subcommand. Each reads the config, writes its artifacts into
//! `out_dir` and returns a summary; failures carry their exit code.

use crate::checks::{self, Check};
use crate::config::RunConfig;
use crate::error::{field_error, CliError};
use fokas_core::algebra::C64;
use fokas_core::inverse::{recover_boundary, reconstruct_field, write_boundary_csv, write_reconstruction_csv};
use fokas_core::io::{fmt_f64, write_csv};
use fokas_core::potential::{conservation_residual, read_field_dir, solve_ibvp, write_field_dir, PotentialField};
use fokas_core::spectral::{
    compute_big_uv, compute_uv, default_grid, derived_quantities, evaluate_e_in, find_zeros, jump_matrix,
    residue_coefficients, write_spectral_csv, write_zeros_json, FieldSource, Ray, Residue, SearchBox, SpectralData,
    SpectralPoint, ZeroFamily, ZeroSet,
};
use fokas_core::volterra::{Which, VolterraOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::path::{Path, PathBuf};

fn require_out_dir(cfg: &RunConfig) -> Result<&Path, CliError> {
    if !cfg.out_dir.is_dir() {
        return Err(CliError::Config(format!("output directory {} does not exist", cfg.out_dir.display())));
    }
    Ok(&cfg.out_dir)
}

pub fn load_field(cfg: &RunConfig) -> Result<PotentialField, CliError> {
    read_field_dir(&cfg.field_path()).map_err(field_error)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(CliError::io)?;
    std::fs::write(path, text + "\n").map_err(CliError::io)
}

pub fn cmd_simulate(cfg: &RunConfig) -> Result<PathBuf, CliError> {
    cfg.validate()?;
    require_out_dir(cfg)?;
    let data = cfg.ib_data()?;
    let field = solve_ibvp(&data, &cfg.grid()).map_err(|e| CliError::Solver(e.to_string()))?;
    let dir = cfg.field_path();
    write_field_dir(&field, &dir).map_err(CliError::io)?;
    Ok(dir)
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectralSummary {
    pub points: usize,
    pub parity: f64,
    pub parity_pass: bool,
    pub zeros: usize,
}

pub fn cmd_spectral(cfg: &RunConfig) -> Result<SpectralSummary, CliError> {
    cfg.validate()?;
    let out = require_out_dir(cfg)?;
    let field = load_field(cfg)?;
    let opts = cfg.volterra();
    let ks = default_grid(cfg.points_per_ray, cfg.rho_max);
    let data = SpectralData::sweep(&field, &ks, &opts).map_err(|e| CliError::Solver(e.to_string()))?;
    let gr = checks::global_column(&field, &ks, &opts);
    write_spectral_csv(&out.join("spectral.csv"), &data, &gr, cfg.beta_sign).map_err(CliError::io)?;
    let (sets, residues) = zeros_for(&field, cfg);
    write_zeros_json(&out.join("zeros.json"), &sets, &residues).map_err(CliError::io)?;
    let parity = checks::parity_error(&data);
    Ok(SpectralSummary {
        points: ks.len(),
        parity,
        parity_pass: parity <= cfg.tol_parity,
        zeros: sets.iter().map(|s| s.zeros.len()).sum(),
    })
}

fn nan() -> C64 {
    C64::new(f64::NAN, f64::NAN)
}

/// Zeros of u and U in the D2 box and of β in the D1 box, with residues. A family
/// whose search fails is reported on stderr and left empty.
pub fn zeros_for(field: &PotentialField, cfg: &RunConfig) -> (Vec<ZeroSet>, Vec<Residue>) {
    let opts = cfg.volterra();
    let u = |k: C64| compute_uv(field, k, &opts).map_or(nan(), |p| p.0);
    let big_u = |k: C64| compute_big_uv(&field.trace, k, &opts).map_or(nan(), |p| p.0);
    let beta = |k: C64| {
        SpectralPoint::compute(field, k, &opts)
            .ok()
            .and_then(|p| derived_quantities(&p, cfg.beta_sign).beta)
            .unwrap_or(nan())
    };
    let families: [(ZeroFamily, &dyn Fn(C64) -> C64, SearchBox); 3] = [
        (ZeroFamily::Xi, &u, cfg.box_d2()),
        (ZeroFamily::Mu, &beta, cfg.box_d1()),
        (ZeroFamily::Epsilon, &big_u, cfg.box_d2()),
    ];
    let src = FieldSource { field, opts };
    let (mut sets, mut residues) = (Vec::new(), Vec::new());
    for (family, f, b) in families {
        let set = match find_zeros(&f, &b, 1.0, Some(family)) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("warning: zero search for {family:?} failed: {e}");
                ZeroSet { family: Some(family), zeros: Vec::new() }
            }
        };
        match residue_coefficients(&set, &src, cfg.beta_sign) {
            Ok(r) => residues.extend(r),
            Err(e) => eprintln!("warning: residues for {family:?} failed: {e}"),
        }
        sets.push(set);
    }
    (sets, residues)
}

pub fn cmd_zeros(cfg: &RunConfig) -> Result<usize, CliError> {
    cfg.validate()?;
    let out = require_out_dir(cfg)?;
    let field = load_field(cfg)?;
    let (sets, residues) = zeros_for(&field, cfg);
    write_zeros_json(&out.join("zeros.json"), &sets, &residues).map_err(CliError::io)?;
    Ok(sets.iter().map(|s| s.zeros.len()).sum())
}

pub const JUMP_HEADER: [&str; 6] = ["ray", "re_k", "im_k", "mismatch", "re_det_g", "im_det_g"];

/// Two-sided jump check at (jump_z, jump_t); one row per sample, returns the worst mismatch.
pub fn cmd_jump(cfg: &RunConfig) -> Result<f64, CliError> {
    cfg.validate()?;
    let out = require_out_dir(cfg)?;
    let field = load_field(cfg)?;
    let opts = cfg.volterra();
    let (z, t) = (cfg.jump_z, cfg.jump_t);
    let mut rows = Vec::new();
    let mut worst: f64 = 0.0;
    for ray in Ray::ALL {
        for k in checks::ray_samples(ray, cfg.jump_points, 0.1, 10.0) {
            let fail = |e: fokas_core::spectral::SpectralError| CliError::Solver(e.to_string());
            let p = SpectralPoint::compute(&field, k, &opts).map_err(|e| CliError::Solver(e.to_string()))?;
            let (plus, minus) = ray.sides();
            let ep = evaluate_e_in(&field, plus, z, t, k, &p, &opts, cfg.beta_sign).map_err(fail)?.e;
            let em = evaluate_e_in(&field, minus, z, t, k, &p, &opts, cfg.beta_sign).map_err(fail)?.e;
            let g = jump_matrix(ray, z, t, &p, cfg.beta_sign).map_err(fail)?;
            let miss = (em - ep * g).max_abs();
            worst = worst.max(miss);
            let d = g.det();
            rows.push(vec![ray.label().to_string(), fmt_f64(k.re), fmt_f64(k.im), fmt_f64(miss), fmt_f64(d.re), fmt_f64(d.im)]);
        }
    }
    write_csv(&out.join("jump.csv"), &JUMP_HEADER, rows).map_err(CliError::io)?;
    Ok(worst)
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub field: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// Runs every invariant suite; the report is written even when checks fail.
pub fn run_checks(field: &PotentialField, cfg: &RunConfig, opts: &VolterraOptions) -> Result<Vec<Check>, CliError> {
    let fail = |e: fokas_core::spectral::SpectralError| CliError::Solver(e.to_string());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    for which in [Which::H1, Which::H2, Which::H3] {
        let s = checks::admissible_samples(field, which, cfg.det_samples, cfg.det_lambda_max, &mut rng);
        let e = checks::det_h_error(field, which, &s, opts).map_err(fail)?;
        out.push(Check::new(&format!("det_{}", which.name()), e, cfg.tol_det));
    }
    let ks = default_grid(cfg.points_per_ray, cfg.rho_max);
    let data = SpectralData::sweep(field, &ks, opts).map_err(|e| CliError::Solver(e.to_string()))?;
    out.push(Check::new("parity", checks::parity_error(&data), cfg.tol_parity));
    let (dw, dbw) = checks::det_w_errors(field, 50, 3.0, opts).map_err(fail)?;
    out.push(Check::new("det_w", dw, cfg.tol_det_w));
    out.push(Check::new("det_W", dbw, cfg.tol_det_w));
    let jumps = checks::jump_mismatch(field, cfg.jump_z, cfg.jump_t, cfg.jump_points, opts, cfg.beta_sign).map_err(fail)?;
    for (ray, e) in jumps {
        out.push(Check::new(&format!("jump_{}", ray.label()), e, cfg.tol_jump));
    }
    let gr = checks::global_relation_error(field, &field.trace, &checks::d2_samples(20), opts).map_err(fail)?;
    out.push(Check::new("global_relation", gr, cfg.tol_global));
    out.push(Check::new("conservation", conservation_residual(field), cfg.tol_conservation));
    Ok(out)
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<VerifyReport, CliError> {
    cfg.validate()?;
    let out = require_out_dir(cfg)?;
    let field = load_field(cfg)?;
    let checks = run_checks(&field, cfg, &cfg.volterra())?;
    let pass = checks.iter().all(|c| c.pass);
    let report = VerifyReport { field: cfg.field_path().display().to_string(), seed: cfg.seed, checks, pass };
    write_json(&out.join("verify.json"), &report)?;
    let failed = report.checks.iter().filter(|c| !c.pass).count();
    if failed > 0 {
        for c in report.checks.iter().filter(|c| !c.pass) {
            eprintln!("FAIL {}: {:e} > {:e}", c.name, c.measured, c.threshold);
        }
        return Err(CliError::Verify(failed));
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct ReconstructReport {
    pub sup_abs: f64,
    pub l2: f64,
    pub interior_sup_rel: f64,
    pub s0_sup: f64,
    pub s1_sup: f64,
    /// Recovered boundary values are compared from this time on.
    pub boundary_layer: f64,
    pub warnings: Vec<String>,
}

/// Smallest ladder magnitude below which the expansion is not trusted.
pub const LADDER_WARN: f64 = 8.0;

pub fn cmd_reconstruct(cfg: &RunConfig) -> Result<ReconstructReport, CliError> {
    cfg.validate()?;
    let out = require_out_dir(cfg)?;
    let field = load_field(cfg)?;
    let opts = cfg.volterra();
    let ladder = cfg.ladder_spec();
    ladder.check()?;
    let rec = reconstruct_field(&field, &ladder, &opts)?;
    let b = recover_boundary(&field.trace, &ladder, &opts)?;
    write_reconstruction_csv(&out.join("reconstruction.csv"), &rec, &field).map_err(CliError::io)?;
    write_boundary_csv(&out.join("boundary.csv"), &b, cfg.boundary_stride).map_err(CliError::io)?;
    // recovered samples sit on the fine trace grid
    let (mut s0_sup, mut s1_sup) = (0.0f64, 0.0f64);
    for n in b.first_valid()..b.t.len() {
        let (s0, s1, _) = field.trace.sample(b.t[n]);
        s0_sup = s0_sup.max((b.s0[n] - s0).norm());
        s1_sup = s1_sup.max((b.s1[n] - s1).norm());
    }
    let mut warnings = Vec::new();
    let top = ladder.mags.iter().cloned().fold(0.0, f64::max);
    if top < LADDER_WARN {
        warnings.push(format!("ladder maximum |ς| = {top} is small; expect an inflated error"));
    }
    if rec.error.interior_sup_rel > cfg.tol_reconstruct {
        warnings.push(format!("interior relative error {:e} exceeds {:e}", rec.error.interior_sup_rel, cfg.tol_reconstruct));
    }
    if s0_sup.max(s1_sup) > cfg.tol_boundary {
        warnings.push(format!("boundary error {:e} exceeds {:e}", s0_sup.max(s1_sup), cfg.tol_boundary));
    }
    for w in &warnings {
        eprintln!("warning: {w}");
    }
    let report = ReconstructReport {
        sup_abs: rec.error.sup_abs,
        l2: rec.error.l2,
        interior_sup_rel: rec.error.interior_sup_rel,
        s0_sup,
        s1_sup,
        boundary_layer: b.layer,
        warnings,
    };
    write_json(&out.join("reconstruct.json"), &report)?;
    Ok(report)
}
