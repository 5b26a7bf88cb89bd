//! Field directories: `manifest.json`, `field.csv` and the fine boundary trace `trace.csv`.

use super::field::{BoundaryTrace, FieldMeta, PotentialField, SCHEMA_VERSION};
use super::grid::{GridSpec, STABILITY_C};
use super::PotentialError;
use crate::algebra::C64;
use crate::io::{fmt_f64, hash_file, parse_f64, write_csv};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;

pub const FIELD_HEADER: [&str; 7] = ["z", "t", "re_r", "im_r", "re_rz", "im_rz", "theta_cum"];
pub const TRACE_HEADER: [&str; 6] = ["t", "re_s0", "im_s0", "re_s1", "im_s1", "theta_t"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scheme {
    pub name: String,
    pub order: u32,
    pub stability_c: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub crate_version: String,
    pub grid: GridSpec,
    pub scheme: Scheme,
    pub preset: String,
    pub params: serde_json::Value,
    pub right_boundary: String,
    /// SHA-256 of each data file in the directory.
    pub hashes: BTreeMap<String, String>,
}

pub fn write_field_dir(field: &PotentialField, dir: &Path) -> Result<Manifest, PotentialError> {
    std::fs::create_dir_all(dir)?;
    let g = &field.grid;
    let mut rows = Vec::with_capacity(field.r.len());
    for n in 0..field.levels() {
        let t = g.t_level(n);
        for i in 0..=g.nz {
            let k = field.idx(n, i);
            let (r, rz) = (field.r[k], field.rz[k]);
            rows.push(vec![g.z_node(i), t, r.re, r.im, rz.re, rz.im, field.theta_cum(n, i)]);
        }
    }
    write_csv(&dir.join("field.csv"), &FIELD_HEADER, rows.iter().map(|r| r.iter().map(|&x| fmt_f64(x))))?;
    let tr = &field.trace;
    let trace_rows = (0..tr.s0.len()).map(|j| {
        [j as f64 * tr.dt, tr.s0[j].re, tr.s0[j].im, tr.s1[j].re, tr.s1[j].im, tr.theta[j]].map(fmt_f64)
    });
    write_csv(&dir.join("trace.csv"), &TRACE_HEADER, trace_rows)?;
    let mut hashes = BTreeMap::new();
    for name in ["field.csv", "trace.csv"] {
        hashes.insert(name.to_string(), hash_file(&dir.join(name))?);
    }
    let manifest = Manifest {
        schema_version: SCHEMA_VERSION,
        crate_version: env!("CARGO_PKG_VERSION").to_string(),
        grid: *g,
        scheme: Scheme { name: "mol-fd4-rk4".into(), order: 4, stability_c: STABILITY_C },
        preset: field.meta.preset.clone(),
        params: field.meta.params.clone(),
        right_boundary: field.meta.right_boundary.clone(),
        hashes,
    };
    std::fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest)? + "\n")?;
    Ok(manifest)
}

pub fn read_manifest(dir: &Path) -> Result<Manifest, PotentialError> {
    let text = std::fs::read_to_string(dir.join("manifest.json"))?;
    Ok(serde_json::from_str(&text)?)
}

/// Checks every recorded hash against the files on disk.
pub fn verify_hashes(dir: &Path, manifest: &Manifest) -> Result<(), PotentialError> {
    for (name, expect) in &manifest.hashes {
        let got = hash_file(&dir.join(name))?;
        if &got != expect {
            return Err(PotentialError::HashMismatch(name.clone()));
        }
    }
    Ok(())
}

fn read_rows(path: &Path, header: &[&str]) -> Result<Vec<Vec<f64>>, PotentialError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_path(path)?;
    let got: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    if got != header {
        return Err(PotentialError::Format(format!("{}: unexpected header {:?}", path.display(), got)));
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let row = rec.iter().map(parse_f64).collect::<Result<Vec<_>, _>>().map_err(PotentialError::Format)?;
        if row.len() != header.len() {
            return Err(PotentialError::Format(format!("{}: short row", path.display())));
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Loads a field directory after verifying its hashes.
pub fn read_field_dir(dir: &Path) -> Result<PotentialField, PotentialError> {
    let manifest = read_manifest(dir)?;
    if manifest.schema_version != SCHEMA_VERSION {
        return Err(PotentialError::Format(format!("schema version {} unsupported", manifest.schema_version)));
    }
    verify_hashes(dir, &manifest)?;
    let grid = manifest.grid;
    grid.validate()?;
    let trace_rows = read_rows(&dir.join("trace.csv"), &TRACE_HEADER)?;
    if trace_rows.len() != grid.nt + 1 {
        return Err(PotentialError::Format("trace.csv length does not match grid".into()));
    }
    let trace = BoundaryTrace {
        dt: grid.dt(),
        s0: trace_rows.iter().map(|r| C64::new(r[1], r[2])).collect(),
        s1: trace_rows.iter().map(|r| C64::new(r[3], r[4])).collect(),
        theta: trace_rows.iter().map(|r| r[5]).collect(),
    };
    let rows = read_rows(&dir.join("field.csv"), &FIELD_HEADER)?;
    let m = grid.nz + 1;
    let levels = grid.n_saved() + 1;
    if rows.len() != m * levels {
        return Err(PotentialError::Format("field.csv length does not match grid".into()));
    }
    let theta_cum_t: Vec<f64> = (0..levels).map(|n| trace.theta[n * grid.save_every]).collect();
    let field = PotentialField {
        grid,
        r: rows.iter().map(|r| C64::new(r[2], r[3])).collect(),
        rz: rows.iter().map(|r| C64::new(r[4], r[5])).collect(),
        theta_cum_z: rows.iter().enumerate().map(|(k, r)| r[6] - theta_cum_t[k / m]).collect(),
        theta_cum_t,
        trace,
        meta: FieldMeta { preset: manifest.preset, params: manifest.params, right_boundary: manifest.right_boundary },
        schema_version: manifest.schema_version,
    };
    Ok(field)
}
