//! `spectral.csv` and `zeros.json`.

use super::residues::Residue;
use super::scattering::{derived_quantities, SpectralData};
use super::zeros::ZeroSet;
use crate::algebra::C64;
use crate::io::{fmt_f64, write_csv};
use serde::Serialize;
use std::path::Path;

pub const SPECTRAL_HEADER: [&str; 13] = [
    "re_k", "im_k", "re_u", "im_u", "re_v", "im_v", "re_U", "im_U", "re_V", "im_V", "re_beta", "im_beta", "gr_resid_abs",
];

fn push(row: &mut Vec<String>, x: Option<C64>) {
    let x = x.unwrap_or(C64::new(f64::NAN, f64::NAN));
    row.push(fmt_f64(x.re));
    row.push(fmt_f64(x.im));
}

/// One row per ς. Unavailable entries are written as NaN. `gr_resid` holds the
/// global-relation residual modulus where it was evaluated.
pub fn write_spectral_csv(
    path: &Path,
    data: &SpectralData,
    gr_resid: &[Option<f64>],
    beta_sign: f64,
) -> Result<(), csv::Error> {
    let rows = data.points.iter().enumerate().map(|(i, p)| {
        let mut row = vec![fmt_f64(p.k.re), fmt_f64(p.k.im)];
        push(&mut row, p.u);
        push(&mut row, p.v);
        push(&mut row, p.big_u);
        push(&mut row, p.big_v);
        push(&mut row, derived_quantities(p, beta_sign).beta);
        row.push(fmt_f64(gr_resid.get(i).copied().flatten().unwrap_or(f64::NAN)));
        row
    });
    write_csv(path, &SPECTRAL_HEADER, rows)
}

#[derive(Serialize)]
struct ZeroEntry {
    family: String,
    re: f64,
    im: f64,
    newton_residual: f64,
    residue: Option<[f64; 2]>,
}

/// Zero sets with their residue coefficients (matched by location).
pub fn write_zeros_json(path: &Path, sets: &[ZeroSet], residues: &[Residue]) -> std::io::Result<()> {
    let mut entries = Vec::new();
    for s in sets {
        for z in &s.zeros {
            let res = residues.iter().find(|r| !r.conjugate && r.location == z.location);
            entries.push(ZeroEntry {
                family: s.family.map(|f| format!("{f:?}")).unwrap_or_default(),
                re: z.location.re,
                im: z.location.im,
                newton_residual: z.residual,
                residue: res.map(|r| [r.coefficient.re, r.coefficient.im]),
            });
        }
    }
    let text = serde_json::to_string_pretty(&entries).map_err(std::io::Error::other)?;
    std::fs::write(path, text + "\n")
}
