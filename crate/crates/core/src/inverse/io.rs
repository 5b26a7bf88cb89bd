//! `reconstruction.csv` and `boundary.csv`.

use super::{BoundaryRecovery, Reconstruction};
use crate::io::{fmt_f64, write_csv};
use crate::potential::PotentialField;
use std::path::Path;

pub const RECONSTRUCTION_HEADER: [&str; 5] = ["z", "t", "re_r_rec", "im_r_rec", "abs_err"];
pub const BOUNDARY_HEADER: [&str; 5] = ["t", "re_s0", "im_s0", "re_s1", "im_s1"];

/// One row per (t, z) node, t outer.
pub fn write_reconstruction_csv(path: &Path, rec: &Reconstruction, field: &PotentialField) -> Result<(), csv::Error> {
    let nodes = rec.z.len();
    let rows = rec.r_rec.iter().enumerate().map(|(j, r)| {
        let (n, i) = (j / nodes, j % nodes);
        let err = (r - field.r[field.idx(n, i)]).norm();
        vec![fmt_f64(rec.z[i]), fmt_f64(rec.t[n]), fmt_f64(r.re), fmt_f64(r.im), fmt_f64(err)]
    });
    write_csv(path, &RECONSTRUCTION_HEADER, rows)
}

/// Every `stride`-th recovered sample.
pub fn write_boundary_csv(path: &Path, b: &BoundaryRecovery, stride: usize) -> Result<(), csv::Error> {
    let rows = (0..b.t.len()).step_by(stride.max(1)).map(|n| {
        vec![fmt_f64(b.t[n]), fmt_f64(b.s0[n].re), fmt_f64(b.s0[n].im), fmt_f64(b.s1[n].re), fmt_f64(b.s1[n].im)]
    });
    write_csv(path, &BOUNDARY_HEADER, rows)
}
