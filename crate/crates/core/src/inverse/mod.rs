//! From eigenfunction asymptotics back to the potential and its boundary values.

pub mod boundary;
pub mod io;
pub mod reconstruct;
pub mod rhp;

pub use boundary::{initial_layer, recover_boundary, BoundaryRecovery, BOUNDARY_REFINEMENT};
pub use io::{write_boundary_csv, write_reconstruction_csv, BOUNDARY_HEADER, RECONSTRUCTION_HEADER};
pub use reconstruct::{reconstruct_field, theta_from_h, ErrorReport, LadderSpec, Reconstruction};
pub use rhp::{assemble_t_rhp, assemble_x_rhp};

use crate::algebra::C64;
use crate::volterra::VolterraError;
use nalgebra::DMatrix;

#[derive(Debug, thiserror::Error)]
pub enum InverseError {
    #[error("ladder inadmissible: {0}")]
    LadderInadmissible(String),
    #[error(transparent)]
    Volterra(#[from] VolterraError),
    #[error(transparent)]
    Spectral(#[from] crate::spectral::SpectralError),
}

/// Rows of the least-squares pseudo-inverse for y(ς) ≈ Σ c_p ς^{−p}, so that
/// c_p = Σ_j w[p][j] y(ς_j). The same weights serve every grid node.
pub(crate) fn fit_weights(ks: &[C64], powers: &[i32]) -> Result<Vec<Vec<C64>>, InverseError> {
    let (n, p) = (ks.len(), powers.len());
    if n < p {
        return Err(InverseError::LadderInadmissible(format!("{n} ladder points for {p} unknowns")));
    }
    let s0 = ks.iter().map(|k| k.norm()).fold(f64::INFINITY, f64::min);
    let a = DMatrix::from_fn(n, p, |i, j| (ks[i] / s0).powi(-powers[j]));
    let svd = a.svd(true, true);
    let (smax, smin) = (svd.singular_values.max(), svd.singular_values.min());
    if !(smin > 1e-12 * smax) {
        return Err(InverseError::LadderInadmissible(format!("condition number {:e}", smax / smin)));
    }
    let pinv = svd.pseudo_inverse(1e-14 * smax).map_err(|e| InverseError::LadderInadmissible(e.to_string()))?;
    Ok((0..p).map(|q| (0..n).map(|j| pinv[(q, j)] * s0.powi(powers[q])).collect()).collect())
}

pub(crate) fn apply_weights(w: &[C64], ys: &[C64]) -> C64 {
    w.iter().zip(ys).map(|(a, b)| a * b).sum()
}

/// Richardson combination of values at ladder scales 1 and `ratio` with error ∝ scale^{−p}.
pub(crate) fn richardson(coarse: C64, fine: C64, ratio: f64, p: i32) -> C64 {
    let f = ratio.powi(p);
    (fine * f - coarse) / (f - 1.0)
}
