//! The sectional function E assembled from H1, H2, H3 and the scattering data.

use super::scattering::{derived_quantities, require, SpectralPoint};
use super::SpectralError;
use crate::algebra::{default_region_tol, region_of, Col2, Mat2, Region, C64};
use crate::potential::PotentialField;
use crate::volterra::{column_on_slice, VolterraOptions, Which};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SectionalEval {
    pub e: Mat2,
    pub region: Region,
}

fn scale(c: Col2, s: C64) -> Col2 {
    [c[0] * s, c[1] * s]
}

/// E(z, t, ς) using the branch of `region`. ς may sit on the closure of that
/// region, which is how the two one-sided limits on a ray are taken.
pub fn evaluate_e_in(
    field: &PotentialField,
    region: Region,
    z: f64,
    t: f64,
    k: C64,
    spec: &SpectralPoint,
    opts: &VolterraOptions,
    beta_sign: f64,
) -> Result<SectionalEval, SpectralError> {
    let slice = field.slice(t).map_err(crate::volterra::VolterraError::from)?;
    let col = |w: Which, c: usize| column_on_slice(w, field, &slice, z, k, c, opts);
    let d = derived_quantities(spec, beta_sign);
    let floor = |x: C64, what| if x.norm() > super::DIVISION_FLOOR { Ok(x) } else { Err(SpectralError::DivisionFloor(what)) };
    let (c1, c2) = match region {
        Region::D1 => {
            let beta = floor(require(d.beta, "beta")?, "beta")?;
            (scale(col(Which::H2, 0)?, 1.0 / beta), col(Which::H3, 1)?)
        }
        Region::D2 => {
            let u = floor(require(spec.u, "u")?, "u")?;
            (scale(col(Which::H1, 0)?, 1.0 / u), col(Which::H3, 1)?)
        }
        Region::D3 => {
            let bs = floor(require(d.beta_star, "beta*")?, "beta*")?;
            (col(Which::H3, 0)?, scale(col(Which::H2, 1)?, 1.0 / bs))
        }
        Region::D4 => {
            let us = floor(require(spec.u_star, "u*")?, "u*")?;
            (col(Which::H3, 0)?, scale(col(Which::H1, 1)?, 1.0 / us))
        }
        Region::Boundary => return Err(SpectralError::AmbiguousRegion),
    };
    Ok(SectionalEval { e: Mat2::from_cols(c1, c2), region })
}

/// E(z, t, ς) for ς in the open interior of a region.
pub fn evaluate_e(
    field: &PotentialField,
    z: f64,
    t: f64,
    k: C64,
    opts: &VolterraOptions,
    beta_sign: f64,
) -> Result<SectionalEval, SpectralError> {
    let region = region_of(k, default_region_tol(k));
    if region == Region::Boundary {
        return Err(SpectralError::AmbiguousRegion);
    }
    let spec = SpectralPoint::compute(field, k, opts)?;
    evaluate_e_in(field, region, z, t, k, &spec, opts, beta_sign)
}
