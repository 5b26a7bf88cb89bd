//! Scattering data, the sectional function E and its Riemann–Hilbert data.

pub mod global;
pub mod grid;
pub mod io;
pub mod jump;
pub mod residues;
pub mod scattering;
pub mod sectional;
pub mod zeros;

pub use global::{c_plus, global_relation_residual};
pub use grid::{default_grid, ray_grid, symmetric_grid, DEFAULT_POINTS_PER_RAY, DEFAULT_RHO_MAX};
pub use io::{write_spectral_csv, write_zeros_json, SPECTRAL_HEADER};
pub use jump::{jump_matrix, Ray, RhpData, JumpSample};
pub use residues::{residue_coefficients, FieldSource, Residue, SpectralSource};
pub use scattering::{require, 
    compute_big_uv, compute_big_uv_forward, compute_big_uv_star, compute_uv, compute_uv_star, derived_quantities,
    DerivedData, SpectralData, SpectralPoint, DIVISION_FLOOR,
};
pub use sectional::{evaluate_e, evaluate_e_in, SectionalEval};
pub use zeros::{find_zeros, winding_number, SearchBox, Zero, ZeroFamily, ZeroSet};

use crate::volterra::VolterraError;

#[derive(Debug, thiserror::Error)]
pub enum SpectralError {
    #[error("denominator of {0} is below the division floor")]
    DivisionFloor(&'static str),
    #[error("box boundary passes too close to a zero")]
    WindingAmbiguous,
    #[error("Newton iteration did not converge near {0}")]
    NewtonDivergence(crate::algebra::C64),
    #[error("zero at {0} is not simple")]
    NonSimpleZero(crate::algebra::C64),
    #[error("point is on a region boundary; pass the region explicitly")]
    AmbiguousRegion,
    #[error(transparent)]
    Volterra(#[from] VolterraError),
}
