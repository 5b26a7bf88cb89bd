//! Eigenfunctions of the gauge-transformed Lax pair and their large-ς expansion.

pub mod asymptotics;
pub mod eigen;
pub mod lax;
pub mod magnus;

pub use asymptotics::{
    asymptotic_coeffs, check_ladder, column_ray, default_ladder, fit_powers, ladder_on_ray, ladder_point, AsymptoticCoeffs,
    FitBasis,
};
pub use eigen::{
    column_on_slice, column_t, column_z, solve_column, solve_h, unit, write_eigen_csv, EigenfunctionEval, VolterraOptions,
    Which,
};
pub use magnus::Scheme;
pub use lax::{build_a, build_a1, build_b, build_b1, LaxMatrices};

use crate::potential::PotentialError;

#[derive(Debug, thiserror::Error)]
pub enum VolterraError {
    #[error("column left its region of boundedness near s = {at}")]
    RegionViolation { at: f64 },
    #[error("integrator failure: {0}")]
    IntegratorFailure(String),
    #[error("point (z = {z}, t = {t}) lies outside the domain")]
    OutOfDomain { z: f64, t: f64 },
    #[error("ill-conditioned asymptotic fit: {0}")]
    IllConditionedFit(String),
    #[error(transparent)]
    Potential(#[from] PotentialError),
}
