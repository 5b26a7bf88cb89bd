//! The potential r(z,t) on the quarter plane: data, direct solver, sampling, persistence.

pub mod data;
pub mod field;
pub mod grid;
pub mod io;
pub mod solver;

pub use data::{plane_wave_omega, HermiteTrace, IBData, Profile, RightBoundary, Signal, Table};
pub use field::{conservation_residual, BoundaryTrace, FieldMeta, FieldSlice, PotentialField, Sample};
pub use grid::{GridSpec, STABILITY_C};
pub use io::{read_field_dir, read_manifest, verify_hashes, write_field_dir, Manifest};
pub use solver::{consistent_data, simulate, solve_ibvp, whole_line_trace};

#[derive(Debug, thiserror::Error)]
pub enum PotentialError {
    #[error("time step {dt:e} exceeds the stability bound {bound:e}")]
    StabilityViolation { dt: f64, bound: f64 },
    #[error("solution blew up at t = {t}")]
    BlowUp { t: f64 },
    #[error("corner mismatch |r0(0) − s0(0)| = {0:e}")]
    CornerMismatch(f64),
    #[error("initial datum does not decay at the truncation point: |r0| = {0:e}")]
    NotDecaying(f64),
    #[error("point (z = {z}, t = {t}) lies outside the domain")]
    OutOfDomain { z: f64, t: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("hash mismatch for {0}")]
    HashMismatch(String),
    #[error("malformed field data: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
