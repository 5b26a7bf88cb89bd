//! Numerical laboratory for the unified-transform analysis of the Chen–Lee–Liu
//! derivative NLS equation on the half-line.
//!
//! The crate is organised along the pipeline: [`potential`] manufactures a field,
//! [`volterra`] integrates eigenfunctions over it, [`spectral`] builds the
//! scattering data and Riemann–Hilbert data, and [`inverse`] goes back.

pub mod algebra;
pub mod io;
pub mod numerics;
pub mod potential;
pub mod inverse;
pub mod spectral;
pub mod volterra;

pub use algebra::{Mat2, Region, C64};
pub use potential::{GridSpec, PotentialField};
