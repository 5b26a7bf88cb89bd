//! Complex 2×2 algebra, spectral phases, regions and the Θ density.

pub mod mat2;
pub mod phase;
pub mod theta;

pub use mat2::{expm, Col2, Mat2, C64, I, ONE, ZERO};
pub use phase::{
    default_region_tol, lambda, phase_eta, phase_phi, phase_psi, region_of, sigma_conj, Overflow, PhasePair,
    Region,
};
pub use theta::{conserved_flux, theta_density, ThetaDensity};
