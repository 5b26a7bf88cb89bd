use super::PotentialError;
use serde::{Deserialize, Serialize};

/// RK4 with the fourth-order Laplacian is stable on the imaginary axis for
/// dt·(16/3)/dz² ≤ 2√2; the constant keeps a margin below 0.53.
pub const STABILITY_C: f64 = 0.5;

/// Uniform space-time grid on (0, Z] × (0, T].
///
/// `nt` is the number of solver steps; every `save_every`-th level is stored.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub z_max: f64,
    pub t_max: f64,
    pub nz: usize,
    pub nt: usize,
    pub save_every: usize,
}

impl GridSpec {
    /// Smallest stable step count that is a multiple of `n_saved`.
    pub fn stable(z_max: f64, t_max: f64, nz: usize, n_saved: usize) -> Self {
        let dz = z_max / nz as f64;
        let min_steps = (t_max / (STABILITY_C * dz * dz)).ceil() as usize;
        let per = min_steps.div_ceil(n_saved).max(1);
        Self { z_max, t_max, nz, nt: per * n_saved, save_every: per }
    }

    pub fn dz(&self) -> f64 {
        self.z_max / self.nz as f64
    }

    pub fn dt(&self) -> f64 {
        self.t_max / self.nt as f64
    }

    pub fn n_saved(&self) -> usize {
        self.nt / self.save_every
    }

    /// Spacing of stored time levels.
    pub fn dt_saved(&self) -> f64 {
        self.dt() * self.save_every as f64
    }

    pub fn z_node(&self, i: usize) -> f64 {
        i as f64 * self.dz()
    }

    pub fn t_level(&self, n: usize) -> f64 {
        (n * self.save_every) as f64 * self.dt()
    }

    pub fn validate(&self) -> Result<(), PotentialError> {
        let bad = |m: String| Err(PotentialError::InvalidGrid(m));
        if !(self.z_max > 0.0 && self.z_max.is_finite()) {
            return bad(format!("Z must be positive, got {}", self.z_max));
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return bad(format!("T must be positive, got {}", self.t_max));
        }
        if self.nz < 16 || self.nt < 16 {
            return bad(format!("need Nz ≥ 16 and Nt ≥ 16, got {} and {}", self.nz, self.nt));
        }
        if self.save_every == 0 || self.nt % self.save_every != 0 || self.n_saved() < 4 {
            return bad(format!("save_every {} must divide Nt {} into at least 4 levels", self.save_every, self.nt));
        }
        let bound = STABILITY_C * self.dz() * self.dz();
        if self.dt() > bound * (1.0 + 1e-12) {
            return Err(PotentialError::StabilityViolation { dt: self.dt(), bound });
        }
        Ok(())
    }
}
