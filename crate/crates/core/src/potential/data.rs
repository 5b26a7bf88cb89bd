//! Initial and boundary data: closed-form presets and tabulated signals.

use crate::algebra::{C64, I};
use crate::numerics::interp_nonuniform;
use serde::{Deserialize, Serialize};

/// Frequency of the plane wave a·e^{i(κz − ωt)} solving the equation.
pub fn plane_wave_omega(amp: f64, kappa: f64) -> f64 {
    kappa * kappa - amp * amp - amp * amp * kappa
}

/// A complex function sampled at increasing abscissae, read back by cubic interpolation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub x: Vec<f64>,
    pub y: Vec<C64>,
}

impl Table {
    pub fn new(x: Vec<f64>, y: Vec<C64>) -> Result<Self, String> {
        if x.len() != y.len() || x.len() < 4 {
            return Err(format!("table needs ≥ 4 matched samples, got {} and {}", x.len(), y.len()));
        }
        if x.windows(2).any(|w| w[1] <= w[0]) {
            return Err("table abscissae must increase strictly".into());
        }
        Ok(Self { x, y })
    }

    pub fn eval(&self, x: f64) -> C64 {
        if x <= self.x[0] {
            return self.y[0];
        }
        if x >= *self.x.last().unwrap() {
            return *self.y.last().unwrap();
        }
        interp_nonuniform(&self.x, &self.y, x)
    }
}

/// Initial profile r0(z).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Profile {
    Zero,
    PlaneWave { amp: f64, kappa: f64 },
    Gaussian { amp: f64, width: f64, center: f64 },
    /// Box of half-width `half_width` with tanh edges of thickness `edge`.
    SmoothBox { amp: f64, half_width: f64, edge: f64 },
    Sech { amp: f64, width: f64 },
    Table(Table),
}

impl Profile {
    pub fn eval(&self, z: f64) -> C64 {
        match self {
            Profile::Zero => C64::new(0.0, 0.0),
            Profile::PlaneWave { amp, kappa } => (I * (kappa * z)).exp() * *amp,
            Profile::Gaussian { amp, width, center } => {
                let s = (z - center) / width;
                C64::new(amp * (-s * s).exp(), 0.0)
            }
            Profile::SmoothBox { amp, half_width, edge } => {
                let v = 0.5 * ((z + half_width) / edge).tanh() - 0.5 * ((z - half_width) / edge).tanh();
                C64::new(amp * v, 0.0)
            }
            Profile::Sech { amp, width } => C64::new(amp / (z / width).cosh(), 0.0),
            Profile::Table(t) => t.eval(z),
        }
    }

    /// Preset name and parameters for manifests.
    pub fn label(&self) -> (String, serde_json::Value) {
        use serde_json::json;
        let (name, params) = match self {
            Profile::Zero => ("zero", json!({})),
            Profile::PlaneWave { amp, kappa } if *kappa == 0.0 => ("uniform", json!({ "amp": amp })),
            Profile::PlaneWave { amp, kappa } => ("plane_wave", json!({ "amp": amp, "kappa": kappa })),
            Profile::Gaussian { amp, width, center } => {
                ("gaussian", json!({ "amp": amp, "width": width, "center": center }))
            }
            Profile::SmoothBox { amp, half_width, edge } => {
                ("box", json!({ "amp": amp, "half_width": half_width, "edge": edge }))
            }
            Profile::Sech { amp, width } => ("sech", json!({ "amp": amp, "width": width })),
            Profile::Table(t) => ("table", json!({ "samples": t.x.len() })),
        };
        (name.to_string(), params)
    }

    /// Whether the profile vanishes at infinity (a sponge can absorb it).
    pub fn decays(&self) -> bool {
        !matches!(self, Profile::PlaneWave { .. })
    }
}

/// Time signal used for the Dirichlet data at z = 0 or at z = Z.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Signal {
    Zero,
    /// Trace of the plane wave at position `z`.
    PlaneWave { amp: f64, kappa: f64, z: f64 },
    Table(Table),
    Hermite(HermiteTrace),
}

impl Signal {
    pub fn eval(&self, t: f64) -> C64 {
        match self {
            Signal::Zero => C64::new(0.0, 0.0),
            Signal::PlaneWave { amp, kappa, z } => {
                (I * (kappa * z - plane_wave_omega(*amp, *kappa) * t)).exp() * *amp
            }
            Signal::Table(tab) => tab.eval(t),
            Signal::Hermite(h) => h.eval(t),
        }
    }

    /// Time derivative: exact for closed forms and the Hermite interpolant,
    /// fourth-order central difference for tables.
    pub fn derivative(&self, t: f64) -> C64 {
        match self {
            Signal::Zero => C64::new(0.0, 0.0),
            Signal::PlaneWave { amp, kappa, .. } => self.eval(t) * (-I * plane_wave_omega(*amp, *kappa)),
            Signal::Table(tab) => {
                let h = 1e-3 * (tab.x[1] - tab.x[0]).max(1e-6);
                (self.eval(t - 2.0 * h) - self.eval(t - h) * 8.0 + self.eval(t + h) * 8.0 - self.eval(t + 2.0 * h))
                    / (12.0 * h)
            }
            Signal::Hermite(h) => h.derivative(t),
        }
    }
}

/// Uniformly sampled values and time derivatives, read back by cubic Hermite interpolation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HermiteTrace {
    pub dt: f64,
    pub value: Vec<C64>,
    pub slope: Vec<C64>,
}

impl HermiteTrace {
    pub fn eval(&self, t: f64) -> C64 {
        let n = self.value.len() - 1;
        let q = (t / self.dt).clamp(0.0, n as f64);
        let j = (q.floor() as usize).min(n.saturating_sub(1));
        let s = q - j as f64;
        if s == 0.0 {
            return self.value[j];
        }
        let (h00, h10) = ((1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s), s * (1.0 - s) * (1.0 - s));
        let (h01, h11) = (s * s * (3.0 - 2.0 * s), s * s * (s - 1.0));
        self.value[j] * h00
            + self.slope[j] * (h10 * self.dt)
            + self.value[j + 1] * h01
            + self.slope[j + 1] * (h11 * self.dt)
    }

    pub fn derivative(&self, t: f64) -> C64 {
        let n = self.value.len() - 1;
        let q = (t / self.dt).clamp(0.0, n as f64);
        let j = (q.floor() as usize).min(n.saturating_sub(1));
        let s = q - j as f64;
        let (d00, d10) = (6.0 * s * (s - 1.0), (1.0 - s) * (1.0 - 3.0 * s));
        let (d01, d11) = (6.0 * s * (1.0 - s), s * (3.0 * s - 2.0));
        (self.value[j] * d00 + self.value[j + 1] * d01) / self.dt + self.slope[j] * d10 + self.slope[j + 1] * d11
    }
}

/// How the far end z = Z is closed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RightBoundary {
    /// Homogeneous Dirichlet with an absorbing layer on the last 10% of the grid.
    Sponge { strength: f64 },
    /// Prescribed Dirichlet values, no damping.
    Dirichlet(Signal),
}

/// Initial-boundary data for the half-line problem. The Neumann trace s1 is
/// never prescribed; the solver extracts it from the computed field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IBData {
    pub r0: Profile,
    pub s0: Signal,
    pub right: RightBoundary,
}

impl IBData {
    pub fn zero() -> Self {
        Self { r0: Profile::Zero, s0: Signal::Zero, right: RightBoundary::Sponge { strength: DEFAULT_SPONGE } }
    }

    /// The exact plane-wave solution on [0, Z]; κ = 0 gives the uniform solution a·e^{ia²t}.
    pub fn plane_wave(amp: f64, kappa: f64, z_max: f64) -> Self {
        Self {
            r0: Profile::PlaneWave { amp, kappa },
            s0: Signal::PlaneWave { amp, kappa, z: 0.0 },
            right: RightBoundary::Dirichlet(Signal::PlaneWave { amp, kappa, z: z_max }),
        }
    }
}

pub const DEFAULT_SPONGE: f64 = 10.0;
