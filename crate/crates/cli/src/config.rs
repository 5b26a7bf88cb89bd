//! The JSON run configuration. Every key is optional; missing keys take the
//! reference values (Gaussian 0.3e^{−z²} on Z = 12, T = 1, Nz = 768).

use crate::error::CliError;
use fokas_core::algebra::C64;
use fokas_core::inverse::LadderSpec;
use fokas_core::potential::{GridSpec, IBData, Profile, Table};
use fokas_core::spectral::SearchBox;
use fokas_core::volterra::{default_ladder, VolterraOptions};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    Zero,
    Uniform,
    PlaneWave,
    Gaussian,
    Sech,
    Box,
    Table,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub preset: Preset,
    pub amp: f64,
    pub width: f64,
    pub center: f64,
    pub kappa: f64,
    pub half_width: f64,
    pub edge: f64,
    /// CSV with columns z,re_r,im_r for `preset = "table"`.
    pub r0_table: Option<PathBuf>,

    pub z_max: f64,
    pub t_max: f64,
    pub nz: usize,
    pub n_saved: usize,

    pub points_per_ray: usize,
    pub rho_max: f64,
    pub beta_sign: f64,
    /// [re_lo, im_lo, re_hi, im_hi] in the ς-plane.
    pub zero_box_d1: [f64; 4],
    pub zero_box_d2: [f64; 4],

    pub ladder: Vec<f64>,
    pub ladder_terms: usize,
    pub richardson: bool,
    pub richardson_ratio: f64,
    pub boundary_stride: usize,

    pub jump_z: f64,
    pub jump_t: f64,
    pub jump_points: usize,
    pub det_samples: usize,
    pub det_lambda_max: f64,

    pub tol_det: f64,
    pub tol_parity: f64,
    pub tol_det_w: f64,
    pub tol_jump: f64,
    pub tol_global: f64,
    pub tol_conservation: f64,
    pub tol_reconstruct: f64,
    pub tol_boundary: f64,

    pub out_dir: PathBuf,
    /// Field directory read by the analysis commands; `<out_dir>/field` if absent.
    pub field_dir: Option<PathBuf>,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            preset: Preset::Gaussian,
            amp: 0.3,
            width: 1.0,
            center: 0.0,
            kappa: 0.0,
            half_width: 2.0,
            edge: 0.5,
            r0_table: None,
            z_max: 12.0,
            t_max: 1.0,
            nz: 768,
            n_saved: 64,
            points_per_ray: 64,
            rho_max: 50.0,
            beta_sign: 1.0,
            zero_box_d1: [0.9, -0.35, 2.0, -0.02],
            zero_box_d2: [0.05, -0.6, 0.65, -0.05],
            ladder: default_ladder(),
            ladder_terms: 3,
            richardson: true,
            richardson_ratio: 2.0,
            boundary_stride: 16,
            jump_z: 1.0,
            jump_t: 0.5,
            jump_points: 20,
            det_samples: 200,
            det_lambda_max: 4.0,
            tol_det: 1e-8,
            tol_parity: 1e-10,
            tol_det_w: 1e-6,
            tol_jump: 1e-6,
            tol_global: 1e-4,
            tol_conservation: 1e-4,
            tol_reconstruct: 1e-3,
            tol_boundary: 1e-3,
            out_dir: PathBuf::from("out"),
            field_dir: None,
            seed: 0,
        }
    }
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Checks values only; the output directory is checked by the commands.
    pub fn validate(&self) -> Result<(), CliError> {
        let tols = [
            ("tol_det", self.tol_det),
            ("tol_parity", self.tol_parity),
            ("tol_det_w", self.tol_det_w),
            ("tol_jump", self.tol_jump),
            ("tol_global", self.tol_global),
            ("tol_conservation", self.tol_conservation),
            ("tol_reconstruct", self.tol_reconstruct),
            ("tol_boundary", self.tol_boundary),
        ];
        for (name, v) in tols {
            if !(v > 0.0 && v.is_finite()) {
                return Err(bad(format!("{name} must be positive, got {v}")));
            }
        }
        for (name, v) in [("z_max", self.z_max), ("t_max", self.t_max), ("rho_max", self.rho_max)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(bad(format!("{name} must be positive, got {v}")));
            }
        }
        if self.nz < 8 || self.n_saved == 0 || self.points_per_ray == 0 {
            return Err(bad("nz ≥ 8, n_saved ≥ 1 and points_per_ray ≥ 1 required"));
        }
        if self.beta_sign.abs() != 1.0 {
            return Err(bad("beta_sign must be 1 or -1"));
        }
        if !(self.jump_z >= 0.0 && self.jump_z <= self.z_max && self.jump_t >= 0.0 && self.jump_t <= self.t_max) {
            return Err(bad("jump point lies outside the domain"));
        }
        for b in [self.zero_box_d1, self.zero_box_d2] {
            if !(b[2] > b[0] && b[3] > b[1]) {
                return Err(bad(format!("search box {b:?} is empty")));
            }
        }
        if self.preset == Preset::Table && self.r0_table.is_none() {
            return Err(bad("preset \"table\" needs r0_table"));
        }
        Ok(())
    }

    pub fn grid(&self) -> GridSpec {
        GridSpec::stable(self.z_max, self.t_max, self.nz, self.n_saved)
    }

    pub fn profile(&self) -> Result<Profile, CliError> {
        Ok(match self.preset {
            Preset::Zero => Profile::Zero,
            Preset::Uniform => Profile::PlaneWave { amp: self.amp, kappa: 0.0 },
            Preset::PlaneWave => Profile::PlaneWave { amp: self.amp, kappa: self.kappa },
            Preset::Gaussian => Profile::Gaussian { amp: self.amp, width: self.width, center: self.center },
            Preset::Sech => Profile::Sech { amp: self.amp, width: self.width },
            Preset::Box => Profile::SmoothBox { amp: self.amp, half_width: self.half_width, edge: self.edge },
            Preset::Table => Profile::Table(read_table(self.r0_table.as_deref().unwrap())?),
        })
    }

    pub fn ib_data(&self) -> Result<IBData, CliError> {
        fokas_core::potential::consistent_data(&self.profile()?, &self.grid()).map_err(|e| CliError::Solver(e.to_string()))
    }

    pub fn ladder_spec(&self) -> LadderSpec {
        LadderSpec {
            mags: self.ladder.clone(),
            terms: self.ladder_terms,
            richardson: self.richardson,
            ratio: self.richardson_ratio,
        }
    }

    pub fn volterra(&self) -> VolterraOptions {
        VolterraOptions::default()
    }

    pub fn field_path(&self) -> PathBuf {
        self.field_dir.clone().unwrap_or_else(|| self.out_dir.join("field"))
    }

    pub fn box_d1(&self) -> SearchBox {
        to_box(self.zero_box_d1)
    }

    pub fn box_d2(&self) -> SearchBox {
        to_box(self.zero_box_d2)
    }
}

fn to_box(b: [f64; 4]) -> SearchBox {
    SearchBox::new(C64::new(b[0], b[1]), C64::new(b[2], b[3]))
}

fn read_table(path: &Path) -> Result<Table, CliError> {
    let mut rdr = csv::Reader::from_path(path).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    let (mut x, mut y) = (Vec::new(), Vec::new());
    for rec in rdr.records() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        let v: Vec<f64> = rec
            .iter()
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| bad(format!("{}: {e}", path.display())))?;
        if v.len() != 3 {
            return Err(bad(format!("{}: expected z,re_r,im_r", path.display())));
        }
        x.push(v[0]);
        y.push(C64::new(v[1], v[2]));
    }
    Table::new(x, y).map_err(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn defaults_are_valid() {
        RunConfig::default().validate().unwrap();
        assert_eq!(RunConfig::parse("{}").unwrap(), RunConfig::default());
    }

    #[test]
    fn rejects_bad_values() {
        assert!(RunConfig::parse(r#"{"tol_jump": 0}"#).is_err());
        assert!(RunConfig::parse(r#"{"beta_sign": 0.5}"#).is_err());
        assert!(RunConfig::parse(r#"{"no_such_key": 1}"#).is_err());
        assert!(RunConfig::parse(r#"{"preset": "table"}"#).is_err());
        assert!(RunConfig::parse(r#"{"zero_box_d1": [1, 0, 0, 1]}"#).is_err());
    }

    fn preset() -> impl Strategy<Value = Preset> {
        prop_oneof![
            Just(Preset::Zero),
            Just(Preset::Uniform),
            Just(Preset::PlaneWave),
            Just(Preset::Gaussian),
            Just(Preset::Sech),
            Just(Preset::Box),
        ]
    }

    fn pos() -> impl Strategy<Value = f64> {
        (1e-12f64..1e3).prop_map(|x| x * 1.000_000_000_123)
    }

    proptest! {
        #[test]
        fn round_trip(preset in preset(), amp in -2.0f64..2.0, z in pos(), t in pos(), nz in 8usize..4096,
                      ns in 1usize..512, tols in proptest::array::uniform8(pos()), seed in any::<u64>(),
                      ladder in proptest::collection::vec(pos(), 5..9), rich in any::<bool>(),
                      sign in prop_oneof![Just(1.0), Just(-1.0)], field in proptest::option::of("[a-z/]{1,12}")) {
            let c = RunConfig {
                preset, amp, z_max: z, t_max: t, nz, n_saved: ns, ladder, richardson: rich, beta_sign: sign,
                jump_z: 0.0, jump_t: 0.0,
                tol_det: tols[0], tol_parity: tols[1], tol_det_w: tols[2], tol_jump: tols[3],
                tol_global: tols[4], tol_conservation: tols[5], tol_reconstruct: tols[6], tol_boundary: tols[7],
                field_dir: field.map(PathBuf::from), seed,
                ..RunConfig::default()
            };
            c.validate().unwrap();
            prop_assert_eq!(RunConfig::parse(&c.to_json()).unwrap(), c);
        }
    }
}
