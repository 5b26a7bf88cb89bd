//! Residue conditions of E at the zeros of u, β and U.

use super::scattering::{derived_quantities, require, SpectralPoint};
use super::zeros::{ZeroFamily, ZeroSet};
use super::{SpectralError, DIVISION_FLOOR};
use crate::algebra::{lambda, C64, I};
use crate::potential::PotentialField;
use crate::volterra::VolterraOptions;
use serde::{Deserialize, Serialize};

/// Anything that can produce scattering data at ς.
pub trait SpectralSource: Sync {
    fn point(&self, k: C64) -> Result<SpectralPoint, SpectralError>;
}

/// Scattering data integrated from a potential field.
pub struct FieldSource<'a> {
    pub field: &'a PotentialField,
    pub opts: VolterraOptions,
}

impl SpectralSource for FieldSource<'_> {
    fn point(&self, k: C64) -> Result<SpectralPoint, SpectralError> {
        Ok(SpectralPoint::compute(self.field, k, &self.opts)?)
    }
}

/// Res_{ς=location} [E]_column = coefficient · e^{i(z_coeff·λz + t_coeff·λ²t)} · [E]_other.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Residue {
    pub family: ZeroFamily,
    pub conjugate: bool,
    pub location: C64,
    pub column: usize,
    pub coefficient: C64,
    pub z_coeff: f64,
    pub t_coeff: f64,
}

impl Residue {
    pub fn factor(&self, z: f64, t: f64) -> C64 {
        let l = lambda(self.location);
        self.coefficient * (I * (l * z * self.z_coeff + l * l * t * self.t_coeff)).exp()
    }
}

fn derivative<F>(f: F, k: C64) -> Result<C64, SpectralError>
where
    F: Fn(C64) -> Result<C64, SpectralError>,
{
    let h = 1e-3 * k.norm().max(1e-3);
    Ok((f(k - 2.0 * h)? - f(k - h)? * 8.0 + f(k + h)? * 8.0 - f(k + 2.0 * h)?) / (12.0 * h))
}

fn floored(x: C64, err: SpectralError) -> Result<C64, SpectralError> {
    if x.norm() > DIVISION_FLOOR {
        Ok(x)
    } else {
        Err(err)
    }
}

/// Residue coefficients for every zero in `zeros` and at its complex conjugate.
pub fn residue_coefficients<S: SpectralSource>(
    zeros: &ZeroSet,
    src: &S,
    beta_sign: f64,
) -> Result<Vec<Residue>, SpectralError> {
    let Some(family) = zeros.family else {
        return Ok(Vec::new());
    };
    let mut out = Vec::with_capacity(2 * zeros.zeros.len());
    for z in &zeros.zeros {
        let k = z.location;
        let p = src.point(k)?;
        let (col, coef, zc, tc) = match family {
            ZeroFamily::Xi => {
                let du = derivative(|q| require(src.point(q)?.u, "u"), k)?;
                let du = floored(du, SpectralError::NonSimpleZero(k))?;
                let v = floored(require(p.v, "v")?, SpectralError::DivisionFloor("v"))?;
                (0, 1.0 / (v * du), -2.0, 4.0)
            }
            ZeroFamily::Mu => {
                let db = derivative(|q| require(derived_quantities(&src.point(q)?, beta_sign).beta, "beta"), k)?;
                let db = floored(db, SpectralError::NonSimpleZero(k))?;
                let u = floored(require(p.u, "u")?, SpectralError::DivisionFloor("u"))?;
                (0, -require(p.big_v_star, "V*")? / (u * db), -2.0, 4.0)
            }
            ZeroFamily::Epsilon => {
                let du = derivative(|q| require(src.point(q)?.big_u, "U"), k)?;
                let du = floored(du, SpectralError::NonSimpleZero(k))?;
                (1, require(p.big_v, "V")? / du, 0.0, -4.0)
            }
        };
        out.push(Residue { family, conjugate: false, location: k, column: col, coefficient: coef, z_coeff: zc, t_coeff: tc });
        out.push(Residue {
            family,
            conjugate: true,
            location: k.conj(),
            column: 1 - col,
            coefficient: -coef.conj(),
            z_coeff: -zc,
            t_coeff: -tc,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::zeros::Zero;

    struct Synthetic;

    impl SpectralSource for Synthetic {
        fn point(&self, k: C64) -> Result<SpectralPoint, SpectralError> {
            let z0 = C64::new(0.8, 0.6);
            let mut p = SpectralPoint::trivial(k);
            p.u = Some((k * k - z0 * z0) / (k * k + 1.0));
            p.v = Some(k / (k * k + 1.0));
            Ok(p)
        }
    }

    #[test]
    fn empty_set_gives_nothing() {
        assert!(residue_coefficients(&ZeroSet::default(), &Synthetic, 1.0).unwrap().is_empty());
    }

    #[test]
    fn planted_residue() {
        let z0 = C64::new(0.8, 0.6);
        let set = ZeroSet { family: Some(ZeroFamily::Xi), zeros: vec![Zero { location: z0, residual: 0.0 }] };
        let r = residue_coefficients(&set, &Synthetic, 1.0).unwrap();
        // u̇ = 2ζ₀/(ζ₀²+1), v = ζ₀/(ζ₀²+1) at the zero
        let exact = (z0 * z0 + 1.0) * (z0 * z0 + 1.0) / (z0 * z0 * 2.0);
        assert!((r[0].coefficient - exact).norm() < 1e-10 * exact.norm());
        assert_eq!(r[1].location, z0.conj());
        assert_eq!(r[1].coefficient, -r[0].coefficient.conj());
    }
}
