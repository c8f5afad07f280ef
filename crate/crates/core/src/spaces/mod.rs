//! Finite-dimensional Lorentz and Orlicz sequence spaces.

mod conjugate;
mod lorentz;
pub mod modular;
mod orlicz;

use serde::{Deserialize, Serialize};

pub use conjugate::{young_conjugate, ConjugatePiece, YoungConjugate};
pub use lorentz::{decreasing_rearrangement, lorentz_norm, LorentzSpec, Weight};
pub use orlicz::{OrliczFunction, Piece, Segment, YoungFunction};

use crate::error::{Error, Result};

/// Coordinates over the unit vector basis.
pub type Vector = Vec<f64>;

/// Which of the two norms an Orlicz space carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrliczFlavor {
    Luxemburg,
    /// The dual-pairing (Amemiya) norm.
    Orlicz,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawOrlicz")]
pub struct OrliczSpec {
    #[serde(rename = "pieces")]
    pub phi: OrliczFunction,
    pub flavor: OrliczFlavor,
    pub dim: usize,
}

#[derive(Deserialize)]
struct RawOrlicz {
    pieces: OrliczFunction,
    flavor: OrliczFlavor,
    dim: usize,
}

impl TryFrom<RawOrlicz> for OrliczSpec {
    type Error = Error;
    fn try_from(raw: RawOrlicz) -> Result<Self> {
        OrliczSpec::new(raw.pieces, raw.flavor, raw.dim)
    }
}

impl OrliczSpec {
    pub fn new(phi: OrliczFunction, flavor: OrliczFlavor, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Precondition("dimension must be positive".into()));
        }
        Ok(OrliczSpec { phi, flavor, dim })
    }
}

/// A finite-dimensional sequence space: `{"kind":"lorentz",...}` or
/// `{"kind":"orlicz",...}` in JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpaceSpec {
    Lorentz(LorentzSpec),
    Orlicz(OrliczSpec),
}

impl From<LorentzSpec> for SpaceSpec {
    fn from(s: LorentzSpec) -> Self {
        SpaceSpec::Lorentz(s)
    }
}

impl From<OrliczSpec> for SpaceSpec {
    fn from(s: OrliczSpec) -> Self {
        SpaceSpec::Orlicz(s)
    }
}

impl SpaceSpec {
    pub fn dim(&self) -> usize {
        match self {
            SpaceSpec::Lorentz(s) => s.dim(),
            SpaceSpec::Orlicz(s) => s.dim,
        }
    }

    pub fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        Ok(())
    }

    pub fn norm(&self, x: &[f64]) -> Result<f64> {
        match self {
            SpaceSpec::Lorentz(s) => lorentz_norm(s, x),
            SpaceSpec::Orlicz(s) => {
                self.check_dim(x)?;
                match s.flavor {
                    OrliczFlavor::Luxemburg => luxemburg_norm(&s.phi, x),
                    OrliczFlavor::Orlicz => orlicz_norm(&s.phi, x),
                }
            }
        }
    }
}

/// `inf{λ > 0 : Σ φ(|x_i|/λ) ≤ 1}`, bracketed by `[‖x‖_∞, ‖x‖_1 + 1]`.
pub fn luxemburg_norm(phi: &OrliczFunction, x: &[f64]) -> Result<f64> {
    let amax = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let l1: f64 = x.iter().map(|v| v.abs()).sum();
    modular::luxemburg(phi, x, Some((amax, l1 + 1.0)))
}

/// `sup{Σ x_i y_i : Σ φ*(|y_i|) ≤ 1}` through the Amemiya formula.
pub fn orlicz_norm(phi: &OrliczFunction, x: &[f64]) -> Result<f64> {
    Ok(modular::amemiya(phi, x)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_vector_has_luxemburg_norm_one() {
        let phi = OrliczFunction::quadratic_patch(0.6).unwrap();
        let s = SpaceSpec::Orlicz(OrliczSpec::new(phi, OrliczFlavor::Luxemburg, 3).unwrap());
        assert!((s.norm(&[0.0, 1.0, 0.0]).unwrap() - 1.0).abs() < 1e-14);
        assert_eq!(s.norm(&[0.0; 3]).unwrap(), 0.0);
        assert!(s.norm(&[1.0]).is_err());
    }

    #[test]
    fn orlicz_norm_examples() {
        let sq = OrliczFunction::power(2.0).unwrap();
        assert!((orlicz_norm(&sq, &[1.0, 2.0, 2.0]).unwrap() - 6.0).abs() < 1e-12);
        let id = OrliczFunction::power(1.0).unwrap();
        assert!((orlicz_norm(&id, &[1.0, 1.0]).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(orlicz_norm(&id, &[0.0, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn space_json_round_trip() {
        let json = r#"{"kind":"lorentz","w":[1.0,0.5],"p":2.0}"#;
        let s: SpaceSpec = serde_json::from_str(json).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(serde_json::to_string(&s).unwrap(), json);

        let json = r#"{"kind":"orlicz","pieces":[{"start":0.0,"type":"power","coef":1.0,"exp":3.0}],"flavor":"luxemburg","dim":4}"#;
        let s: SpaceSpec = serde_json::from_str(json).unwrap();
        assert_eq!(s.dim(), 4);
        assert_eq!(serde_json::to_string(&s).unwrap(), json);

        let bad = r#"{"kind":"lorentz","w":[1.0,2.0],"p":2.0}"#;
        assert!(serde_json::from_str::<SpaceSpec>(bad).is_err());
        let bad = r#"{"kind":"lorentz","w":[1.0],"p":0.5}"#;
        assert!(serde_json::from_str::<SpaceSpec>(bad).is_err());
    }
}
