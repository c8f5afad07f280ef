use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Non-increasing, nonnegative weight sequence with `w[0] = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Weight(Vec<f64>);

impl Weight {
    pub fn new(w: Vec<f64>) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::InvalidWeight("empty weight".into()));
        }
        if w[0] != 1.0 {
            return Err(Error::InvalidWeight(format!("w[0] = {}, expected 1", w[0])));
        }
        for (i, pair) in w.windows(2).enumerate() {
            if !(pair[1].is_finite() && pair[1] >= 0.0) {
                return Err(Error::InvalidWeight(format!("w[{}] is negative or not finite", i + 1)));
            }
            if pair[1] > pair[0] {
                return Err(Error::InvalidWeight(format!("weight increases at index {}", i + 1)));
            }
        }
        Ok(Weight(w))
    }

    pub fn ones(dim: usize) -> Self {
        Weight(vec![1.0; dim.max(1)])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl TryFrom<Vec<f64>> for Weight {
    type Error = Error;
    fn try_from(w: Vec<f64>) -> Result<Self> {
        Weight::new(w)
    }
}

impl From<Weight> for Vec<f64> {
    fn from(w: Weight) -> Self {
        w.0
    }
}

impl std::ops::Index<usize> for Weight {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// `ℓ_{w,p}` of dimension `w.len()`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawLorentz")]
pub struct LorentzSpec {
    pub w: Weight,
    pub p: f64,
}

#[derive(Deserialize)]
struct RawLorentz {
    w: Weight,
    p: f64,
}

impl TryFrom<RawLorentz> for LorentzSpec {
    type Error = Error;
    fn try_from(raw: RawLorentz) -> Result<Self> {
        LorentzSpec::new(raw.w, raw.p)
    }
}

impl LorentzSpec {
    pub fn new(w: Weight, p: f64) -> Result<Self> {
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::InvalidExponent(p));
        }
        Ok(LorentzSpec { w, p })
    }

    /// `ℓ_p^dim`, i.e. `w ≡ 1`.
    pub fn lp(dim: usize, p: f64) -> Result<Self> {
        Self::new(Weight::ones(dim), p)
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }
}

/// `(|x|)` sorted non-increasingly, with `order[r]` the original index of
/// rank `r`. Ties keep ascending original index.
pub fn decreasing_rearrangement(x: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut order: Vec<usize> = (0..x.len()).collect();
    // stable sort keeps index order among equal moduli
    order.sort_by(|&a, &b| x[b].abs().total_cmp(&x[a].abs()));
    let sorted = order.iter().map(|&i| x[i].abs()).collect();
    (sorted, order)
}

pub fn lorentz_norm(s: &LorentzSpec, x: &[f64]) -> Result<f64> {
    if x.len() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: x.len(),
        });
    }
    let (sorted, _) = decreasing_rearrangement(x);
    let p = s.p;
    let scale = sorted.first().copied().unwrap_or(0.0);
    if scale == 0.0 {
        return Ok(0.0);
    }
    // factor out the largest entry to keep powers in range
    let sum: f64 = sorted
        .iter()
        .zip(s.w.as_slice())
        .map(|(&v, &w)| {
            if p == 1.0 {
                w * v / scale
            } else {
                w * (v / scale).powf(p)
            }
        })
        .sum();
    Ok(scale * if p == 1.0 { sum } else { sum.powf(1.0 / p) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(w: &[f64], p: f64) -> LorentzSpec {
        LorentzSpec::new(Weight::new(w.to_vec()).unwrap(), p).unwrap()
    }

    #[test]
    fn rearrangement_examples() {
        let (v, perm) = decreasing_rearrangement(&[-2.0, 1.0, 3.0]);
        assert_eq!(v, vec![3.0, 2.0, 1.0]);
        assert_eq!(perm, vec![2, 0, 1]);

        let (v, perm) = decreasing_rearrangement(&[0.0, 0.0]);
        assert_eq!(v, vec![0.0, 0.0]);
        assert_eq!(perm, vec![0, 1]);

        let (v, perm) = decreasing_rearrangement(&[1.0, 1.0, -1.0]);
        assert_eq!(v, vec![1.0, 1.0, 1.0]);
        assert_eq!(perm, vec![0, 1, 2]);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(lorentz_norm(&spec(&[1.0, 1.0], 2.0), &[3.0, 4.0]).unwrap(), 5.0);
        assert_eq!(lorentz_norm(&spec(&[1.0, 0.5], 1.0), &[1.0, 1.0]).unwrap(), 1.5);
        let v = lorentz_norm(&spec(&[1.0, 1.0, 1.0, 0.0], 2.0), &[1.0, 1.0, 1.0, 5.0]).unwrap();
        assert!((v - 27f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn dimension_mismatch() {
        let err = lorentz_norm(&spec(&[1.0, 1.0], 2.0), &[1.0]).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 1 });
    }

    #[test]
    fn invalid_weights() {
        assert!(Weight::new(vec![]).is_err());
        assert!(Weight::new(vec![0.5, 0.2]).is_err());
        assert!(Weight::new(vec![1.0, 0.5, 0.7]).is_err());
        assert!(Weight::new(vec![1.0, -0.1]).is_err());
        assert!(LorentzSpec::new(Weight::ones(2), 0.9).is_err());
    }

    #[test]
    fn zero_weight_ignores_smallest() {
        let s = spec(&[1.0, 0.0], 3.0);
        assert_eq!(lorentz_norm(&s, &[0.0, -2.0]).unwrap(), 2.0);
        assert_eq!(lorentz_norm(&s, &[1.0, -2.0]).unwrap(), 2.0);
    }
}
