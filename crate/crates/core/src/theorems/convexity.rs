use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spaces::SpaceSpec;

const TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PConvexity {
    /// No sampled tuple violated the inequality. Heuristic when true.
    pub holds: bool,
    /// The first violating tuple, if any.
    pub witness: Option<Vec<Vec<f64>>>,
    /// `‖(Σ|x_i|^p)^{1/p}‖` at the witness.
    pub lhs: f64,
    /// `(Σ‖x_i‖^p)^{1/p}` at the witness.
    pub rhs: f64,
}

fn sides(s: &SpaceSpec, xs: &[Vec<f64>], p: f64) -> Result<(f64, f64)> {
    let d = s.dim();
    let combined: Vec<f64> = (0..d)
        .map(|j| xs.iter().map(|x| x[j].abs().powf(p)).sum::<f64>().powf(1.0 / p))
        .collect();
    let lhs = s.norm(&combined)?;
    let mut rhs = 0.0;
    for x in xs {
        rhs += s.norm(x)?.powf(p);
    }
    Ok((lhs, rhs.powf(1.0 / p)))
}

/// Samples the p-convexity inequality `‖(Σ|x_i|^p)^{1/p}‖ ≤ (Σ‖x_i‖^p)^{1/p}`
/// (relative tolerance `1e-9`): first on every pair of basis vectors, then
/// on `trials` random tuples of 2 to 4 vectors.
///
/// ```
/// use seqspace::theorems::p_convexity_sample_check;
/// use seqspace::{LorentzSpec, SpaceSpec};
/// let l1 = SpaceSpec::Lorentz(LorentzSpec::lp(3, 1.0).unwrap());
/// let r = p_convexity_sample_check(&l1, 2.0, 100, 0).unwrap();
/// assert!(!r.holds);
/// assert!((r.lhs - 2.0).abs() < 1e-12);
/// ```
pub fn p_convexity_sample_check(s: &SpaceSpec, p: f64, trials: usize, seed: u64) -> Result<PConvexity> {
    if !(p >= 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    let d = s.dim();
    let basis = |i: usize| {
        let mut e = vec![0.0; d];
        e[i] = 1.0;
        e
    };
    let mut tuples: Vec<Vec<Vec<f64>>> = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            tuples.push(vec![basis(i), basis(j)]);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let check = |xs: &[Vec<f64>]| -> Result<Option<PConvexity>> {
        let (lhs, rhs) = sides(s, xs, p)?;
        Ok((lhs > rhs * (1.0 + TOL)).then(|| PConvexity {
            holds: false,
            witness: Some(xs.to_vec()),
            lhs,
            rhs,
        }))
    };
    for xs in &tuples {
        if let Some(v) = check(xs)? {
            return Ok(v);
        }
    }
    for _ in 0..trials {
        let k = rng.random_range(2..=4);
        let xs: Vec<Vec<f64>> = (0..k)
            .map(|_| (0..d).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        if let Some(v) = check(&xs)? {
            return Ok(v);
        }
    }
    Ok(PConvexity {
        holds: true,
        witness: None,
        lhs: f64::NAN,
        rhs: f64::NAN,
    })
}
