//! Multistart local ascent on the Euclidean unit sphere.
//!
//! Every objective here is positively homogeneous of degree zero, so the
//! search works on `‖x‖₂ = 1`. Each start runs a normalized (super)gradient
//! step with backtracking and falls back to compass moves at kinks. Restarts
//! are independent; the reduction orders by `(value, start index)` so that
//! parallel and sequential runs agree bit for bit.

use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::rng::{derive_seed, seeded_rng};

/// Restarts and local steps per restart. Structured starts (basis vectors,
/// sign patterns) are always added on top of `restarts` random ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub restarts: usize,
    pub steps: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            restarts: 64,
            steps: 200,
        }
    }
}

impl SearchBudget {
    pub fn new(restarts: usize, steps: usize) -> Self {
        SearchBudget { restarts, steps }
    }
}

pub(crate) trait Objective: Sync {
    /// `NEG_INFINITY` marks points where the objective cannot be evaluated.
    fn value(&self, x: &[f64]) -> f64;

    fn gradient(&self, _x: &[f64]) -> Option<Vec<f64>> {
        None
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Best {
    pub value: f64,
    pub point: Vec<f64>,
    pub evaluations: usize,
}

pub(crate) fn normalize(mut x: Vec<f64>) -> Option<Vec<f64>> {
    let n = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if !(n > 0.0 && n.is_finite()) {
        return None;
    }
    x.iter_mut().for_each(|v| *v /= n);
    Some(x)
}

/// Basis vectors, plus every `±1` pattern (first sign fixed) when `dim ≤ 4`.
pub(crate) fn structured_starts(dim: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for i in 0..dim {
        let mut e = vec![0.0; dim];
        e[i] = 1.0;
        out.push(e);
    }
    if dim <= 4 && dim > 1 {
        for mask in 0..(1u32 << (dim - 1)) {
            let x = (0..dim)
                .map(|i| if i > 0 && mask & (1 << (i - 1)) != 0 { -1.0 } else { 1.0 })
                .collect();
            out.push(x);
        }
    }
    out
}

/// `restarts` Gaussian directions; start `i` only depends on `(seed, i)`.
pub(crate) fn random_starts(dim: usize, restarts: usize, seed: u64) -> Vec<Vec<f64>> {
    (0..restarts)
        .map(|i| {
            let mut rng = seeded_rng(derive_seed(seed, i as u64));
            (0..dim).map(|_| StandardNormal.sample(&mut rng)).collect()
        })
        .collect()
}

fn ascend<O: Objective>(obj: &O, start: &[f64], steps: usize) -> Best {
    let dim = start.len();
    let mut evaluations = 0;
    let Some(mut x) = normalize(start.to_vec()) else {
        return Best {
            value: f64::NEG_INFINITY,
            point: start.to_vec(),
            evaluations,
        };
    };
    let mut eval = |p: &[f64]| {
        evaluations += 1;
        let v = obj.value(p);
        if v.is_nan() {
            f64::NEG_INFINITY
        } else {
            v
        }
    };
    let mut val = eval(&x);
    let mut alpha = 0.25;
    let mut beta = 0.25;
    for _ in 0..steps {
        let mut moved = false;
        if let Some(g) = obj.gradient(&x) {
            let radial: f64 = g.iter().zip(&x).map(|(a, b)| a * b).sum();
            let tangent: Vec<f64> = g.iter().zip(&x).map(|(a, b)| a - radial * b).collect();
            if let Some(dir) = normalize(tangent) {
                let mut a = alpha;
                for _ in 0..12 {
                    let cand = x.iter().zip(&dir).map(|(p, d)| p + a * d).collect();
                    if let Some(cand) = normalize(cand) {
                        let v = eval(&cand);
                        if v > val {
                            x = cand;
                            val = v;
                            alpha = (2.0 * a).min(1.0);
                            moved = true;
                            break;
                        }
                    }
                    a *= 0.5;
                }
                if !moved {
                    alpha = a.max(1e-16);
                }
            }
        }
        if !moved {
            let mut best: Option<(f64, Vec<f64>)> = None;
            for i in 0..dim {
                for sign in [1.0, -1.0] {
                    let mut cand = x.clone();
                    cand[i] += sign * beta;
                    if let Some(cand) = normalize(cand) {
                        let v = eval(&cand);
                        if v > val && best.as_ref().is_none_or(|(bv, _)| v > *bv) {
                            best = Some((v, cand));
                        }
                    }
                }
            }
            match best {
                Some((v, cand)) => {
                    x = cand;
                    val = v;
                    beta = (beta * 1.5).min(1.0);
                }
                None => beta *= 0.5,
            }
        }
        if alpha < 1e-15 && beta < 1e-15 {
            break;
        }
    }
    Best {
        value: val,
        point: x,
        evaluations,
    }
}

/// Runs [`ascend`] from every start and keeps the largest value, lowest start
/// index on ties.
pub(crate) fn maximize<O: Objective>(obj: &O, starts: &[Vec<f64>], steps: usize) -> Best {
    let results: Vec<Best> = starts.par_iter().map(|s| ascend(obj, s, steps)).collect();
    let evaluations = results.iter().map(|b| b.evaluations).sum();
    let mut best = results
        .into_iter()
        .reduce(|a, b| if b.value > a.value { b } else { a })
        .unwrap_or(Best {
            value: f64::NEG_INFINITY,
            point: Vec::new(),
            evaluations: 0,
        });
    best.evaluations = evaluations;
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Rayleigh;
    impl Objective for Rayleigh {
        fn value(&self, x: &[f64]) -> f64 {
            let n2: f64 = x.iter().map(|v| v * v).sum();
            (3.0 * x[0] * x[0] + x[1] * x[1] + 2.0 * x[0] * x[1]) / n2
        }
    }

    #[test]
    fn finds_top_eigenvalue_without_gradient() {
        // [[3,1],[1,1]] has top eigenvalue 2 + sqrt(2)
        let starts = random_starts(2, 4, 1);
        let best = maximize(&Rayleigh, &starts, 200);
        assert!((best.value - (2.0 + 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn structured_start_counts() {
        assert_eq!(structured_starts(3).len(), 3 + 4);
        assert_eq!(structured_starts(6).len(), 6);
        assert_eq!(structured_starts(1).len(), 1);
    }

    #[test]
    fn random_starts_are_prefix_stable() {
        let a = random_starts(3, 4, 9);
        let b = random_starts(3, 8, 9);
        assert_eq!(a[..], b[..4]);
    }
}
