//! Hyperplanes `ker f` of Lorentz spaces: the verdict from the
//! characterization, the two-parameter witness family `x(a, ε)` and a grid
//! refuter that exhibits negative numerical form for `f⊗u`.

use serde::Serialize;

use super::ReasonCode;
use crate::duality::dot;
use crate::error::{Error, Result};
use crate::operators::ProjectionSpec;
use crate::positivity::numerical_form;
use crate::spaces::{LorentzSpec, SpaceSpec};

/// Interior grid points per admissible `a`-interval.
pub const DEFAULT_A_POINTS: usize = 32;
const EPS_EXPONENTS: [i32; 5] = [2, 3, 4, 5, 6];
const MAX_ORDERINGS: usize = 24;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum HyperplaneVerdict {
    PossiblyOne,
    Impossible { reasons: Vec<ReasonCode> },
}

/// Whether `ker f` can be 1-complemented in `ℓ_{w,p}` (`p > 1`, `w₂ > 0`).
///
/// With `n = |supp f|`: for `n > 2` this needs `p = 2` and
/// `w_1 = … = w_n = 1`; for `n = 2` in a strictly monotone space it needs
/// `|f_i| = |f_j|` unless `w ≡ 1`.
pub fn lorentz_hyperplane_verdict(s: &LorentzSpec, f: &[f64]) -> Result<HyperplaneVerdict> {
    SpaceSpec::Lorentz(s.clone()).check_dim(f)?;
    let w = s.w.as_slice();
    if !(s.p > 1.0) {
        return Err(Error::Precondition("needs p > 1".into()));
    }
    if w.len() < 2 || w[1] <= 0.0 {
        return Err(Error::Precondition("needs w_2 > 0".into()));
    }
    let support: Vec<f64> = f.iter().copied().filter(|v| *v != 0.0).collect();
    let n = support.len();
    if n == 0 {
        return Err(Error::Precondition("f must be nonzero".into()));
    }
    if n > 2 {
        let mut reasons = Vec::new();
        if s.p != 2.0 {
            reasons.push(ReasonCode::PNot2);
        }
        if w[..n].iter().any(|&v| v != 1.0) {
            reasons.push(ReasonCode::WeightNot1);
        }
        if !reasons.is_empty() {
            return Ok(HyperplaneVerdict::Impossible { reasons });
        }
    } else if n == 2 {
        let strictly_monotone = w.iter().all(|&v| v > 0.0);
        let unequal = support[0].abs() != support[1].abs();
        if strictly_monotone && unequal && w.iter().any(|&v| v != 1.0) {
            return Ok(HyperplaneVerdict::Impossible {
                reasons: vec![ReasonCode::UnequalModuli],
            });
        }
    }
    Ok(HyperplaneVerdict::PossiblyOne)
}

/// `f` restricted to its support, made positive and sorted non-increasingly.
/// Position `r` came from coordinate `indices[r]` with sign `signs[r]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalizedFunctional {
    pub values: Vec<f64>,
    pub indices: Vec<usize>,
    pub signs: Vec<f64>,
}

impl NormalizedFunctional {
    /// Embeds a vector in normalized coordinates back into `dim` user
    /// coordinates (zero off the support).
    pub fn to_user(&self, x: &[f64], dim: usize) -> Vec<f64> {
        let mut out = vec![0.0; dim];
        for (r, &v) in x.iter().enumerate() {
            out[self.indices[r]] = self.signs[r] * v;
        }
        out
    }

    /// The same normalization with the coordinates of each group of equal
    /// values listed in every distinct order, up to `cap` orderings.
    fn orderings(&self, cap: usize) -> Vec<NormalizedFunctional> {
        let mut out = vec![self.clone()];
        let n = self.values.len();
        let mut r0 = 0;
        while r0 < n {
            let r1 = (r0..n).find(|&r| self.values[r] != self.values[r0]).unwrap_or(n);
            if r1 - r0 > 1 {
                let mut next = Vec::new();
                for base in &out {
                    for perm in permutations(r1 - r0) {
                        let mut g = base.clone();
                        for (k, &src) in perm.iter().enumerate() {
                            g.indices[r0 + k] = base.indices[r0 + src];
                            g.signs[r0 + k] = base.signs[r0 + src];
                        }
                        next.push(g);
                        if next.len() >= cap {
                            break;
                        }
                    }
                }
                out = next;
                out.truncate(cap);
            }
            r0 = r1;
        }
        out
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

pub fn normalize_functional(f: &[f64]) -> NormalizedFunctional {
    let mut indices: Vec<usize> = (0..f.len()).filter(|&i| f[i] != 0.0).collect();
    indices.sort_by(|&a, &b| f[b].abs().total_cmp(&f[a].abs()));
    NormalizedFunctional {
        values: indices.iter().map(|&i| f[i].abs()).collect(),
        signs: indices.iter().map(|&i| f[i].signum()).collect(),
        indices,
    }
}

/// Which admissible range `(a, ε)` is drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Any `a ∈ [0, 1]`, `ε ∈ [−1, 1]`.
    General,
    /// `0 < a < η`, `|ε| < δ(a)`: `|x_n| > |x_1| = … = |x_{n−2}| > |x_{n−1}|`.
    A1,
    /// `a = 1`, `|ε| < ε₁`: `|x_{n−1}| > |x_1| = … = |x_{n−2}| > |x_n|`.
    A2,
    /// `n = 3`, `f₁ = f₂`, `a ∈ (f₂/(f₂+f₃), 1)`, `|ε| < ε(a)`.
    A3,
}

/// Parameters of `x(a, ε)` and the bounds of each admissible range.
/// Bounds that do not apply to `f` are `None`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessParams {
    pub a: f64,
    pub eps: f64,
    /// `min(f_{n−1}/F, 1 − f_n/F)` with `F = f_1 + … + f_{n−2}`.
    pub eta: f64,
    /// `min(F(1−a)/f_n − 1, 1 − F·a/f_{n−1}, F·a/f_{n−1})`.
    pub delta_a: f64,
    /// `min(F/f_{n−1} − 1, 1)`.
    pub eps1: f64,
    /// `min(1 − a, (a − f_1(1−a)/f_3)/2)` when `n = 3` and `f₁ = f₂`.
    pub eps_a: Option<f64>,
}

fn check_sorted(f: &[f64]) -> Result<()> {
    if f.len() < 3 {
        return Err(Error::Precondition("need at least 3 nonzero entries".into()));
    }
    if f.iter().any(|&v| !(v > 0.0)) || f.windows(2).any(|p| p[1] > p[0]) {
        return Err(Error::Precondition("f must be positive and non-increasing".into()));
    }
    Ok(())
}

fn head_sum(f: &[f64]) -> f64 {
    f[..f.len() - 2].iter().sum()
}

/// Computes every bound for `f` (sorted, positive, `n ≥ 3`) at `(a, ε)`.
pub fn witness_params(f: &[f64], a: f64, eps: f64) -> Result<WitnessParams> {
    check_sorted(f)?;
    let n = f.len();
    let big_f = head_sum(f);
    let (fm, fl) = (f[n - 2], f[n - 1]);
    let eta = (fm / big_f).min(1.0 - fl / big_f);
    let delta_a = (big_f * (1.0 - a) / fl - 1.0)
        .min(1.0 - big_f * a / fm)
        .min(big_f * a / fm);
    let eps1 = (big_f / fm - 1.0).min(1.0);
    let eps_a = (n == 3 && f[0] == f[1]).then(|| (1.0 - a).min(0.5 * (a - f[0] / f[2] * (1.0 - a))));
    Ok(WitnessParams {
        a,
        eps,
        eta,
        delta_a,
        eps1,
        eps_a,
    })
}

/// `x(a, ε) = e_1 + … + e_{n−2} − (F·a/f_{n−1} + ε) e_{n−1} − (F(1−a)/f_n + ε) e_n`,
/// after checking `(a, ε)` against `variant`'s admissible range.
///
/// ```
/// use seqspace::theorems::{witness_params, witness_x, Variant};
/// let f = [3.0, 2.0, 1.0];
/// let p = witness_params(&f, 0.25, 0.01).unwrap();
/// assert!((p.eta - 2.0 / 3.0).abs() < 1e-15);
/// let x = witness_x(&f, &p, Variant::A1).unwrap();
/// let fx: f64 = f.iter().zip(&x).map(|(a, b)| a * b).sum();
/// assert!((fx + 0.01 * (2.0 + 1.0)).abs() < 1e-12);
/// ```
pub fn witness_x(f: &[f64], params: &WitnessParams, variant: Variant) -> Result<Vec<f64>> {
    check_sorted(f)?;
    let n = f.len();
    let (a, eps) = (params.a, params.eps);
    let out = |msg: &str| Err(Error::ParamOutOfRange(format!("{variant:?}: {msg}")));
    match variant {
        Variant::General => {
            if !(0.0..=1.0).contains(&a) || !(-1.0..=1.0).contains(&eps) {
                return out("need a in [0,1] and eps in [-1,1]");
            }
        }
        Variant::A1 => {
            if !(0.0 < a && a < params.eta) {
                return out("need 0 < a < eta");
            }
            if !(eps.abs() < params.delta_a) {
                return out("need |eps| < delta(a)");
            }
        }
        Variant::A2 => {
            if a != 1.0 || !(eps.abs() < params.eps1) {
                return out("need a = 1 and |eps| < eps1");
            }
        }
        Variant::A3 => {
            let Some(bound) = params.eps_a else {
                return out("needs n = 3 and f1 = f2");
            };
            let lo = f[1] / (f[1] + f[2]);
            if !(lo < a && a < 1.0) || !(eps.abs() < bound) {
                return out("need a in (f2/(f2+f3), 1) and |eps| < eps(a)");
            }
        }
    }
    let big_f = head_sum(f);
    let mut x = vec![1.0; n];
    x[n - 2] = -(big_f / f[n - 2] * a + eps);
    x[n - 1] = -(big_f / f[n - 1] * (1.0 - a) + eps);
    Ok(x)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HyperplaneWitness {
    pub variant: Variant,
    pub a: f64,
    pub eps: f64,
    /// In user coordinates, normalized to `‖x‖ = 1`.
    pub x: Vec<f64>,
    pub xstar: Vec<f64>,
    /// Largest `x*((f⊗u)x)` over the norming extremes at `x` (negative).
    pub value: f64,
}

fn interior(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    (1..=k).map(|i| lo + (hi - lo) * i as f64 / (k + 1) as f64).collect()
}

fn eps_grid(bound: f64) -> Vec<f64> {
    let mut out: Vec<f64> = EPS_EXPONENTS
        .iter()
        .map(|&k| 10f64.powi(-k))
        .filter(|&e| e < bound)
        .collect();
    if out.is_empty() && bound > 0.0 {
        out.push(0.5 * bound);
    }
    out.iter().flat_map(|&e| [e, -e]).collect()
}

/// Scans `x(a, ε)` over every variant that applies (and every ordering of
/// equal entries of `f`), looking for negative numerical form of `f⊗u`.
/// Returns the most negative point found, or `None`.
pub fn refute_lorentz_hyperplane(
    s: &LorentzSpec,
    f: &[f64],
    u: &[f64],
    a_points: usize,
    tol: f64,
) -> Result<Option<HyperplaneWitness>> {
    let space = SpaceSpec::Lorentz(s.clone());
    space.check_dim(f)?;
    space.check_dim(u)?;
    let ps = ProjectionSpec::new(vec![f.to_vec()], vec![u.to_vec()])?;
    let t = ps.complement_operator();
    let nf = normalize_functional(f);
    check_sorted(&nf.values)?;
    let fs = &nf.values;
    let n = fs.len();
    let base = witness_params(fs, 0.5, 0.0)?;
    let mut grid: Vec<(Variant, f64, f64)> = Vec::new();
    if base.eta > 0.0 {
        for a in interior(0.0, base.eta, a_points) {
            let p = witness_params(fs, a, 0.0)?;
            grid.extend(eps_grid(p.delta_a).into_iter().map(|e| (Variant::A1, a, e)));
        }
    }
    if base.eps1 > 0.0 {
        grid.extend(eps_grid(base.eps1).into_iter().map(|e| (Variant::A2, 1.0, e)));
    }
    if n == 3 && fs[0] == fs[1] {
        for a in interior(fs[1] / (fs[1] + fs[2]), 1.0, a_points) {
            let p = witness_params(fs, a, 0.0)?;
            let bound = p.eps_a.unwrap_or(0.0);
            grid.extend(eps_grid(bound).into_iter().map(|e| (Variant::A3, a, e)));
        }
    }
    for a in interior(0.0, 1.0, a_points) {
        grid.extend(eps_grid(1.0).into_iter().map(|e| (Variant::General, a, e)));
    }
    let mut best: Option<HyperplaneWitness> = None;
    for ordering in nf.orderings(MAX_ORDERINGS) {
        for &(variant, a, eps) in &grid {
            let params = witness_params(fs, a, eps)?;
            let Ok(x) = witness_x(fs, &params, variant) else {
                continue;
            };
            let x = ordering.to_user(&x, s.dim());
            let norm = space.norm(&x)?;
            if norm == 0.0 {
                continue;
            }
            let (value, xstar) = numerical_form(&space, &t, &x, 0)?;
            if value < -tol && best.as_ref().is_none_or(|b| value < b.value) {
                best = Some(HyperplaneWitness {
                    variant,
                    a,
                    eps,
                    x: x.iter().map(|v| v / norm).collect(),
                    xstar,
                    value,
                });
            }
        }
    }
    debug_assert!(best.as_ref().is_none_or(|b| dot(f, &b.x).is_finite()));
    Ok(best)
}
