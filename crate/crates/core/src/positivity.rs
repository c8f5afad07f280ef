//! Numerical positivity: `x*(Tx) ≥ 0` for some norming `x*` of every `x`.
//!
//! `ν(x)` is the largest value of `x*(Tx)` over the enumerated extreme
//! points of the norming set of `x` (with `‖x‖ = 1`). A point with
//! `ν(x) < −tol` refutes positivity soundly; failing to find one is only a
//! budget-bounded certificate.

use serde::{Deserialize, Serialize};

use crate::duality::{dot, norming_extremes, DEFAULT_EXTREME_CAP};
use crate::error::{Error, Result};
use crate::operators::{operator_norm, LinearOperator, OperatorNorm, ProjectionSpec};
use crate::rng::derive_seed;
use crate::search::{self, Objective, SearchBudget};
use crate::spaces::SpaceSpec;
use crate::theorems::{has_property_p, has_property_q};

pub const DEFAULT_TOL: f64 = 1e-9;
/// Slack on `‖·‖ ≤ 1` when comparing search estimates of operator norms.
pub const NORM_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Positive,
    Refuted,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BudgetUsed {
    pub restarts: usize,
    pub steps: usize,
    pub evaluations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PositivityReport {
    /// Smallest `ν(x)` found over the unit sphere.
    pub inf_sup_value: f64,
    /// Minimizer with `‖x‖ = 1`.
    pub witness_x: Vec<f64>,
    /// The extreme attaining `ν` at `witness_x`.
    pub witness_xstar: Vec<f64>,
    pub verdict: Verdict,
    pub budget_used: BudgetUsed,
    pub seed: u64,
    pub tol: f64,
}

/// `ν(x/‖x‖)` and the extreme attaining it. Deterministic in `(x, seed)`.
pub fn numerical_form(s: &SpaceSpec, t: &LinearOperator, x: &[f64], seed: u64) -> Result<(f64, Vec<f64>)> {
    let n = s.norm(x)?;
    if n == 0.0 {
        return Err(Error::ZeroVector);
    }
    let x: Vec<f64> = x.iter().map(|v| v / n).collect();
    let tx = t.apply(&x);
    let mut best: Option<(f64, Vec<f64>)> = None;
    for g in norming_extremes(s, &x, DEFAULT_EXTREME_CAP, seed)? {
        let v = dot(&g, &tx);
        if best.as_ref().is_none_or(|(bv, _)| v > *bv) {
            best = Some((v, g));
        }
    }
    Ok(best.expect("extremes are never empty"))
}

struct NegatedForm<'a> {
    s: &'a SpaceSpec,
    t: &'a LinearOperator,
    seed: u64,
}

impl Objective for NegatedForm<'_> {
    fn value(&self, x: &[f64]) -> f64 {
        numerical_form(self.s, self.t, x, self.seed).map_or(f64::NEG_INFINITY, |(v, _)| -v)
    }
}

/// Minimizes `ν` over the unit sphere from basis vectors, `±1` patterns
/// (`dim ≤ 4`), `extra` starts and `budget.restarts` seeded directions.
pub fn positivity_scan_from(
    s: &SpaceSpec,
    t: &LinearOperator,
    extra: &[Vec<f64>],
    budget: SearchBudget,
    seed: u64,
    tol: f64,
) -> Result<PositivityReport> {
    if t.dim() != s.dim() {
        return Err(Error::DimensionMismatch {
            expected: s.dim(),
            found: t.dim(),
        });
    }
    let extreme_seed = derive_seed(seed, 0x6578);
    let mut starts = search::structured_starts(s.dim());
    starts.extend(extra.iter().filter(|x| x.iter().any(|v| *v != 0.0)).cloned());
    starts.extend(search::random_starts(s.dim(), budget.restarts, seed));
    let obj = NegatedForm {
        s,
        t,
        seed: extreme_seed,
    };
    let best = search::maximize(&obj, &starts, budget.steps);
    let budget_used = BudgetUsed {
        restarts: budget.restarts,
        steps: budget.steps,
        evaluations: best.evaluations,
    };
    if !best.value.is_finite() {
        return Ok(PositivityReport {
            inf_sup_value: f64::NAN,
            witness_x: Vec::new(),
            witness_xstar: Vec::new(),
            verdict: Verdict::Inconclusive,
            budget_used,
            seed,
            tol,
        });
    }
    // report the value at the stored (norm-one) witness so that it replays exactly
    let n = s.norm(&best.point)?;
    let witness_x: Vec<f64> = best.point.iter().map(|v| v / n).collect();
    let (value, witness_xstar) = numerical_form(s, t, &witness_x, extreme_seed)?;
    let verdict = if value < -tol {
        Verdict::Refuted
    } else {
        Verdict::Positive
    };
    Ok(PositivityReport {
        inf_sup_value: value,
        witness_x,
        witness_xstar,
        verdict,
        budget_used,
        seed,
        tol,
    })
}

/// [`positivity_scan_from`] without extra starts.
///
/// ```
/// use seqspace::{operators::LinearOperator, positivity::*, LorentzSpec, SearchBudget, SpaceSpec};
/// let s = SpaceSpec::from(LorentzSpec::lp(3, 2.0).unwrap());
/// let r = positivity_scan(&s, &LinearOperator::identity(3), SearchBudget::new(4, 20), 0, DEFAULT_TOL).unwrap();
/// assert_eq!(r.verdict, Verdict::Positive);
/// assert!((r.inf_sup_value - 1.0).abs() < 1e-12);
/// ```
pub fn positivity_scan(
    s: &SpaceSpec,
    t: &LinearOperator,
    budget: SearchBudget,
    seed: u64,
    tol: f64,
) -> Result<PositivityReport> {
    positivity_scan_from(s, t, &[], budget, seed, tol)
}

/// Both directions of the norm-one criterion for a projection `P`:
/// `P` is numerically positive iff `‖Id − P‖ = 1`, and (applied to the
/// projection `Id − P`) `Id − P` is numerically positive iff `‖P‖ = 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropACheck {
    /// `‖Id − P‖ = ‖Σ f_j⊗u_j‖` estimate.
    pub norm_id_minus_p: OperatorNorm,
    /// Scan of `Id − P`.
    pub positivity_of_id_minus_p: PositivityReport,
    pub norm_p: OperatorNorm,
    /// Scan of `P`.
    pub positivity_of_p: PositivityReport,
    /// `‖P‖ ≤ 1 + NORM_TOL ⟺ Id − P not refuted`.
    pub consistent_p: bool,
    /// `‖Id − P‖ ≤ 1 + NORM_TOL ⟺ P not refuted`.
    pub consistent_id_minus_p: bool,
    pub consistent: bool,
}

/// Searches the norm and the numerical range of both `P` and `Id − P`.
///
/// Maximizers of each norm search seed the positivity scan of the other
/// operator; restarts share the seed stream.
pub fn prop_a_check(
    s: &SpaceSpec,
    ps: &ProjectionSpec,
    budget: SearchBudget,
    seed: u64,
    tol: f64,
) -> Result<PropACheck> {
    let q = ps.complement_operator();
    let p = q.complement();
    let norm_p = operator_norm(s, &p, budget, seed)?;
    let norm_q = operator_norm(s, &q, budget, seed)?;
    let mut hints = vec![norm_p.maximizer.clone(), norm_q.maximizer.clone()];
    hints.extend(ps.us.iter().cloned());
    hints.push(p.apply(&norm_p.maximizer));
    hints.push(q.apply(&norm_q.maximizer));
    let pos_q = positivity_scan_from(s, &q, &hints, budget, seed, tol)?;
    let pos_p = positivity_scan_from(s, &p, &hints, budget, seed, tol)?;
    let consistent_p = (norm_p.estimate <= 1.0 + NORM_TOL) == (pos_q.verdict != Verdict::Refuted);
    let consistent_q = (norm_q.estimate <= 1.0 + NORM_TOL) == (pos_p.verdict != Verdict::Refuted);
    Ok(PropACheck {
        norm_id_minus_p: norm_q,
        positivity_of_id_minus_p: pos_q,
        norm_p,
        positivity_of_p: pos_p,
        consistent_p,
        consistent_id_minus_p: consistent_q,
        consistent: consistent_p && consistent_q,
    })
}

/// A point `x_ε = e_k + ε e_{p_i}` where `Σ f_j⊗u_j` has negative numerical
/// form, showing `P` is not contractive.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SupportWitness {
    /// Coordinate outside every `supp f_j` where some `u` is nonzero.
    pub k: usize,
    /// Pivot coordinate of the standardized functional used.
    pub pivot: usize,
    pub eps: f64,
    pub x: Vec<f64>,
    pub xstar: Vec<f64>,
    /// `ν(x_ε)` over all norming extremes (negative).
    pub value: f64,
}

/// If some `u` has mass at a coordinate `k` outside `⋃ supp f_j`, builds the
/// witness from the support lemma: with standardized `f` (pivots `p_i`) and
/// `u_ik ≠ 0`, `x_ε = e_k + ε e_{p_i}` with `sgn ε = −sgn u_ik`, shrinking
/// `ε` until the unit norming functional `a e_k* + b e_{p_i}*` satisfies
/// `|b| < η/(2M)` and `a > 1/2` (`η = |u_ik|`, `M = max |u_jj| + 1`).
///
/// Requires properties (P) and (Q). Returns `None` when the supports agree.
pub fn lemma_supp_refuter(s: &SpaceSpec, ps: &ProjectionSpec) -> Result<Option<SupportWitness>> {
    if !has_property_p(s) || !has_property_q(s) {
        return Err(Error::Precondition("space lacks property (P) or (Q)".into()));
    }
    s.check_dim(&ps.fs[0])?;
    let (std, st) = ps.standardized()?;
    let d = s.dim();
    let q = std.complement_operator();
    let in_f: Vec<bool> = (0..d).map(|c| std.fs.iter().any(|f| f[c] != 0.0)).collect();
    let m_bound = st
        .pivots
        .iter()
        .enumerate()
        .map(|(j, &p)| std.us[j][p].abs())
        .fold(0.0, f64::max)
        + 1.0;
    for k in (0..d).filter(|&k| !in_f[k]) {
        for (i, &pivot) in st.pivots.iter().enumerate() {
            let u_ik = std.us[i][k];
            let eta = u_ik.abs();
            if eta <= 1e-12 {
                continue;
            }
            let mut eps = -u_ik.signum() * 0.1;
            for _ in 0..40 {
                let mut x = vec![0.0; d];
                x[k] = 1.0;
                x[pivot] = eps;
                let (value, xstar) = numerical_form(s, &q, &x, 0)?;
                let n = s.norm(&x)?;
                // unit-norm functional: a e_k* + b e_pivot*
                let (a, b) = (xstar[k] / n, xstar[pivot] / n);
                if b.abs() < eta / (2.0 * m_bound) && a > 0.5 && value < 0.0 {
                    return Ok(Some(SupportWitness {
                        k,
                        pivot,
                        eps,
                        x: x.iter().map(|v| v / n).collect(),
                        xstar,
                        value,
                    }));
                }
                eps *= 0.5;
            }
        }
    }
    Ok(None)
}
