//! Dual norms, norming functionals and the extreme points of norming sets.
//!
//! Functionals follow the unnormalized convention: `x*` norms `x` when
//! `‖x*‖_* = ‖x‖` and `x*(x) = ‖x‖²`.

use rand::seq::IndexedRandom;

use crate::error::{Error, Result};
use crate::rng::seeded_rng;
use crate::search::{self, Objective, SearchBudget};
use crate::spaces::{
    decreasing_rearrangement, modular, young_conjugate, LorentzSpec, OrliczFlavor, OrliczFunction, OrliczSpec,
    SpaceSpec, YoungConjugate,
};

/// Default number of norming extremes enumerated before sampling kicks in.
pub const DEFAULT_EXTREME_CAP: usize = 64;

const NORMING_TOL: f64 = 1e-6;
const KINK_REL: f64 = 1e-12;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `max{g(x) : ‖x‖ ≤ 1}` in closed form.
///
/// Lorentz duals use the level function of `|g|` (slopes of the least
/// concave majorant of its partial sums against the cumulative weights).
/// The Luxemburg and Orlicz norms are dual to each other through `φ*`.
pub fn dual_norm(s: &SpaceSpec, g: &[f64]) -> Result<f64> {
    s.check_dim(g)?;
    if g.iter().all(|&v| v == 0.0) {
        return Ok(0.0);
    }
    match s {
        SpaceSpec::Lorentz(l) => Ok(lorentz_dual_norm(l, g)),
        SpaceSpec::Orlicz(o) => {
            let c = young_conjugate(&o.phi);
            match o.flavor {
                OrliczFlavor::Luxemburg => Ok(modular::amemiya(&c, g)?.value),
                OrliczFlavor::Orlicz => modular::luxemburg(&c, g, None),
            }
        }
    }
}

/// Slopes of the least concave majorant of `(W_i, G_i)`, one per rank among
/// the positive weights. The zero-weight tail is folded into the last rank.
fn level_slopes(w: &[f64], sorted: &[f64]) -> Vec<f64> {
    let m = w.iter().rposition(|&v| v > 0.0).map_or(1, |i| i + 1);
    let mut pts = Vec::with_capacity(m + 1);
    pts.push((0.0, 0.0));
    let (mut cw, mut cg) = (0.0, 0.0);
    for i in 0..m {
        cw += w[i];
        cg += sorted[i];
        if i == m - 1 {
            cg += sorted[m..].iter().sum::<f64>();
        }
        pts.push((cw, cg));
    }
    let mut hull: Vec<usize> = Vec::new();
    for k in 0..pts.len() {
        while hull.len() >= 2 {
            let (a, b) = (pts[hull[hull.len() - 2]], pts[hull[hull.len() - 1]]);
            let c = pts[k];
            let cross = (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(k);
    }
    let mut slopes = vec![0.0; m];
    for seg in hull.windows(2) {
        let (a, b) = (pts[seg[0]], pts[seg[1]]);
        let sigma = (b.1 - a.1) / (b.0 - a.0);
        for s in &mut slopes[seg[0]..seg[1]] {
            *s = sigma;
        }
    }
    slopes
}

fn lorentz_dual_norm(s: &LorentzSpec, g: &[f64]) -> f64 {
    let (sorted, _) = decreasing_rearrangement(g);
    let w = s.w.as_slice();
    let slopes = level_slopes(w, &sorted);
    if s.p == 1.0 {
        return slopes[0];
    }
    let q = s.p / (s.p - 1.0);
    let top = slopes[0];
    let sum: f64 = slopes.iter().zip(w).map(|(&sig, &wi)| wi * (sig / top).powf(q)).sum();
    top * sum.powf(1.0 / q)
}

struct DualObjective<'a> {
    s: &'a SpaceSpec,
    g: &'a [f64],
}

impl Objective for DualObjective<'_> {
    fn value(&self, x: &[f64]) -> f64 {
        match self.s.norm(x) {
            Ok(n) if n > 0.0 => dot(self.g, x) / n,
            _ => f64::NEG_INFINITY,
        }
    }

    fn gradient(&self, x: &[f64]) -> Option<Vec<f64>> {
        let n = self.s.norm(x).ok().filter(|&n| n > 0.0)?;
        let sub = canonical_functional(self.s, x).ok()?;
        let r = dot(self.g, x) / n;
        Some(self.g.iter().zip(&sub).map(|(gi, si)| (gi - r * si / n) / n).collect())
    }
}

/// Search estimate of [`dual_norm`]: a lower bound, monotone in the budget.
///
/// The sign-aligned start `sgn(g)` and the basis vectors are always tried.
pub fn dual_norm_search(s: &SpaceSpec, g: &[f64], budget: SearchBudget, seed: u64) -> Result<f64> {
    s.check_dim(g)?;
    if g.iter().all(|&v| v == 0.0) {
        return Ok(0.0);
    }
    let dim = s.dim();
    let mut starts = vec![g.iter().map(|v| v.signum()).collect::<Vec<_>>(), g.to_vec()];
    starts.extend(search::structured_starts(dim));
    starts.extend(search::random_starts(dim, budget.restarts, seed));
    let best = search::maximize(&DualObjective { s, g }, &starts, budget.steps);
    Ok(best.value.max(0.0))
}

/// Rank ranges `[r0, r1)` of equal moduli in a sorted vector.
fn tie_blocks(sorted: &[f64]) -> Vec<(usize, usize)> {
    let mut blocks = Vec::new();
    let mut r0 = 0;
    for r in 1..=sorted.len() {
        if r == sorted.len() || sorted[r] != sorted[r0] {
            blocks.push((r0, r));
            r0 = r;
        }
    }
    blocks
}

/// Lorentz functional `‖x‖^{2−p} c_j sgn(x_j) |x_j|^{p−1}` for per-index
/// coefficients `c`; coordinates with `x_j = 0` take `zero_part[j]` (only
/// nonzero when `p = 1`).
fn lorentz_functional(s: &LorentzSpec, x: &[f64], coef: &[f64], zero_part: &[f64]) -> Vec<f64> {
    let p = s.p;
    let m = x.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let norm_scaled =
        crate::spaces::lorentz_norm(s, &x.iter().map(|v| v / m).collect::<Vec<_>>()).expect("dimension checked");
    let factor = m * norm_scaled.powf(2.0 - p);
    x.iter()
        .enumerate()
        .map(|(j, &v)| {
            if v == 0.0 {
                factor * zero_part[j]
            } else {
                factor * coef[j] * v.signum() * (v.abs() / m).powf(p - 1.0)
            }
        })
        .collect()
}

fn lorentz_canonical(s: &LorentzSpec, x: &[f64]) -> Vec<f64> {
    let w = s.w.as_slice();
    let (sorted, order) = decreasing_rearrangement(x);
    let mut coef = vec![0.0; x.len()];
    for (r0, r1) in tie_blocks(&sorted) {
        let avg = w[r0..r1].iter().sum::<f64>() / (r1 - r0) as f64;
        for &i in &order[r0..r1] {
            coef[i] = avg;
        }
    }
    lorentz_functional(s, x, &coef, &vec![0.0; x.len()])
}

/// Subgradient selection at the Luxemburg norm: `sgn(x_j) v_j` rescaled so
/// that `x*(x) = ‖x‖²`.
fn rescale(x: &[f64], v: &[f64], norm: f64) -> Option<Vec<f64>> {
    let pairing: f64 = x.iter().zip(v).map(|(a, b)| a.abs() * b).sum();
    if !(pairing > 0.0) {
        return None;
    }
    let c = norm * norm / pairing;
    Some(
        x.iter()
            .zip(v)
            .map(|(&a, &b)| if a == 0.0 { c * b } else { c * a.signum() * b })
            .collect(),
    )
}

fn luxemburg_canonical(phi: &OrliczFunction, x: &[f64], norm: f64) -> Result<Vec<f64>> {
    let ratio = |v: &f64| {
        let t = v.abs() / norm;
        near_breakpoint(phi, t).unwrap_or(t)
    };
    let left: Vec<f64> = x.iter().map(|v| phi.deriv_left(ratio(v))).collect();
    if let Some(f) = rescale(x, &left, norm) {
        return Ok(f);
    }
    let right: Vec<f64> = x
        .iter()
        .map(|v| if *v == 0.0 { 0.0 } else { phi.deriv_right(ratio(v)) })
        .collect();
    rescale(x, &right, norm).ok_or_else(|| Error::VerificationFailed("derivative vanishes on the support".into()))
}

/// Subdifferential bounds `[φ′₋(k|x_j|), φ′₊(k|x_j|)]` at the Amemiya
/// minimizer, evaluated across its bisection bracket.
struct OrliczBox {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

fn orlicz_box(phi: &OrliczFunction, x: &[f64]) -> Result<Option<OrliczBox>> {
    let sol = modular::amemiya(phi, x)?;
    let Some((lo, hi)) = sol.bracket else {
        return Ok(None);
    };
    let lower = x.iter().map(|v| phi.deriv_left(v.abs() / hi)).collect();
    let upper = x
        .iter()
        .map(|v| if *v == 0.0 { 0.0 } else { phi.deriv_right(v.abs() / lo) })
        .collect();
    Ok(Some(OrliczBox { lower, upper }))
}

fn conjugate_modular(c: &YoungConjugate, v: &[f64]) -> f64 {
    v.iter().map(|&u| c.eval(u)).sum()
}

/// Point of `[A, B]` (coordinatewise interpolation) with `Σ φ*(v) = 1`.
fn interpolate_to_unit(c: &YoungConjugate, a: &[f64], b: &[f64]) -> Vec<f64> {
    let at = |theta: f64| -> Vec<f64> { a.iter().zip(b).map(|(l, u)| l + theta * (u - l)).collect() };
    if conjugate_modular(c, a) >= 1.0 {
        return a.to_vec();
    }
    if conjugate_modular(c, b) <= 1.0 {
        return b.to_vec();
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if conjugate_modular(c, &at(mid)) <= 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    at(lo)
}

fn orlicz_canonical(o: &OrliczSpec, x: &[f64], norm: f64) -> Result<Vec<f64>> {
    let v = match orlicz_box(&o.phi, x)? {
        None => vec![o.phi.asymptotic_slope(); x.len()],
        Some(bx) => interpolate_to_unit(&young_conjugate(&o.phi), &bx.lower, &bx.upper),
    };
    let v: Vec<f64> = v
        .iter()
        .zip(x)
        .map(|(&vi, &xi)| if xi == 0.0 { 0.0 } else { vi })
        .collect();
    rescale(x, &v, norm).ok_or_else(|| Error::VerificationFailed("degenerate pairing".into()))
}

/// The canonical norming candidate, without the verification step.
pub(crate) fn canonical_functional(s: &SpaceSpec, x: &[f64]) -> Result<Vec<f64>> {
    s.check_dim(x)?;
    let norm = s.norm(x)?;
    if norm == 0.0 {
        return Err(Error::ZeroVector);
    }
    match s {
        SpaceSpec::Lorentz(l) => Ok(lorentz_canonical(l, x)),
        SpaceSpec::Orlicz(o) => match o.flavor {
            OrliczFlavor::Luxemburg => luxemburg_canonical(&o.phi, x, norm),
            OrliczFlavor::Orlicz => orlicz_canonical(o, x, norm),
        },
    }
}

/// Canonical norming functional of `x ≠ 0`.
///
/// Lorentz: rank weights (block-averaged over ties) times
/// `sgn(x_j)|x_j|^{p−1}`. Luxemburg: `sgn(x_j) φ′(|x_j|/‖x‖)`. Orlicz norm:
/// a subgradient `φ′(k*|x_j|)` at the Amemiya minimizer `k*`. Each is
/// rescaled to `x*(x) = ‖x‖²` and checked against [`dual_norm`].
///
/// ```
/// use seqspace::{duality::norming_functional, LorentzSpec, SpaceSpec};
/// let l2 = SpaceSpec::from(LorentzSpec::lp(2, 2.0).unwrap());
/// let g = norming_functional(&l2, &[2.0, 1.0]).unwrap();
/// assert!((g[0] - 2.0).abs() < 1e-12 && (g[1] - 1.0).abs() < 1e-12);
/// ```
pub fn norming_functional(s: &SpaceSpec, x: &[f64]) -> Result<Vec<f64>> {
    let g = canonical_functional(s, x)?;
    if !is_norming_pair(s, x, &g, NORMING_TOL)? {
        return Err(Error::VerificationFailed(format!(
            "candidate misses tolerance {NORMING_TOL}"
        )));
    }
    Ok(g)
}

/// `|g(x) − ‖x‖²| ≤ tol·max(1, ‖x‖²)` and `‖g‖_* ≤ ‖x‖(1 + tol)`.
pub fn is_norming_pair(s: &SpaceSpec, x: &[f64], g: &[f64], tol: f64) -> Result<bool> {
    s.check_dim(x)?;
    s.check_dim(g)?;
    let n = s.norm(x)?;
    let n2 = n * n;
    if (dot(g, x) - n2).abs() > tol * n2.max(1.0) {
        return Ok(false);
    }
    Ok(dual_norm(s, g)? <= n * (1.0 + tol) + tol * f64::EPSILON)
}

/// Distinct permutations of a multiset, in lexicographic order.
fn distinct_permutations(mut items: Vec<f64>) -> Vec<Vec<f64>> {
    items.sort_by(f64::total_cmp);
    let mut out = vec![items.clone()];
    loop {
        let n = items.len();
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| items[i] < items[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| items[j] > items[i]).expect("pivot exists");
        items.swap(i, j);
        items[i + 1..].reverse();
        out.push(items.clone());
    }
}

/// Finite choice sets per slot, combined as a Cartesian product; capped and
/// sampled with a seeded RNG when the product is larger than `cap`.
fn product_choices<T: Clone>(slots: &[Vec<T>], cap: usize, seed: u64) -> Vec<Vec<T>> {
    let total = slots.iter().try_fold(1usize, |acc, s| acc.checked_mul(s.len()));
    match total {
        Some(total) if total <= cap => {
            let mut out = vec![Vec::new()];
            for slot in slots {
                out = out
                    .into_iter()
                    .flat_map(|prefix| {
                        slot.iter().map(move |c| {
                            let mut v = prefix.clone();
                            v.push(c.clone());
                            v
                        })
                    })
                    .collect();
            }
            out
        }
        _ => {
            let mut rng = seeded_rng(seed);
            (0..cap)
                .map(|_| {
                    slots
                        .iter()
                        .map(|s| s.choose(&mut rng).expect("nonempty slot").clone())
                        .collect()
                })
                .collect()
        }
    }
}

fn lorentz_extremes(s: &LorentzSpec, x: &[f64], cap: usize, seed: u64) -> Vec<Vec<f64>> {
    let w = s.w.as_slice();
    let (sorted, order) = decreasing_rearrangement(x);
    let dim = x.len();
    // a slot per tie block: each choice is (coefficient, zero-part) per rank
    let mut slots: Vec<Vec<Vec<(f64, f64)>>> = Vec::new();
    let mut slot_ranks = Vec::new();
    for (r0, r1) in tie_blocks(&sorted) {
        let weights = w[r0..r1].to_vec();
        let perms = distinct_permutations(weights.clone());
        let choices: Vec<Vec<(f64, f64)>> = if sorted[r0] == 0.0 {
            if s.p == 1.0 {
                let k = r1 - r0;
                let mut out = Vec::new();
                if k < 16 {
                    for perm in &perms {
                        for mask in 0..(1u32 << k) {
                            out.push(
                                perm.iter()
                                    .enumerate()
                                    .map(|(i, &wi)| {
                                        let sg = if mask & (1 << i) != 0 { -1.0 } else { 1.0 };
                                        (0.0, sg * wi)
                                    })
                                    .collect(),
                            );
                        }
                    }
                }
                out.retain(|c: &Vec<(f64, f64)>| c.iter().any(|&(_, z)| z != 0.0));
                out
            } else {
                Vec::new()
            }
        } else {
            perms
                .into_iter()
                .map(|perm| perm.into_iter().map(|wi| (wi, 0.0)).collect())
                .collect()
        };
        if choices.len() > 1 || (sorted[r0] == 0.0 && !choices.is_empty()) {
            slots.push(choices);
            slot_ranks.push((r0, r1));
        }
    }
    if slots.is_empty() {
        return Vec::new();
    }
    let canonical = lorentz_canonical(s, x);
    let mut base_coef = vec![0.0; dim];
    for (r, &i) in order.iter().enumerate() {
        base_coef[i] = w[r];
    }
    product_choices(&slots, cap, seed)
        .into_iter()
        .map(|combo| {
            let mut coef = base_coef.clone();
            let mut zero = vec![0.0; dim];
            for (choice, &(r0, _)) in combo.iter().zip(&slot_ranks) {
                for (k, &(c, z)) in choice.iter().enumerate() {
                    let i = order[r0 + k];
                    coef[i] = c;
                    zero[i] = z;
                }
            }
            lorentz_functional(s, x, &coef, &zero)
        })
        .filter(|g| *g != canonical)
        .collect()
}

fn near_breakpoint(phi: &OrliczFunction, t: f64) -> Option<f64> {
    phi.breakpoints().find(|&b| (t - b).abs() <= KINK_REL * b.max(1.0))
}

fn luxemburg_extremes(phi: &OrliczFunction, x: &[f64], norm: f64, cap: usize, seed: u64) -> Vec<Vec<f64>> {
    let d0 = phi.deriv_right(0.0);
    let slots: Vec<Vec<f64>> = x
        .iter()
        .map(|&v| {
            if v == 0.0 {
                return if d0 > 0.0 { vec![-d0, d0] } else { vec![0.0] };
            }
            let t = v.abs() / norm;
            let t = near_breakpoint(phi, t).unwrap_or(t);
            let (l, r) = (phi.deriv_left(t), phi.deriv_right(t));
            if r > l {
                vec![l, r]
            } else {
                vec![l]
            }
        })
        .collect();
    if slots.iter().all(|s| s.len() == 1) {
        return Vec::new();
    }
    product_choices(&slots, cap, seed)
        .into_iter()
        .filter_map(|v| rescale(x, &v, norm))
        .collect()
}

fn orlicz_extremes(o: &OrliczSpec, x: &[f64], norm: f64, cap: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    let Some(bx) = orlicz_box(&o.phi, x)? else {
        return Ok(Vec::new());
    };
    let c = young_conjugate(&o.phi);
    let d0 = o.phi.deriv_right(0.0);
    let kinks: Vec<usize> = (0..x.len())
        .filter(|&j| x[j] != 0.0 && bx.upper[j] > bx.lower[j] * (1.0 + 1e-12) + 1e-15)
        .collect();
    let zeros: Vec<usize> = (0..x.len()).filter(|&j| x[j] == 0.0 && d0 > 0.0).collect();
    let mid: Vec<f64> = bx
        .lower
        .iter()
        .zip(&bx.upper)
        .zip(x)
        .map(|((l, u), &xi)| if xi == 0.0 { 0.0 } else { 0.5 * (l + u) })
        .collect();
    // vertices of box ∩ {Σφ*(v) = 1}: all kink coordinates but one at an end
    let mut vertices: Vec<Vec<f64>> = Vec::new();
    for (fi, &free) in kinks.iter().enumerate() {
        let others: Vec<usize> = kinks.iter().copied().filter(|&j| j != free).collect();
        let slots: Vec<Vec<bool>> = others.iter().map(|_| vec![false, true]).collect();
        for pattern in product_choices(&slots, cap, seed ^ fi as u64) {
            let mut v = mid.clone();
            for (&j, &up) in others.iter().zip(&pattern) {
                v[j] = if up { bx.upper[j] } else { bx.lower[j] };
            }
            let mut a = v.clone();
            let mut b = v.clone();
            a[free] = bx.lower[free];
            b[free] = bx.upper[free];
            if conjugate_modular(&c, &a) <= 1.0 + 1e-12 && conjugate_modular(&c, &b) >= 1.0 - 1e-12 {
                vertices.push(interpolate_to_unit(&c, &a, &b));
            }
        }
    }
    if vertices.is_empty() {
        if zeros.is_empty() {
            return Ok(Vec::new());
        }
        vertices.push(interpolate_to_unit(&c, &bx.lower, &bx.upper));
    }
    let zero_slots: Vec<Vec<f64>> = zeros.iter().map(|_| vec![-d0, d0]).collect();
    let zero_choices = if zeros.is_empty() {
        vec![Vec::new()]
    } else {
        product_choices(&zero_slots, cap, seed.wrapping_add(1))
    };
    let mut out = Vec::new();
    for v in &vertices {
        for zc in &zero_choices {
            let mut v = v.clone();
            for (&j, &z) in zeros.iter().zip(zc) {
                v[j] = z;
            }
            if let Some(g) = rescale(x, &v, norm) {
                out.push(g);
            }
        }
    }
    Ok(out)
}

/// Extreme points of the norming set of `x`, canonical functional first.
///
/// Lorentz: distinct weight permutations inside each tie block (plus signed
/// weights on the zero block when `p = 1`). Luxemburg: left/right derivative
/// choices at kink ratios. Orlicz norm: vertices of the subdifferential box
/// cut by `Σ φ*(v) = 1`. At most `cap` entries; when the combinatorial count
/// exceeds `cap`, combinations are sampled with `seed`.
pub fn norming_extremes(s: &SpaceSpec, x: &[f64], cap: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    let canonical = canonical_functional(s, x)?;
    let norm = s.norm(x)?;
    let rest = match s {
        SpaceSpec::Lorentz(l) => lorentz_extremes(l, x, cap.saturating_sub(1).max(1), seed),
        SpaceSpec::Orlicz(o) => match o.flavor {
            OrliczFlavor::Luxemburg => luxemburg_extremes(&o.phi, x, norm, cap.saturating_sub(1).max(1), seed),
            OrliczFlavor::Orlicz => orlicz_extremes(o, x, norm, cap.saturating_sub(1).max(1), seed)?,
        },
    };
    let mut out = vec![canonical];
    for g in rest {
        if out.len() >= cap.max(1) {
            break;
        }
        if !out.contains(&g) {
            out.push(g);
        }
    }
    Ok(out)
}
