//! Luxemburg and Amemiya (Orlicz-norm) solvers over any [`YoungFunction`].

use super::orlicz::YoungFunction;
use crate::error::{Error, Result};

const MAX_BISECTIONS: usize = 200;
const MAX_EXPANSIONS: usize = 2000;

/// Moduli sorted non-increasingly so that sums do not depend on coordinate order.
fn sorted_moduli(x: &[f64]) -> Vec<f64> {
    let mut a: Vec<f64> = x.iter().map(|v| v.abs()).filter(|&v| v > 0.0).collect();
    a.sort_by(|a, b| b.total_cmp(a));
    a
}

fn modular<F: YoungFunction + ?Sized>(psi: &F, a: &[f64], lambda: f64) -> f64 {
    let end = psi.domain_end();
    let mut sum = 0.0;
    for &v in a.iter().rev() {
        let t = v / lambda;
        if t > end {
            return f64::INFINITY;
        }
        sum += psi.value(t);
    }
    sum
}

/// `inf{λ > 0 : Σ ψ(|x_i|/λ) ≤ 1}`.
///
/// `bracket` is an optional starting interval `[lo, hi]` with the modular
/// `> 1` at `lo` and `≤ 1` at `hi`; it is widened if that is not the case.
pub fn luxemburg<F: YoungFunction + ?Sized>(psi: &F, x: &[f64], bracket: Option<(f64, f64)>) -> Result<f64> {
    let a = sorted_moduli(x);
    if a.is_empty() {
        return Ok(0.0);
    }
    let amax = a[0];
    let (mut lo, mut hi) = bracket.unwrap_or((amax, amax));
    let mut guard = 0;
    while modular(psi, &a, hi) > 1.0 {
        hi *= 2.0;
        guard += 1;
        if guard > MAX_EXPANSIONS || !hi.is_finite() {
            return Err(Error::NonConvergentBracket("upper end".into()));
        }
    }
    guard = 0;
    lo = lo.min(hi);
    while modular(psi, &a, lo) <= 1.0 {
        lo *= 0.5;
        guard += 1;
        if guard > MAX_EXPANSIONS || lo == 0.0 {
            return Err(Error::NonConvergentBracket("lower end".into()));
        }
    }
    let (_, hi) = shrink_bracket(lo, hi, |lam| modular(psi, &a, lam) - 1.0);
    Ok(hi)
}

/// Shrinks `[lo, hi]` with `g(lo) > 0 ≥ g(hi)` for a non-increasing `g` down
/// to adjacent floats, by Illinois steps with a bisection fallback whenever
/// an end is infinite or four steps fail to halve the bracket.
fn shrink_bracket(mut lo: f64, mut hi: f64, g: impl Fn(f64) -> f64) -> (f64, f64) {
    let (mut glo, mut ghi) = (g(lo), g(hi));
    let mut last_side = 0i8;
    let mut checkpoint = hi - lo;
    for step in 1..=4 * MAX_BISECTIONS {
        let secant = hi - ghi * (hi - lo) / (ghi - glo);
        let bisect = step % 4 == 0 && hi - lo > 0.5 * checkpoint;
        if step % 4 == 0 {
            checkpoint = hi - lo;
        }
        let mid = if !bisect && glo.is_finite() && ghi.is_finite() && secant > lo && secant < hi {
            secant
        } else {
            0.5 * (lo + hi)
        };
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = g(mid);
        if gm <= 0.0 {
            (hi, ghi) = (mid, gm);
            if last_side == 1 {
                glo *= 0.5;
            }
            last_side = 1;
        } else {
            (lo, glo) = (mid, gm);
            if last_side == -1 {
                ghi *= 0.5;
            }
            last_side = -1;
        }
    }
    (lo, hi)
}

/// Outcome of minimizing `h(λ) = λ (1 + Σ ψ(|x_i|/λ))` over `λ > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmemiyaSolution {
    pub value: f64,
    /// Bracket `[lo, hi]` around the minimizing `λ`; `None` when the infimum
    /// is the limit `λ → 0`.
    pub bracket: Option<(f64, f64)>,
}

fn amemiya_h<F: YoungFunction + ?Sized>(psi: &F, a: &[f64], lambda: f64) -> f64 {
    let m = modular(psi, a, lambda);
    lambda * (1.0 + m)
}

/// Right derivative of `h` in `λ` (ratios move left, so `ψ′₋` is used).
fn amemiya_slope<F: YoungFunction + ?Sized>(psi: &F, a: &[f64], lambda: f64) -> f64 {
    let end = psi.domain_end();
    let mut d = 1.0;
    for &v in a.iter().rev() {
        let t = v / lambda;
        if t > end {
            return f64::NEG_INFINITY;
        }
        d += psi.value(t) - t * psi.deriv_left(t);
    }
    d
}

/// Amemiya formula `inf_{k>0} (1/k)(1 + Σ ψ(k|x_i|))`, written in `λ = 1/k`
/// where it is the perspective of a convex function, hence convex.
pub fn amemiya<F: YoungFunction + ?Sized>(psi: &F, x: &[f64]) -> Result<AmemiyaSolution> {
    let a = sorted_moduli(x);
    if a.is_empty() {
        return Ok(AmemiyaSolution {
            value: 0.0,
            bracket: None,
        });
    }
    let amax = a[0];
    let lambda_min = if psi.domain_end().is_finite() {
        amax / psi.domain_end()
    } else {
        0.0
    };
    let mut hi = amax.max(lambda_min);
    let mut guard = 0;
    while amemiya_slope(psi, &a, hi) < 0.0 {
        hi *= 2.0;
        guard += 1;
        if guard > MAX_EXPANSIONS || !hi.is_finite() {
            return Err(Error::NonConvergentBracket("amemiya upper end".into()));
        }
    }
    let mut lo;
    if lambda_min > 0.0 {
        lo = lambda_min;
        if amemiya_slope(psi, &a, lo) >= 0.0 {
            return Ok(AmemiyaSolution {
                value: amemiya_h(psi, &a, lo),
                bracket: Some((lo, lo)),
            });
        }
    } else {
        lo = hi;
        guard = 0;
        while amemiya_slope(psi, &a, lo) >= 0.0 {
            lo *= 0.5;
            guard += 1;
            if lo < hi * 1e-30 || guard > MAX_EXPANSIONS {
                // increasing all the way down: the infimum is the λ → 0 limit
                let slope = psi.asymptotic_slope();
                let limit = a.iter().rev().sum::<f64>() * slope;
                return Ok(AmemiyaSolution {
                    value: limit.min(amemiya_h(psi, &a, lo)),
                    bracket: None,
                });
            }
        }
    }
    // slope(lo) < 0 <= slope(hi)
    let (lo, hi) = shrink_bracket(lo, hi, |lam| -amemiya_slope(psi, &a, lam));
    let value = amemiya_h(psi, &a, hi).min(amemiya_h(psi, &a, lo));
    Ok(AmemiyaSolution {
        value,
        bracket: Some((lo, hi)),
    })
}
