//! Piecewise-power Orlicz functions.
//!
//! An [`OrliczFunction`] is stored as an ordered list of [`Piece`]s. Piece `k`
//! is active on `[start_k, start_{k+1})` and the last piece extends to
//! infinity. Every segment kind has a closed-form derivative and a closed-form
//! inverse derivative, which is what the conjugate and the norming functionals
//! need.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const CONTINUITY_TOL: f64 = 1e-10;

/// Shape of one piece of an Orlicz function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Segment {
    /// `coef * t^exp`, measured from the origin.
    Power { coef: f64, exp: f64 },
    /// `intercept + slope * t`.
    Affine { slope: f64, intercept: f64 },
    /// `base + slope * (t - s) + coef * (t - s)^exp` where `s` is the piece start.
    Shifted { base: f64, slope: f64, coef: f64, exp: f64 },
}

impl Segment {
    fn value(&self, start: f64, t: f64) -> f64 {
        match *self {
            Segment::Power { coef, exp } => coef * t.powf(exp),
            Segment::Affine { slope, intercept } => intercept + slope * t,
            Segment::Shifted { base, slope, coef, exp } => {
                let h = (t - start).max(0.0);
                base + slope * h + coef * h.powf(exp)
            }
        }
    }

    /// Derivative at an interior point (right derivative at the start).
    fn deriv(&self, start: f64, t: f64) -> f64 {
        match *self {
            Segment::Power { coef, exp } => power_deriv(coef, exp, t),
            Segment::Affine { slope, .. } => slope,
            Segment::Shifted { slope, coef, exp, .. } => slope + power_deriv(coef, exp, (t - start).max(0.0)),
        }
    }

    fn has_constant_slope(&self) -> bool {
        match *self {
            Segment::Power { coef, exp } => exp == 1.0 || coef == 0.0,
            Segment::Affine { .. } => true,
            Segment::Shifted { coef, exp, .. } => exp == 1.0 || coef == 0.0,
        }
    }

    /// Point where the derivative equals `u`, assuming the derivative is
    /// strictly increasing on this segment and `u` lies in its range.
    fn inverse_deriv(&self, start: f64, u: f64) -> f64 {
        match *self {
            Segment::Power { coef, exp } => (u / (coef * exp)).powf(1.0 / (exp - 1.0)),
            Segment::Affine { .. } => start,
            Segment::Shifted { slope, coef, exp, .. } => {
                start + ((u - slope).max(0.0) / (coef * exp)).powf(1.0 / (exp - 1.0))
            }
        }
    }

    fn is_identically_zero(&self) -> bool {
        match *self {
            Segment::Power { coef, .. } => coef == 0.0,
            Segment::Affine { slope, intercept } => slope == 0.0 && intercept == 0.0,
            Segment::Shifted { base, slope, coef, .. } => base == 0.0 && slope == 0.0 && coef == 0.0,
        }
    }
}

fn power_deriv(coef: f64, exp: f64, t: f64) -> f64 {
    if coef == 0.0 {
        0.0
    } else if exp == 1.0 {
        coef
    } else if t == 0.0 {
        0.0
    } else {
        coef * exp * t.powf(exp - 1.0)
    }
}

/// A segment together with the left end of its interval.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub start: f64,
    #[serde(flatten)]
    pub segment: Segment,
}

impl Piece {
    pub fn new(start: f64, segment: Segment) -> Self {
        Piece { start, segment }
    }
}

/// Convex, non-decreasing function on `[0, ∞)` with `φ(0) = 0` and `φ(1) = 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Piece>", into = "Vec<Piece>")]
pub struct OrliczFunction {
    pieces: Vec<Piece>,
}

impl TryFrom<Vec<Piece>> for OrliczFunction {
    type Error = Error;

    fn try_from(pieces: Vec<Piece>) -> Result<Self> {
        OrliczFunction::new(pieces)
    }
}

impl From<OrliczFunction> for Vec<Piece> {
    fn from(phi: OrliczFunction) -> Self {
        phi.pieces
    }
}

impl OrliczFunction {
    /// Validates the piece list: starts at 0, φ(0) = 0, continuity at the
    /// breakpoints, monotone and convex, and φ(1) = 1.
    pub fn new(pieces: Vec<Piece>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidOrlicz(m));
        if pieces.is_empty() {
            return bad("no pieces".into());
        }
        if pieces[0].start != 0.0 {
            return bad("first piece must start at 0".into());
        }
        for (k, piece) in pieces.iter().enumerate() {
            if !piece.start.is_finite() {
                return bad(format!("piece {k} has a non-finite start"));
            }
            if k > 0 && piece.start <= pieces[k - 1].start {
                return bad(format!("piece starts must increase (piece {k})"));
            }
            let ok = match piece.segment {
                Segment::Power { coef, exp } => coef.is_finite() && coef >= 0.0 && exp.is_finite() && exp >= 1.0,
                Segment::Affine { slope, intercept } => slope.is_finite() && slope >= 0.0 && intercept.is_finite(),
                Segment::Shifted { base, slope, coef, exp } => {
                    base.is_finite()
                        && slope.is_finite()
                        && slope >= 0.0
                        && coef.is_finite()
                        && coef >= 0.0
                        && exp.is_finite()
                        && exp >= 1.0
                }
            };
            if !ok {
                return bad(format!("piece {k} needs finite, nonnegative slope/coef and exp >= 1"));
            }
        }
        let phi = OrliczFunction { pieces };
        if phi.pieces[0].segment.value(0.0, 0.0).abs() > CONTINUITY_TOL {
            return bad("phi(0) must be 0".into());
        }
        for k in 1..phi.pieces.len() {
            let s = phi.pieces[k].start;
            let prev = &phi.pieces[k - 1];
            let left = prev.segment.value(prev.start, s);
            let right = phi.pieces[k].segment.value(s, s);
            if (left - right).abs() > CONTINUITY_TOL * (1.0 + left.abs()) {
                return bad(format!("discontinuity at t = {s}: {left} (left) vs {right} (right)"));
            }
            let dl = prev.segment.deriv(prev.start, s);
            let dr = phi.pieces[k].segment.deriv(s, s);
            if dr < dl - CONTINUITY_TOL * (1.0 + dl.abs()) {
                return bad(format!("not convex at t = {s}: slope drops from {dl} to {dr}"));
            }
        }
        let one = phi.value(1.0);
        if (one - 1.0).abs() > CONTINUITY_TOL {
            return bad(format!("phi(1) = {one}, expected 1"));
        }
        Ok(phi)
    }

    /// `φ(t) = t^p`.
    pub fn power(p: f64) -> Result<Self> {
        Self::new(vec![Piece::new(0.0, Segment::Power { coef: 1.0, exp: p })])
    }

    /// `φ(t) = t²` on `[0, a]`, then the chord to `(1, 1)` extended affinely.
    pub fn quadratic_patch(a: f64) -> Result<Self> {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::InvalidOrlicz(format!("patch end a = {a} must be in (0,1)")));
        }
        Self::new(vec![
            Piece::new(0.0, Segment::Power { coef: 1.0, exp: 2.0 }),
            Piece::new(
                a,
                Segment::Affine {
                    slope: 1.0 + a,
                    intercept: -a,
                },
            ),
        ])
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Breakpoints strictly inside `(0, ∞)`.
    pub fn breakpoints(&self) -> impl Iterator<Item = f64> + '_ {
        self.pieces.iter().skip(1).map(|p| p.start)
    }

    fn piece_index(&self, t: f64) -> usize {
        self.pieces.partition_point(|p| p.start <= t).saturating_sub(1)
    }

    fn piece_end(&self, k: usize) -> f64 {
        self.pieces.get(k + 1).map(|p| p.start).unwrap_or(f64::INFINITY)
    }

    pub fn value(&self, t: f64) -> f64 {
        let k = self.piece_index(t);
        let p = &self.pieces[k];
        p.segment.value(p.start, t)
    }

    /// Left derivative; `0` at `t = 0`.
    pub fn deriv_left(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let k = self.pieces.partition_point(|p| p.start < t).saturating_sub(1);
        let p = &self.pieces[k];
        p.segment.deriv(p.start, t)
    }

    pub fn deriv_right(&self, t: f64) -> f64 {
        let k = self.piece_index(t.max(0.0));
        let p = &self.pieces[k];
        p.segment.deriv(p.start, t.max(0.0))
    }

    /// `lim_{t→∞} φ′(t)`, possibly infinite.
    pub fn asymptotic_slope(&self) -> f64 {
        let last = &self.pieces[self.pieces.len() - 1];
        match last.segment {
            Segment::Power { coef, exp } => {
                if coef == 0.0 {
                    0.0
                } else if exp == 1.0 {
                    coef
                } else {
                    f64::INFINITY
                }
            }
            Segment::Affine { slope, .. } => slope,
            Segment::Shifted { slope, coef, exp, .. } => {
                if coef == 0.0 {
                    slope
                } else if exp == 1.0 {
                    slope + coef
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    /// `φ(t) > 0` for every `t > 0`.
    pub fn is_positive(&self) -> bool {
        !self.pieces[0].segment.is_identically_zero()
    }

    /// The set `{t ≥ 0 : φ′₋(t) ≤ u ≤ φ′₊(t)}` of maximizers of `tu − φ(t)`
    /// as `(lo, hi)`; `None` when `u` exceeds the asymptotic slope. `hi` may be
    /// infinite.
    pub(crate) fn slope_preimage(&self, u: f64) -> Option<(f64, f64)> {
        let u = u.max(0.0);
        if u > self.asymptotic_slope() {
            return None;
        }
        let n = self.pieces.len();
        let mut lo = None;
        for k in 0..n {
            let p = &self.pieces[k];
            let end = self.piece_end(k);
            let d_start = p.segment.deriv(p.start, p.start);
            if u <= d_start {
                lo = Some(p.start);
                break;
            }
            let d_end = if end.is_finite() {
                p.segment.deriv(p.start, end)
            } else if k == n - 1 {
                self.asymptotic_slope()
            } else {
                f64::INFINITY
            };
            if u <= d_end {
                lo = Some(if p.segment.has_constant_slope() {
                    end
                } else {
                    p.segment.inverse_deriv(p.start, u).clamp(p.start, end)
                });
                break;
            }
        }
        let lo = lo?;
        let mut hi = f64::INFINITY;
        for k in 0..n {
            let p = &self.pieces[k];
            let end = self.piece_end(k);
            if end < lo {
                continue;
            }
            let d_end = if end.is_finite() {
                p.segment.deriv(p.start, end)
            } else {
                self.asymptotic_slope()
            };
            if d_end <= u && end.is_finite() {
                // The whole piece has slope at most u, and the next one might too.
                if self.pieces[k + 1].segment.deriv(end, end) > u {
                    hi = end;
                    break;
                }
                continue;
            }
            if d_end <= u {
                hi = f64::INFINITY;
                break;
            }
            let d_start = p.segment.deriv(p.start, p.start);
            hi = if d_start > u || p.segment.has_constant_slope() {
                p.start.max(lo)
            } else {
                p.segment.inverse_deriv(p.start, u).clamp(p.start, end).max(lo)
            };
            break;
        }
        Some((lo, hi))
    }
}

/// A convex function on `[0, ∞)` vanishing at 0, possibly `+∞` past
/// [`YoungFunction::domain_end`]. Both an [`OrliczFunction`] and its Young
/// conjugate implement this, so the Luxemburg and Amemiya solvers run on
/// either.
pub trait YoungFunction {
    fn value(&self, t: f64) -> f64;
    fn deriv_left(&self, t: f64) -> f64;
    fn deriv_right(&self, t: f64) -> f64;
    /// Supremum of the points where the function is finite.
    fn domain_end(&self) -> f64;
    /// `lim_{t→∞} f′(t)`; only meaningful when the domain is unbounded.
    fn asymptotic_slope(&self) -> f64;
}

impl YoungFunction for OrliczFunction {
    fn value(&self, t: f64) -> f64 {
        OrliczFunction::value(self, t)
    }
    fn deriv_left(&self, t: f64) -> f64 {
        OrliczFunction::deriv_left(self, t)
    }
    fn deriv_right(&self, t: f64) -> f64 {
        OrliczFunction::deriv_right(self, t)
    }
    fn domain_end(&self) -> f64 {
        f64::INFINITY
    }
    fn asymptotic_slope(&self) -> f64 {
        OrliczFunction::asymptotic_slope(self)
    }
}
