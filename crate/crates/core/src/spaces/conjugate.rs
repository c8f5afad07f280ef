//! Young conjugate `φ*(u) = sup_t (tu − φ(t))` of a piecewise-power Orlicz function.

use serde::Serialize;

use super::orlicz::{OrliczFunction, YoungFunction};

/// The Young conjugate of an [`OrliczFunction`].
///
/// Evaluation is closed-form: the supremum is attained on the slope preimage
/// `{t : φ′₋(t) ≤ u ≤ φ′₊(t)}`, which each segment inverts exactly. On the
/// slope gap `[φ′₋(t_k), φ′₊(t_k)]` of a breakpoint `t_k` the conjugate is
/// affine with slope `t_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct YoungConjugate {
    phi: OrliczFunction,
}

/// One interval of the conjugate in `u`-space.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConjugatePiece {
    pub u_start: f64,
    pub u_end: f64,
    /// `Some(t_k)` when the conjugate is affine with slope `t_k` here.
    pub affine_slope: Option<f64>,
}

pub fn young_conjugate(phi: &OrliczFunction) -> YoungConjugate {
    YoungConjugate { phi: phi.clone() }
}

impl YoungConjugate {
    pub fn primal(&self) -> &OrliczFunction {
        &self.phi
    }

    /// `φ*(u)`; `+∞` past the asymptotic slope of `φ`.
    pub fn eval(&self, u: f64) -> f64 {
        let u = u.abs();
        match self.phi.slope_preimage(u) {
            None => f64::INFINITY,
            Some((t, _)) => (t * u - self.phi.value(t)).max(0.0),
        }
    }

    /// `u`-space decomposition: slope gaps at breakpoints of `φ` give affine
    /// pieces, everything else is the closed-form transform of a segment.
    pub fn pieces(&self) -> Vec<ConjugatePiece> {
        let mut out = Vec::new();
        let mut u = 0.0;
        let zero_gap = self.phi.deriv_right(0.0);
        if zero_gap > 0.0 {
            out.push(ConjugatePiece {
                u_start: 0.0,
                u_end: zero_gap,
                affine_slope: Some(0.0),
            });
            u = zero_gap;
        }
        for t in self.phi.breakpoints() {
            let (dl, dr) = (self.phi.deriv_left(t), self.phi.deriv_right(t));
            if dl > u {
                out.push(ConjugatePiece {
                    u_start: u,
                    u_end: dl,
                    affine_slope: None,
                });
            }
            if dr > dl {
                out.push(ConjugatePiece {
                    u_start: dl,
                    u_end: dr,
                    affine_slope: Some(t),
                });
            }
            u = dr;
        }
        let end = self.phi.asymptotic_slope();
        if end > u {
            out.push(ConjugatePiece {
                u_start: u,
                u_end: end,
                affine_slope: None,
            });
        }
        out
    }
}

impl YoungFunction for YoungConjugate {
    fn value(&self, u: f64) -> f64 {
        self.eval(u)
    }

    fn deriv_left(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        self.phi.slope_preimage(u).map(|(lo, _)| lo).unwrap_or(f64::INFINITY)
    }

    fn deriv_right(&self, u: f64) -> f64 {
        self.phi
            .slope_preimage(u.max(0.0))
            .map(|(_, hi)| hi)
            .unwrap_or(f64::INFINITY)
    }

    fn domain_end(&self) -> f64 {
        self.phi.asymptotic_slope()
    }

    fn asymptotic_slope(&self) -> f64 {
        f64::INFINITY
    }
}
