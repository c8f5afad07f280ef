//! Behaviour of φ near 0 and the resulting constraints on 1-complemented
//! subspaces of Orlicz spaces.

use serde::Serialize;

use super::ReasonCode;
use crate::error::{Error, Result};
use crate::operators::standardize_kernel;
use crate::spaces::{OrliczFunction, OrliczSpec, Segment};

const ZERO_TOL: f64 = 1e-12;
const SCALE_TOL: f64 = 1e-9;
const MAX_DENOMINATOR: i64 = 64;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum PhiClass {
    /// `φ(t) = c·t^p` near 0.
    SimilarTo {
        p: f64,
        c: f64,
    },
    /// `c₁t^p ≤ φ(t) ≤ c₂t^p` near 0 but not similar to any power.
    EquivalentTo {
        p: f64,
    },
    NotEquivalentToAnyPower,
}

/// Reads the class off the first piece, which is the only one active near 0.
///
/// ```
/// use seqspace::theorems::{classify_orlicz_phi, PhiClass};
/// use seqspace::OrliczFunction;
/// let phi = OrliczFunction::power(3.0).unwrap();
/// assert_eq!(classify_orlicz_phi(&phi), PhiClass::SimilarTo { p: 3.0, c: 1.0 });
/// ```
pub fn classify_orlicz_phi(phi: &OrliczFunction) -> PhiClass {
    match phi.pieces()[0].segment {
        Segment::Power { coef, exp } if coef > 0.0 => PhiClass::SimilarTo { p: exp, c: coef },
        Segment::Affine { slope, .. } if slope > 0.0 => PhiClass::SimilarTo { p: 1.0, c: slope },
        Segment::Shifted { base: 0.0, slope, coef, exp } => {
            if slope > 0.0 && coef > 0.0 && exp > 1.0 {
                // slope·t ≤ φ(t) ≤ (slope + coef)·t on [0, 1]
                PhiClass::EquivalentTo { p: 1.0 }
            } else if slope > 0.0 && coef > 0.0 {
                PhiClass::SimilarTo {
                    p: 1.0,
                    c: slope + coef,
                }
            } else if slope > 0.0 {
                PhiClass::SimilarTo { p: 1.0, c: slope }
            } else if coef > 0.0 {
                PhiClass::SimilarTo { p: exp, c: coef }
            } else {
                PhiClass::NotEquivalentToAnyPower
            }
        }
        _ => PhiClass::NotEquivalentToAnyPower,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum SubspaceVerdict {
    /// `gamma` is the generator of the common scale `{γ^m}` of the
    /// standardized coefficients when one is required.
    Compatible {
        gamma: Option<f64>,
    },
    Incompatible {
        reason: ReasonCode,
        detail: String,
    },
    NotApplicable {
        reason: String,
    },
}

/// Best rational approximation `n/d` of `x` with `d ≤ max_den`, if it is
/// within `tol`.
fn rational(x: f64, max_den: i64, tol: f64) -> Option<(i64, i64)> {
    let (mut h0, mut h1, mut k0, mut k1) = (0i64, 1i64, 1i64, 0i64);
    let mut r = x;
    loop {
        let a = r.floor();
        if a.abs() > 1e12 {
            return None;
        }
        let a = a as i64;
        let (h2, k2) = (a * h1 + h0, a * k1 + k0);
        if k2 > max_den {
            return None;
        }
        if (x - h2 as f64 / k2 as f64).abs() <= tol {
            return Some((h2, k2));
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a as f64;
        if frac == 0.0 {
            return None;
        }
        r = 1.0 / frac;
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `ln γ > 0` generating every value in `logs` as an integer multiple, or
/// `None` when no generator with small rational ratios exists. Empty input
/// (all moduli 1) gives `Some(0)`.
fn common_log_scale(logs: &[f64]) -> Option<f64> {
    let Some(g0) = logs.iter().map(|v| v.abs()).min_by(f64::total_cmp) else {
        return Some(0.0);
    };
    let fracs: Option<Vec<(i64, i64)>> = logs
        .iter()
        .map(|&l| rational(l / g0, MAX_DENOMINATOR, SCALE_TOL))
        .collect();
    let fracs = fracs?;
    let lcm = fracs.iter().fold(1i64, |acc, &(_, d)| acc / gcd(acc, d) * d);
    let g = fracs.iter().fold(0i64, |acc, &(n, d)| gcd(acc, n * (lcm / d)));
    let step = g0 * g as f64 / lcm as f64;
    logs.iter()
        .all(|&l| {
            let m = l / step;
            (m - m.round()).abs() <= SCALE_TOL * m.abs().max(1.0)
        })
        .then_some(step)
}

/// Whether `F = ∩ ker f_j` can be 1-complemented in `ℓ_φ` according to the
/// structure theorem for Orlicz spaces: after row reduction every `f_j` has
/// at most two nonzero entries, whose moduli are all 1 (φ not equivalent to
/// a power) or lie in a common scale `{γ^m}` (φ equivalent to a power).
///
/// `contains_basis_vector` asserts that some `e_k` lies in `F`.
pub fn orlicz_subspace_verdict(
    s: &OrliczSpec,
    fs: &[Vec<f64>],
    contains_basis_vector: bool,
) -> Result<SubspaceVerdict> {
    let st = standardize_kernel(fs)?;
    let d = s.dim;
    if st.fs[0].len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: st.fs[0].len(),
        });
    }
    if d - fs.len() < 2 {
        return Err(Error::Precondition("needs dim F > 1".into()));
    }
    let class = classify_orlicz_phi(&s.phi);
    let na = |reason: &str| Ok(SubspaceVerdict::NotApplicable { reason: reason.into() });
    if let PhiClass::SimilarTo { p, .. } = class {
        if p == 2.0 {
            return na("φ is similar to t² near 0");
        }
    }
    if !s.phi.is_positive() {
        return na("φ vanishes near 0");
    }
    if !contains_basis_vector {
        return na("F is not known to contain a basis vector");
    }
    let zero_column = (0..d).any(|c| st.fs.iter().all(|f| f[c].abs() <= ZERO_TOL));
    if !zero_column {
        return Err(Error::Precondition("no basis vector lies in F".into()));
    }
    for (j, f) in st.fs.iter().enumerate() {
        let support = f.iter().filter(|v| v.abs() > ZERO_TOL).count();
        if support > 2 {
            return Ok(SubspaceVerdict::Incompatible {
                reason: ReasonCode::SupportGt2,
                detail: format!("standardized functional {j} has {support} nonzero entries"),
            });
        }
    }
    let logs: Vec<f64> = st
        .fs
        .iter()
        .flatten()
        .filter(|v| v.abs() > ZERO_TOL)
        .map(|v| v.abs().ln())
        .filter(|l| l.abs() > SCALE_TOL)
        .collect();
    match class {
        PhiClass::SimilarTo { .. } => Ok(SubspaceVerdict::Compatible { gamma: None }),
        PhiClass::EquivalentTo { .. } => match common_log_scale(&logs) {
            Some(step) => Ok(SubspaceVerdict::Compatible {
                gamma: Some(step.exp()),
            }),
            None => Ok(SubspaceVerdict::Incompatible {
                reason: ReasonCode::ScaleViolation,
                detail: "coefficients share no common scale".into(),
            }),
        },
        PhiClass::NotEquivalentToAnyPower => {
            if logs.is_empty() {
                Ok(SubspaceVerdict::Compatible { gamma: Some(1.0) })
            } else {
                Ok(SubspaceVerdict::Incompatible {
                    reason: ReasonCode::ScaleViolation,
                    detail: "coefficients of unequal modulus".into(),
                })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{OrliczFlavor, Piece};

    fn linear_plus_square() -> OrliczFunction {
        OrliczFunction::new(vec![Piece::new(
            0.0,
            Segment::Shifted {
                base: 0.0,
                slope: 0.5,
                coef: 0.5,
                exp: 2.0,
            },
        )])
        .unwrap()
    }

    fn spec(phi: OrliczFunction, dim: usize) -> OrliczSpec {
        OrliczSpec::new(phi, OrliczFlavor::Luxemburg, dim).unwrap()
    }

    #[test]
    fn classes() {
        assert_eq!(
            classify_orlicz_phi(&OrliczFunction::quadratic_patch(0.6).unwrap()),
            PhiClass::SimilarTo { p: 2.0, c: 1.0 }
        );
        assert_eq!(
            classify_orlicz_phi(&linear_plus_square()),
            PhiClass::EquivalentTo { p: 1.0 }
        );
        let flat = OrliczFunction::new(vec![
            Piece::new(
                0.0,
                Segment::Affine {
                    slope: 0.0,
                    intercept: 0.0,
                },
            ),
            Piece::new(
                0.5,
                Segment::Shifted {
                    base: 0.0,
                    slope: 2.0,
                    coef: 0.0,
                    exp: 1.0,
                },
            ),
        ])
        .unwrap();
        assert_eq!(classify_orlicz_phi(&flat), PhiClass::NotEquivalentToAnyPower);
    }

    #[test]
    fn scale_fitting() {
        assert_eq!(rational(0.75, 64, 1e-9), Some((3, 4)));
        assert_eq!(rational(std::f64::consts::PI, 64, 1e-9), None);
        let l2 = 2f64.ln();
        assert!((common_log_scale(&[2.0 * l2, -3.0 * l2]).unwrap() - l2).abs() < 1e-12);
        assert!((common_log_scale(&[4.0 * l2, 6.0 * l2]).unwrap() - 2.0 * l2).abs() < 1e-12);
        assert_eq!(common_log_scale(&[l2, 3f64.ln()]), None);
    }

    #[test]
    fn worked_examples() {
        let s = spec(linear_plus_square(), 4);
        let v = orlicz_subspace_verdict(&s, &[vec![1.0, -1.0, 0.0, 0.0]], true).unwrap();
        assert_eq!(v, SubspaceVerdict::Compatible { gamma: Some(1.0) });
        let v = orlicz_subspace_verdict(&s, &[vec![1.0, 2.0, 0.0, 0.0]], true).unwrap();
        assert_eq!(v, SubspaceVerdict::Compatible { gamma: Some(2.0) });
        let v = orlicz_subspace_verdict(&s, &[vec![1.0, 1.0, 1.0, 0.0]], true).unwrap();
        assert!(matches!(
            v,
            SubspaceVerdict::Incompatible {
                reason: ReasonCode::SupportGt2,
                ..
            }
        ));
        let v = orlicz_subspace_verdict(&s, &[vec![1.0, 3f64.sqrt(), 0.0, 0.0], vec![0.0, 0.0, 1.0, 2.0]], true);
        assert!(matches!(v, Err(Error::Precondition(_))));
    }

    #[test]
    fn not_applicable_cases() {
        let s = spec(OrliczFunction::power(2.0).unwrap(), 4);
        let v = orlicz_subspace_verdict(&s, &[vec![1.0, 1.0, 1.0, 0.0]], true).unwrap();
        assert!(matches!(v, SubspaceVerdict::NotApplicable { .. }));
        let s = spec(linear_plus_square(), 4);
        let v = orlicz_subspace_verdict(&s, &[vec![1.0, 1.0, 1.0, 0.0]], false).unwrap();
        assert!(matches!(v, SubspaceVerdict::NotApplicable { .. }));
        assert_eq!(
            orlicz_subspace_verdict(&s, &[vec![1.0, 1.0, 0.0, 0.0], vec![2.0, 2.0, 0.0, 0.0]], true),
            Err(Error::DependentFunctionals)
        );
    }

    #[test]
    fn invariant_under_permutation_and_signs() {
        let s = spec(linear_plus_square(), 5);
        let a = orlicz_subspace_verdict(
            &s,
            &[vec![1.0, 4.0, 0.0, 0.0, 0.0], vec![0.0, 0.0, 2.0, -1.0, 0.0]],
            true,
        );
        let b = orlicz_subspace_verdict(
            &s,
            &[vec![0.0, 0.0, -4.0, 0.0, 1.0], vec![0.0, 1.0, 0.0, 2.0, 0.0]],
            true,
        );
        assert_eq!(a, b);
        assert_eq!(a.unwrap(), SubspaceVerdict::Compatible { gamma: Some(2.0) });
    }
}
