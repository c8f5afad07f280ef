use crate::spaces::SpaceSpec;

fn pair(dim: usize, i: usize, j: usize, eps: f64) -> Vec<f64> {
    let mut x = vec![0.0; dim];
    x[i] = 1.0;
    x[j] += eps;
    x
}

/// `‖e_i + εe_j‖ > ‖e_i‖` for all `i, j` and `ε > 0`.
///
/// Lorentz: iff `w₂ ≠ 0` (or `dim = 1`). Orlicz: iff `φ(t) > 0` for `t > 0`.
pub fn has_property_p(s: &SpaceSpec) -> bool {
    match s {
        SpaceSpec::Lorentz(l) => l.dim() == 1 || l.w[1] != 0.0,
        SpaceSpec::Orlicz(o) => o.phi.is_positive(),
    }
}

/// `(‖e_i + εe_j‖ − 1)/ε → 0` for `i ≠ j`.
///
/// Lorentz: iff `p > 1` or `w₂ = 0` (then `‖e_i + εe_j‖ = 1` for small
/// `ε`). Orlicz: iff `φ′(0⁺) = 0`.
pub fn has_property_q(s: &SpaceSpec) -> bool {
    match s {
        SpaceSpec::Lorentz(l) => l.dim() == 1 || l.p > 1.0 || l.w[1] == 0.0,
        SpaceSpec::Orlicz(o) => o.phi.deriv_right(0.0) == 0.0,
    }
}

/// Checks the defining inequality of (P) on every pair `(i, j)` for each
/// `ε` in `eps`. Only meaningful for `ε` large enough to be resolved in
/// double precision.
pub fn property_p_sampled(s: &SpaceSpec, eps: &[f64]) -> bool {
    let d = s.dim();
    (0..d).all(|i| {
        let base = s.norm(&pair(d, i, i, 0.0)).unwrap_or(f64::NAN);
        (0..d).all(|j| eps.iter().all(|&e| s.norm(&pair(d, i, j, e)).is_ok_and(|v| v > base)))
    })
}

/// Difference quotients `(‖e_1 + εe_2‖ − ‖e_1‖)/ε` at `ε = 10⁻³, 10⁻⁴, 10⁻⁵`.
/// Empty when `dim < 2`.
pub fn property_q_slopes(s: &SpaceSpec) -> Vec<f64> {
    let d = s.dim();
    if d < 2 {
        return Vec::new();
    }
    let base = s.norm(&pair(d, 0, 0, 0.0)).unwrap_or(f64::NAN);
    [1e-3, 1e-4, 1e-5]
        .iter()
        .map(|&e| (s.norm(&pair(d, 0, 1, e)).unwrap_or(f64::NAN) - base) / e)
        .collect()
}
