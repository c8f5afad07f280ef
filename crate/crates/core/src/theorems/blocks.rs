//! Averaging projections onto block bases with constant coefficients, and
//! the necessary conditions for a span of disjoint vectors in a Lorentz space.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::ProjectionSpec;
use crate::spaces::{LorentzSpec, SpaceSpec};

/// Disjoint index blocks (0-based) with a sign per index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockSpec {
    pub blocks: Vec<Vec<usize>>,
    pub signs: Vec<Vec<f64>>,
}

impl BlockSpec {
    /// Blocks with all signs `+1`.
    pub fn unsigned(blocks: Vec<Vec<usize>>) -> Self {
        let signs = blocks.iter().map(|b| vec![1.0; b.len()]).collect();
        BlockSpec { blocks, signs }
    }

    fn validate(&self, dim: usize) -> Result<()> {
        if self.blocks.len() != self.signs.len() {
            return Err(Error::Precondition("one sign list per block".into()));
        }
        let mut seen = vec![false; dim];
        for (b, e) in self.blocks.iter().zip(&self.signs) {
            if b.is_empty() || b.len() != e.len() {
                return Err(Error::Precondition(
                    "blocks must be nonempty with one sign per index".into(),
                ));
            }
            if e.iter().any(|&v| v != 1.0 && v != -1.0) {
                return Err(Error::Precondition("signs must be ±1".into()));
            }
            for &i in b {
                if i >= dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: i + 1,
                    });
                }
                if seen[i] {
                    return Err(Error::OverlappingBlocks(i));
                }
                seen[i] = true;
            }
        }
        Ok(())
    }
}

/// The projection `P = Σ_B f_B⊗u_B` with `f_B = Σ_{i∈B} ε_i e_i*` and
/// `u_B = |B|⁻¹ Σ_{i∈B} ε_i e_i`, in complement form.
///
/// The kernel of `P` is cut out by the within-block differences
/// `e_{i_j}* − ε_{i_j}ε_{i_1} e_{i_1}*` and by `e_k*` for every coordinate
/// outside all blocks. Fails when `P` is the identity, which has no
/// complement form.
///
/// ```
/// use seqspace::operators::build_projection;
/// use seqspace::theorems::{build_averaging_projection, BlockSpec};
/// use seqspace::{LorentzSpec, SpaceSpec};
/// let s = SpaceSpec::Lorentz(LorentzSpec::lp(2, 2.0).unwrap());
/// let ps = build_averaging_projection(&s, &BlockSpec::unsigned(vec![vec![0, 1]])).unwrap();
/// let p = build_projection(&ps, 2).unwrap();
/// assert_eq!(p.apply(&[1.0, 3.0]), vec![2.0, 2.0]);
/// ```
pub fn build_averaging_projection(s: &SpaceSpec, b: &BlockSpec) -> Result<ProjectionSpec> {
    let d = s.dim();
    b.validate(d)?;
    let mut covered = vec![false; d];
    let mut fs = Vec::new();
    let mut pivots = Vec::new();
    for (block, signs) in b.blocks.iter().zip(&b.signs) {
        let (i1, e1) = (block[0], signs[0]);
        covered[i1] = true;
        for (&i, &e) in block.iter().zip(signs).skip(1) {
            covered[i] = true;
            let mut f = vec![0.0; d];
            f[i] = 1.0;
            f[i1] = -e * e1;
            fs.push(f);
            pivots.push(i);
        }
    }
    for (k, _) in covered.iter().enumerate().filter(|(_, c)| !**c) {
        let mut f = vec![0.0; d];
        f[k] = 1.0;
        fs.push(f);
        pivots.push(k);
    }
    if fs.is_empty() {
        return Err(Error::Precondition("the averaging projection is the identity".into()));
    }
    // u_k = (Id − A) e_{pivot_k} with A the block averaging
    let mut us = Vec::new();
    for &pivot in &pivots {
        let mut u = vec![0.0; d];
        u[pivot] = 1.0;
        if let Some(bi) = b.blocks.iter().position(|bl| bl.contains(&pivot)) {
            let (block, signs) = (&b.blocks[bi], &b.signs[bi]);
            let ep = signs[block.iter().position(|&i| i == pivot).unwrap()];
            let m = block.len() as f64;
            for (&i, &e) in block.iter().zip(signs) {
                u[i] -= e * ep / m;
            }
        }
        us.push(u);
    }
    ProjectionSpec::new(fs, us)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DisjointSpanSpec {
    pub xs: Vec<Vec<f64>>,
}

impl DisjointSpanSpec {
    /// `Σ = Σ_i card(supp x_i)`.
    pub fn sigma(&self) -> usize {
        self.xs.iter().map(|x| x.iter().filter(|v| **v != 0.0).count()).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpanCondition {
    /// `w_ν = 1` for all `ν ≤ Σ`.
    CondA,
    /// Each `x_i` has all nonzero entries of equal modulus.
    CondB,
    Neither,
}

/// Which of the two necessary conditions for `span{x_i}` to be
/// 1-complemented holds (`CondA` when both do).
pub fn disjoint_span_conditions(s: &LorentzSpec, d: &DisjointSpanSpec) -> Result<SpanCondition> {
    let dim = s.dim();
    if d.xs.len() < 2 {
        return Err(Error::Precondition("need at least two vectors".into()));
    }
    let mut used = vec![false; dim];
    for x in &d.xs {
        SpaceSpec::Lorentz(s.clone()).check_dim(x)?;
        if x.iter().all(|v| *v == 0.0) {
            return Err(Error::ZeroVector);
        }
        for (i, _) in x.iter().enumerate().filter(|(_, v)| **v != 0.0) {
            if used[i] {
                return Err(Error::Precondition(format!("supports overlap at index {i}")));
            }
            used[i] = true;
        }
    }
    let sigma = d.sigma();
    let w = &s.w.as_slice()[..sigma];
    if w.contains(&0.0) {
        return Err(Error::Precondition("needs w_ν ≠ 0 for ν ≤ Σ".into()));
    }
    if w.iter().all(|&v| v == 1.0) {
        return Ok(SpanCondition::CondA);
    }
    let equal_moduli = d.xs.iter().all(|x| {
        let mut nz = x.iter().filter(|v| **v != 0.0).map(|v| v.abs());
        let first = nz.next().unwrap_or(0.0);
        nz.all(|v| v == first)
    });
    Ok(if equal_moduli {
        SpanCondition::CondB
    } else {
        SpanCondition::Neither
    })
}
