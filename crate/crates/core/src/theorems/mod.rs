//! Executable forms of the characterization results: structural properties,
//! hyperplane verdicts and witnesses for Lorentz spaces, subspace verdicts
//! for Orlicz spaces, averaging projections and a p-convexity sampler.

mod blocks;
mod convexity;
mod lorentz_hyperplane;
mod orlicz_subspace;
mod properties;

use serde::Serialize;

pub use blocks::{build_averaging_projection, disjoint_span_conditions, BlockSpec, DisjointSpanSpec, SpanCondition};
pub use convexity::{p_convexity_sample_check, PConvexity};
pub use lorentz_hyperplane::{
    lorentz_hyperplane_verdict, normalize_functional, refute_lorentz_hyperplane, witness_params, witness_x,
    HyperplaneVerdict, HyperplaneWitness, NormalizedFunctional, Variant, WitnessParams, DEFAULT_A_POINTS,
};
pub use orlicz_subspace::{classify_orlicz_phi, orlicz_subspace_verdict, PhiClass, SubspaceVerdict};
pub use properties::{has_property_p, has_property_q, property_p_sampled, property_q_slopes};

/// Machine-readable reasons attached to negative verdicts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ReasonCode {
    /// The Lorentz exponent is not 2.
    #[serde(rename = "P_NOT_2")]
    PNot2,
    /// The Lorentz weight is not constant on the needed range.
    #[serde(rename = "WEIGHT_NOT_1")]
    WeightNot1,
    /// A disjoint vector has nonzero entries of unequal modulus.
    UnequalModuli,
    /// A kernel functional has more than two nonzero entries.
    #[serde(rename = "SUPPORT_GT_2")]
    SupportGt2,
    /// Two nonzero entries violate the scale relation of φ.
    ScaleViolation,
}
