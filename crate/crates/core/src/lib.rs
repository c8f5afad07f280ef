//! Norms, norming functionals, numerical positivity and minimal-norm
//! projections in finite-dimensional Lorentz and Orlicz sequence spaces.

// `!(x > 0.0)` is used on purpose so that NaN fails validation
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod acceptance;
pub mod duality;
pub mod error;
pub mod operators;
pub mod positivity;
pub mod rng;
pub mod search;
pub mod spaces;
pub mod theorems;

pub use error::{Error, Result};
pub use search::SearchBudget;
pub use spaces::{LorentzSpec, OrliczFlavor, OrliczFunction, OrliczSpec, SpaceSpec, Vector, Weight};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/spaces.md")]
    mod spaces {}
    #[doc = include_str!("../../../book/src/duality.md")]
    mod duality {}
    #[doc = include_str!("../../../book/src/operators.md")]
    mod operators {}
    #[doc = include_str!("../../../book/src/positivity.md")]
    mod positivity {}
    #[doc = include_str!("../../../book/src/theorems.md")]
    mod theorems {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
