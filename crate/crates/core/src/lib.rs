#![no_std]
#![forbid(unsafe_code)]
// `!(x > 0.0)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Possibility-theory numerics on the real line.
//!
//! Compact fuzzy intervals are stored as α-cut profiles: a finite ascending
//! grid of levels in `(0, 1]` with the left and right cut endpoints at each
//! level. On top of that representation the crate provides
//!
//! - Archimedean t-norm / t-conorm / negation algebra driven by additive and
//!   multiplicative generators ([`tnorm`]),
//! - cut arithmetic, metrics, modal values and possibility of crisp sets
//!   ([`profile`], [`interval`]),
//! - extension-principle aggregation with closed forms for repeated medians
//!   and means, concave envelopes and law-of-large-numbers sequences
//!   ([`aggregation`]),
//! - order-statistics estimation of a membership function from a sample
//!   ([`estimation`]),
//! - seeded simulation of fuzzy-number variables and estimation experiments
//!   ([`simulation`]).
//!
//! Everything here is pure computation over immutable values; IO and the
//! command-line front end live in the `fuzzyvar` crate.

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod aggregation;
pub mod error;
pub mod estimation;
pub mod interval;
pub mod profile;
pub mod report;
pub mod simulation;
pub mod tnorm;

pub use aggregation::{
    Aggregate, BinaryOp, EnvelopePolicy, Exactness, LlnSpec, Monotonicity, Statistic,
};
pub use error::{Error, Result};
pub use estimation::{EstimationResult, EstimatorConfig, IndexPair, IndexRule, Sample};
pub use interval::Interval;
pub use profile::{AlphaGrid, AlphaProfile, FuzzyNumber, SubnormalProfile};
pub use report::{ConvergenceReport, ConvergenceRow};
pub use simulation::{ExperimentConfig, ExperimentOutcome, RealizationSpec};
pub use tnorm::{GeneratorSpec, NormalTriple, TNormKind};
