//! Exact-arithmetic toolkit for the extremal spread of independent coherent
//! distributions.
//!
//! A coherent pair `(X, Y)` is a pair of conditional probabilities of one
//! event given two sub-sigma-fields. This crate computes, searches and
//! verifies the extremal quantities `E|X-Y|^k` and `P(|X-Y| > delta)` for
//! independent coherent pairs realised as (generalised) Ferrer diagrams,
//! together with their reduction to bipartite degree sequences, conjugate
//! partitions and all the closed-form bounds of the theory.
//!
//! Modules:
//! - [`partitions`]: box partitions, conjugation, majorization, Gale-Ryser
//! - [`diagrams`]: step functions, associated laws, exact moments and tails
//! - [`matrices`]: discrete coherent pairs, the slicing-invariant objective
//! - [`graphs`]: bipartite degree objectives, Zagreb index, extremal graphs
//! - [`bounds`]: closed-form bounds and the layer-cake integrator
//! - [`search`]: exhaustive and heuristic maximisation, counterexample hunts
//!
//! Everything except the floating-point sphere check in [`bounds`] runs in
//! exact rational arithmetic.

pub mod bounds;
pub mod diagrams;
pub mod graphs;
pub mod matrices;
pub mod partitions;
pub mod rational;
pub mod search;
pub mod verify;

pub use rational::Rat;

/// Errors shared by all modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid rational literal: {0}")]
    InvalidRational(String),
    #[error("sequence length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("box size mismatch: {0} vs {1}")]
    BoxMismatch(usize, usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("majorization precondition failed at prefix {prefix}")]
    MajorizationFailed { prefix: usize },
    #[error("invalid step function: {0}")]
    InvalidStepFn(String),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("invalid matrix pair: {0}")]
    InvalidPair(String),
    #[error("cannot remove nonzero row/column {0}")]
    SliceNonzero(usize),
    #[error("size {n} exceeds the {limit} guard; use local search instead")]
    GuardExceeded { n: usize, limit: usize },
    #[error("point {0} is not on the sphere (offset {1:e})")]
    OffSphere(usize, f64),
}

pub type Result<T> = std::result::Result<T, Error>;
