//! Deducing weight systems from a prescribed cohomology ring and moment
//! values, and checking the resulting equivalences.

mod enumerate;
mod graph;
mod infer;
mod targets;
mod verify;

pub use crate::cohomology::{RingKind, RingSpec};
pub use enumerate::{enumerate_weight_systems, Enumeration, EnumerationOptions, DEFAULT_BUDGET};
pub use graph::{gradient_graph, AmbiguousWeight, GradientEdge, GradientSphereGraph};
pub use infer::{infer_moment_values, InferredMoments};
pub use targets::{lambda_minus_targets, positive_targets};
pub use verify::{verify_equivalence, EquivalenceReport, Implication};

use crate::cohomology::CohomologyError;
use crate::models::ModelError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error("ring has n = {} but {found} moment values were given", expected - 1)]
    SpecMismatch { expected: usize, found: usize },
    #[error("moment values must be strictly increasing; position {0} is not")]
    NonIncreasing(usize),
    #[error("search budget exceeded after {explored} nodes{}", if *cancelled { " (cancelled)" } else { "" })]
    SearchBudgetExceeded { explored: u64, cancelled: bool },
    #[error("weight magnitude does not fit in 64 bits")]
    Overflow,
    #[error("could not start worker threads: {0}")]
    ThreadPool(String),
    #[error("equivalence checks need the CP^n or quadric ring")]
    UnsupportedRing,
    #[error("malformed weight list: {0}")]
    WrongShape(String),
    #[error("input points {first} and {second} have the same weight sum")]
    InconsistentGamma { first: usize, second: usize },
    #[error("input point {input} would sit at index {index} but has {negatives} negative weights")]
    IndexCount { input: usize, index: usize, negatives: usize },
    #[error("no positive scale C fits the weight sums")]
    NoPositiveScale,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}
