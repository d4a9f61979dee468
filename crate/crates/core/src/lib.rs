//! Fixed point data of Hamiltonian circle actions on closed symplectic
//! `2n`-manifolds with exactly `n + 1` isolated fixed points.
//!
//! From the weights and moment values at the fixed points this crate
//! computes the first Chern class, the integral cohomology ring, the total
//! Chern class and the localization identities, and it searches for the
//! weight systems a given ring forces.

#![allow(clippy::result_large_err)]

pub mod cohomology;
pub mod data;
pub mod document;
pub mod localization;
pub mod models;
pub mod rat;
pub mod solver;

pub use cohomology::{
    c1_coefficient, chern_coefficients, classify_ring, condition_d_offset, ring_coefficients, ChernData,
    CohomologyError, RingCoefficients, RingKind, RingSpec,
};
pub use data::{validate, validate_with, FixedPoint, FixedPointData, ValidationOptions, ValidationReport, Violation};
pub use document::{DocumentError, InputDocument};
pub use localization::{abbv_sum, vanishing_battery, BatteryReport, EquivariantRestriction};
pub use models::{cpn_model, quadric_model, ModelError};
pub use rat::Rat;
pub use solver::SolverError;
