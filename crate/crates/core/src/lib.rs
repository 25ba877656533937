// SPDX-License-Identifier: MIT OR Apache-2.0

//! Exact residence history inference.
//!
//! Given a per-unit location trace and a minimum residence length `rho`,
//! find the piecewise-constant residence history that minimizes the number
//! of units spent away from the residence. The crate provides:
//!
//! * [`exact`]: a day-level dynamic program, the run-level program over the
//!   time-warped history, and a candidate-boundary program that is as fast
//!   as the run-level one while matching the day-level optimum.
//! * [`oracle`]: exhaustive enumeration, for testing.
//! * [`modal`]: the fixed-interval modal-location heuristic.
//! * [`synth`]: a seeded ground-truth generator and evaluation metrics.

#![forbid(unsafe_code)]

pub mod error;
pub mod exact;
pub mod modal;
pub mod model;
pub mod oracle;
pub mod synth;

pub use error::{Error, Result};
pub use exact::{solve, Params, Solution};
pub use model::{
    Algorithm, Alphabet, CostModel, LocationHistory, LocationId, Mode, Observation,
    QInterpretation, ResidenceHistory, ResidenceSegment, SolverConfig,
};
