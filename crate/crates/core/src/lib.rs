//! Minimum-latency cyclic patrol schedules for `k` unit-speed robots over a
//! finite metric space.
//!
//! The crate is `no_std` (with `alloc`); the default `std` feature only adds
//! parallel candidate evaluation in [`solver::solve`].
//!
//! - [`metric`]: validated metric spaces and unit-edge subdivision
//! - [`tsp`]: exact, MST-doubling, and 2-opt tours
//! - [`spanning`]: MSTs, heavy-edge removal, partition coarsening
//! - [`solver`]: the `(1 + ε)·γ` cyclic approximation and a brute-force oracle
//! - [`graphdecomp`]: Eulerization, line graphs, 2-path/claw decompositions
//! - [`decider`]: exact latency decision for integer metrics
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod dsu;
pub mod decider;
pub mod error;
pub mod graphdecomp;
pub mod metric;
pub mod solver;
pub mod spanning;
pub mod tsp;

pub use decider::{decide, minimal_latency, Configuration, Decision, PeriodicWitness};
pub use error::{Error, MetricViolation, Result};
pub use graphdecomp::{Decomposition, MultiGraph};
pub use metric::{MetricSpace, UnitGraph};
pub use solver::{brute_force_cyclic, evaluate, solve, CyclicSolution, SolverConfig};
pub use spanning::{Edge, Partition, SpanningForest};
pub use tsp::{Tour, TspAlgorithm, TspKind};
