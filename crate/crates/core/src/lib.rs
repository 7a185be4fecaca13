//! Minimum-weight partitioning of a set with associated subsets.
//!
//! Every element `i` of a weighted set `N` drags along a subset `M(i)` of a
//! second weighted set `M`. The task is to split `N` into `m` non-empty
//! blocks so that the most expensive block is as cheap as possible, where a
//! block costs the weight of its own elements plus the weight of the union of
//! their associated subsets (shared elements are paid once per block).
//!
//! The crate provides:
//!
//! * [`model`]: instances, partitions, the objective and variant checks;
//! * [`approx`]: the threshold-based approximation algorithm with its
//!   additive deviation bound and the standard initial-partition strategies;
//! * [`exact`]: a branch-and-bound optimum, the decision procedure and
//!   brute-force CLIQUE / 3-PARTITION oracles;
//! * [`reductions`]: CLIQUE and 3-PARTITION instance constructions;
//! * [`sched`]: the identical-parallel-machine view of N1 instances and an
//!   LPT baseline;
//! * [`format`], [`generate`], [`report`]: text formats, seeded instance
//!   generation and run reports.

pub mod approx;
pub mod error;
pub mod exact;
pub mod format;
pub mod generate;
pub mod model;
pub mod reductions;
pub mod report;
pub mod sched;
pub mod weight;

pub use approx::{
    approximate_partition, compute_d, deviation_bound, lower_bound, Approximation, BoundReport,
    InitialPartition, Strategy,
};
pub use error::{Error, Result};
pub use exact::{decide, exact_solve, Decision, ExactResult};
pub use model::{evaluate_objective, is_m1_instance, is_n1_instance, Instance, Partition};
pub use weight::Weight;
