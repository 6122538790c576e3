//! Maximum edge-weight k-plex partitioning.
//!
//! A k-plex is a vertex set in which every member is adjacent to all but at
//! most `k - 1` of the other members (a 1-plex is a clique). The problem is
//! to split all vertices of a positively weighted graph into k-plexes so that
//! the total weight of edges kept inside blocks is maximal.
//!
//! This crate holds the search itself and needs only `alloc`:
//!
//! - [`graph`]: immutable weighted graph and the benchmark weighting rule.
//! - [`solution`]: block assignment with incremental degree bookkeeping.
//! - [`objective`]: the `correct_total + w_sol / w_total` objective, full
//!   and per-move evaluation.
//! - [`vns`]: shaking, local search, acceptance and the run driver.
//! - [`oracle`]: exhaustive exact solver and independent verifier.
//!
//! Parsers, reports and the command-line front end live in the `kplex`
//! crate.

#![no_std]

extern crate alloc;

pub mod graph;
pub mod objective;
pub mod oracle;
pub mod solution;
pub mod vns;

pub use graph::{Duplicates, GraphError, WeightedGraph};
pub use objective::{evaluate, ObjectiveError, ObjectiveValue};
pub use oracle::{exact_solve, verify_partition, Certificate, ExactResult, OracleError};
pub use solution::{
    is_feasible, partition_weight, recompute_ledger, DegreeLedger, Feasibility, MoveRecord,
    Solution, State, Target,
};
pub use vns::{
    solve, solve_repeated, Clock, NoClock, RunOutcome, RunReport, SolverConfig, Termination, Vns,
};
