//! Sink placement on undirected dynamic networks.
//!
//! A dynamic network carries per-edge capacities and integral transit
//! times plus supplied source vertices; the goal is to place k sinks
//! (at vertices or at integer points along edges) minimizing the time to
//! evacuate all supply. This crate provides:
//!
//! - the network model with validation, position enumeration and edge
//!   subdivision ([`network`]);
//! - evaluation of a fixed sink set by reduction to max-flow on a
//!   time-expanded graph ([`time_expansion`], [`evaluator`]);
//! - an approximate solver enumerating k-subsets of an epsilon-stride
//!   candidate sample, with a (1 + epsilon) quality target ([`fptas`]);
//! - a budgeted brute-force exact solver used as ground truth ([`exact`]);
//! - a generator turning hitting-set instances into hard unit-weight
//!   networks, with an equivalence verifier ([`hardness`]);
//! - file formats and command drivers for the `ksink` binary ([`cli`]).

pub mod candidates;
pub mod cli;
pub mod combinatorics;
pub mod epsilon;
pub mod error;
pub mod evaluator;
pub mod exact;
pub mod fptas;
pub mod hardness;
pub mod network;
mod search;
pub mod time_expansion;

pub use candidates::{sample_positions, CandidateSet};
pub use epsilon::Epsilon;
pub use error::Error;
pub use evaluator::{evacuation_time, horizon_bounds, reduce_to_directed, EvaluationResult};
pub use exact::{solve_exact, solve_exact_threshold, ExactResult, DEFAULT_SUBSET_BUDGET};
pub use fptas::{solve_fptas, solve_fptas_with, ApproxResult};
pub use hardness::{brute_force_hitting_set, from_hitting_set, verify_reduction, HittingSetInstance};
pub use network::{DynamicNetwork, Edge, Instance, Position, SinkSet};
