use thiserror::Error;

/// Errors produced by the solver library.
///
/// Structural problems in a network are not errors: [`crate::network::DynamicNetwork::validate`]
/// reports those as data. Errors are reserved for misuse of an operation
/// (bad positions, empty sink sets, blown enumeration budgets).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("instance has k = 0; at least one sink is required")]
    ZeroK,

    #[error("vertex index {0} is out of range")]
    UnknownVertex(usize),

    #[error("edge index {0} is out of range")]
    UnknownEdge(usize),

    #[error("offset {offset} is out of range on edge {edge} with transit {transit}")]
    OffsetOutOfRange {
        edge: usize,
        offset: u64,
        transit: u64,
    },

    #[error("position at offset {offset} on edge {edge} is not interior to the edge")]
    NotInterior { edge: usize, offset: u64 },

    #[error("sink set is empty")]
    EmptySinkSet,

    #[error("duplicate sink position after canonicalization")]
    DuplicateSink,

    #[error("network has no positions to place sinks on")]
    NoPositions,

    #[error(
        "refusing to enumerate k-subsets: {positions} positions with k = {k} \
         exceed the budget of {budget} evaluations"
    )]
    BudgetExceeded { positions: u64, k: u64, budget: u64 },

    #[error("epsilon must be a positive rational")]
    NonPositiveEpsilon,

    #[error("cannot parse {0:?} as a rational number")]
    MalformedRational(String),

    #[error("invalid hitting-set instance: {0}")]
    InvalidHittingSet(String),

    #[error("horizon upper bound {upper} is not feasible; bound derivation is broken")]
    UpperBoundInfeasible { upper: u64 },
}
