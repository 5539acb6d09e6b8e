//! Exhaustive exact solver over all integer positions. Ground truth for
//! approximation-ratio checks and the hardness-reduction verifier; refuses
//! instances whose enumeration space exceeds a configurable budget.

use crate::combinatorics::{binomial, SubsetCursor};
use crate::error::Error;
use crate::evaluator::{within_horizon, EvaluationResult};
use crate::network::{Instance, SinkSet};
use crate::search::best_k_subset;

/// Default ceiling on the number of sink-set evaluations.
pub const DEFAULT_SUBSET_BUDGET: u64 = 5_000_000;

/// Result of an exact solve over every integer position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub sinks: SinkSet,
    pub time: EvaluationResult,
    pub position_count: u64,
    pub subsets_evaluated: u128,
}

fn enumeration_size(positions: usize, k: u64) -> Option<u128> {
    if k as u128 >= positions as u128 {
        Some(1) // degenerate full set, matching the approximate solver
    } else {
        binomial(positions as u64, k)
    }
}

fn check_budget(positions: usize, k: u64, budget: u64) -> Result<(), Error> {
    match enumeration_size(positions, k) {
        Some(subsets) if subsets <= budget as u128 => Ok(()),
        _ => Err(Error::BudgetExceeded {
            positions: positions as u64,
            k,
            budget,
        }),
    }
}

/// [`solve_exact_with`] under the default budget, single-threaded.
pub fn solve_exact(instance: &Instance) -> Result<ExactResult, Error> {
    solve_exact_with(instance, DEFAULT_SUBSET_BUDGET, 1)
}

/// Evaluates every k-subset of the integer positions and returns a
/// minimizer, with the same tie-breaking and degenerate-k rules as the
/// approximate solver. Refuses when `C(positions, k)` exceeds `budget`.
pub fn solve_exact_with(
    instance: &Instance,
    budget: u64,
    threads: usize,
) -> Result<ExactResult, Error> {
    instance.ensure_valid()?;
    let positions = instance.network.all_integer_positions();
    check_budget(positions.len(), instance.k, budget)?;
    let outcome = best_k_subset(
        &instance.network,
        &positions,
        instance.k as usize,
        threads,
    )?;
    Ok(ExactResult {
        sinks: outcome.sinks,
        time: outcome.time,
        position_count: positions.len() as u64,
        subsets_evaluated: outcome.subsets_considered,
    })
}

/// [`solve_exact_threshold_with`] under the default budget.
pub fn solve_exact_threshold(instance: &Instance, horizon: u64) -> Result<bool, Error> {
    solve_exact_threshold_with(instance, horizon, DEFAULT_SUBSET_BUDGET)
}

/// Decision form: whether some k-subset of the integer positions
/// evacuates within `horizon`. Stops at the first success.
pub fn solve_exact_threshold_with(
    instance: &Instance,
    horizon: u64,
    budget: u64,
) -> Result<bool, Error> {
    instance.ensure_valid()?;
    let positions = instance.network.all_integer_positions();
    check_budget(positions.len(), instance.k, budget)?;
    if positions.is_empty() {
        return Err(Error::NoPositions);
    }
    let k = instance.k as usize;
    if k >= positions.len() {
        let sinks = SinkSet::from_canonical(positions);
        return within_horizon(&instance.network, &sinks, horizon);
    }
    let mut cursor = SubsetCursor::first(positions.len(), k);
    loop {
        let sinks =
            SinkSet::from_canonical(cursor.indices().iter().map(|&i| positions[i]).collect());
        if within_horizon(&instance.network, &sinks, horizon)? {
            return Ok(true);
        }
        if !cursor.advance() {
            return Ok(false);
        }
    }
}
