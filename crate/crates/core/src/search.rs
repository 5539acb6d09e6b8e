//! Minimization of the evacuation time over k-subsets of a position list.
//!
//! The subset space is split into contiguous lexicographic rank ranges,
//! one per worker. Each worker keeps a running best and hands the
//! evaluator a cutoff, so sink sets whose distance lower bound already
//! exceeds the best seen are skipped after a shortest-path pass alone.
//! Skips only ever drop subsets that are strictly worse than some
//! evaluated one, so the merged minimum (with ties broken by lowest rank)
//! is identical to full sequential enumeration for every worker count.

use crate::combinatorics::{binomial, SubsetCursor};
use crate::error::Error;
use crate::evaluator::{evacuation_time, evacuation_time_with_cutoff, EvaluationResult};
use crate::network::{DynamicNetwork, Position, SinkSet};

pub(crate) struct SearchOutcome {
    pub sinks: SinkSet,
    pub time: EvaluationResult,
    /// Number of k-subsets in the enumeration space (skipped ones included).
    pub subsets_considered: u128,
}

struct ChunkBest {
    rank: u128,
    indices: Vec<usize>,
    time: EvaluationResult,
}

fn scan_chunk(
    net: &DynamicNetwork,
    positions: &[Position],
    k: usize,
    start: u128,
    count: u128,
) -> Result<Option<ChunkBest>, Error> {
    if count == 0 {
        return Ok(None);
    }
    let mut cursor = SubsetCursor::at_rank(positions.len(), k, start);
    let mut best: Option<ChunkBest> = None;
    for step in 0..count {
        let indices = cursor.indices();
        let sinks =
            SinkSet::from_canonical(indices.iter().map(|&i| positions[i]).collect());
        let cutoff = best.as_ref().and_then(|b| b.time.finite());
        if let Some(time) = evacuation_time_with_cutoff(net, &sinks, cutoff)? {
            let improves = best.as_ref().is_none_or(|b| time < b.time);
            if improves {
                best = Some(ChunkBest {
                    rank: start + step,
                    indices: indices.to_vec(),
                    time,
                });
            }
        }
        cursor.advance();
    }
    Ok(best)
}

/// Returns the minimizing k-subset of `positions` (which must be sorted,
/// canonical and distinct), its evacuation time, and the size of the
/// enumeration space. Ties go to the lexicographically smallest subset.
/// `k >= positions.len()` degenerates to the single full set.
pub(crate) fn best_k_subset(
    net: &DynamicNetwork,
    positions: &[Position],
    k: usize,
    threads: usize,
) -> Result<SearchOutcome, Error> {
    if positions.is_empty() {
        return Err(Error::NoPositions);
    }
    if k == 0 {
        return Err(Error::ZeroK);
    }
    if k >= positions.len() {
        let sinks = SinkSet::from_canonical(positions.to_vec());
        let time = evacuation_time(net, &sinks)?;
        return Ok(SearchOutcome {
            sinks,
            time,
            subsets_considered: 1,
        });
    }

    let total = binomial(positions.len() as u64, k as u64).ok_or(Error::BudgetExceeded {
        positions: positions.len() as u64,
        k: k as u64,
        budget: u64::MAX,
    })?;
    let workers = threads.max(1).min(usize::try_from(total).unwrap_or(usize::MAX));

    let chunk_results: Vec<Result<Option<ChunkBest>, Error>> = if workers <= 1 {
        vec![scan_chunk(net, positions, k, 0, total)]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let start = total * w as u128 / workers as u128;
                    let end = total * (w as u128 + 1) / workers as u128;
                    scope.spawn(move || scan_chunk(net, positions, k, start, end - start))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("search worker panicked"))
                .collect()
        })
    };

    let mut best: Option<ChunkBest> = None;
    for result in chunk_results {
        let Some(candidate) = result? else { continue };
        let improves = best
            .as_ref()
            .is_none_or(|b| (candidate.time, candidate.rank) < (b.time, b.rank));
        if improves {
            best = Some(candidate);
        }
    }
    let best = best.expect("at least one subset is always evaluated");
    Ok(SearchOutcome {
        sinks: SinkSet::from_canonical(best.indices.iter().map(|&i| positions[i]).collect()),
        time: best.time,
        subsets_considered: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Edge;
    use std::collections::BTreeMap;

    fn path_net() -> DynamicNetwork {
        DynamicNetwork {
            vertices: vec!["a".into(), "b".into(), "c".into()],
            edges: vec![
                Edge { u: 0, v: 1, capacity: 1, transit: 1 },
                Edge { u: 1, v: 2, capacity: 1, transit: 1 },
            ],
            sources: BTreeMap::from([(0, 1), (2, 1)]),
        }
    }

    /// Reference minimizer without cutoffs or chunking.
    fn naive_best(
        net: &DynamicNetwork,
        positions: &[Position],
        k: usize,
    ) -> (SinkSet, EvaluationResult) {
        let mut best: Option<(EvaluationResult, SinkSet)> = None;
        for indices in crate::combinatorics::k_subsets(positions.len(), k) {
            let sinks =
                SinkSet::from_canonical(indices.iter().map(|&i| positions[i]).collect());
            let time = evacuation_time(net, &sinks).unwrap();
            if best.as_ref().is_none_or(|(t, _)| time < *t) {
                best = Some((time, sinks));
            }
        }
        let (time, sinks) = best.unwrap();
        (sinks, time)
    }

    #[test]
    fn pruned_search_matches_naive_enumeration() {
        let net = path_net();
        let positions = net.all_integer_positions();
        for k in 1..=2 {
            let (naive_sinks, naive_time) = naive_best(&net, &positions, k);
            for threads in [1, 2, 5] {
                let outcome = best_k_subset(&net, &positions, k, threads).unwrap();
                assert_eq!(outcome.sinks, naive_sinks, "k={k} threads={threads}");
                assert_eq!(outcome.time, naive_time);
            }
        }
    }

    #[test]
    fn oversized_k_uses_every_position() {
        let net = path_net();
        let positions = net.all_integer_positions();
        let outcome = best_k_subset(&net, &positions, 10, 1).unwrap();
        assert_eq!(outcome.sinks.len(), positions.len());
        assert_eq!(outcome.subsets_considered, 1);
    }
}
