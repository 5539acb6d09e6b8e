//! The approximate solver: sample epsilon-stride candidates, enumerate
//! every k-subset and keep the best.

use crate::candidates::{sample_positions, CandidateSet};
use crate::epsilon::Epsilon;
use crate::error::Error;
use crate::evaluator::EvaluationResult;
use crate::network::{Instance, SinkSet};
use crate::search::best_k_subset;

/// Result of one approximate solve: the best sink set among all k-subsets
/// of the candidate set, its evacuation time, and the enumeration size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxResult {
    pub sinks: SinkSet,
    pub time: EvaluationResult,
    pub epsilon: Epsilon,
    pub candidate_count: u64,
    /// Size of the enumeration space `C(candidates, k)`; subsets pruned by
    /// the distance bound still count.
    pub subsets_evaluated: u128,
}

/// Single-threaded [`solve_fptas_with`].
pub fn solve_fptas(instance: &Instance, epsilon: Epsilon) -> Result<ApproxResult, Error> {
    solve_fptas_with(instance, epsilon, 1)
}

/// Solves the instance over the epsilon-sampled candidate set, evaluating
/// subset evaluations on `threads` workers. The result is deterministic
/// for every worker count: finite times beat `Infeasible`, ties go to the
/// lexicographically smallest candidate subset. When `k` exceeds the
/// candidate count, the single full candidate set is used.
pub fn solve_fptas_with(
    instance: &Instance,
    epsilon: Epsilon,
    threads: usize,
) -> Result<ApproxResult, Error> {
    instance.ensure_valid()?;
    let candidates: CandidateSet = sample_positions(&instance.network, epsilon);
    let outcome = best_k_subset(
        &instance.network,
        candidates.positions(),
        instance.k as usize,
        threads,
    )?;
    Ok(ApproxResult {
        sinks: outcome.sinks,
        time: outcome.time,
        epsilon,
        candidate_count: candidates.len() as u64,
        subsets_evaluated: outcome.subsets_considered,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{DynamicNetwork, Edge, Position};
    use std::collections::BTreeMap;

    fn eps(p: u64, q: u64) -> Epsilon {
        Epsilon::new(p, q).unwrap()
    }

    #[test]
    fn unit_path_places_the_sink_in_the_middle() {
        let net = DynamicNetwork {
            vertices: vec!["a".into(), "b".into(), "c".into()],
            edges: vec![
                Edge { u: 0, v: 1, capacity: 1, transit: 1 },
                Edge { u: 1, v: 2, capacity: 1, transit: 1 },
            ],
            sources: BTreeMap::from([(0, 1), (2, 1)]),
        };
        let instance = Instance::new(net, 1);
        let result = solve_fptas(&instance, eps(1, 2)).unwrap();
        assert_eq!(result.candidate_count, 3);
        assert_eq!(result.sinks.positions(), &[Position::Vertex(1)]);
        assert_eq!(result.time, EvaluationResult::Time(1));
        assert_eq!(result.subsets_evaluated, 3);
    }

    #[test]
    fn sink_lands_on_a_lone_source() {
        let net = DynamicNetwork {
            vertices: vec!["u".into(), "v".into()],
            edges: vec![Edge { u: 0, v: 1, capacity: 2, transit: 6 }],
            sources: BTreeMap::from([(0, 3)]),
        };
        let instance = Instance::new(net, 1);
        for e in [eps(1, 4), eps(1, 1), eps(5, 1)] {
            let result = solve_fptas(&instance, e).unwrap();
            assert_eq!(result.sinks.positions(), &[Position::Vertex(0)]);
            assert_eq!(result.time, EvaluationResult::Time(0));
        }
    }

    #[test]
    fn disconnected_supply_with_small_k_reports_infeasible() {
        let net = DynamicNetwork {
            vertices: vec!["a".into(), "b".into(), "c".into(), "d".into()],
            edges: vec![
                Edge { u: 0, v: 1, capacity: 1, transit: 1 },
                Edge { u: 2, v: 3, capacity: 1, transit: 1 },
            ],
            sources: BTreeMap::from([(0, 1), (2, 1)]),
        };
        let instance = Instance::new(net, 1);
        let result = solve_fptas(&instance, eps(1, 2)).unwrap();
        assert_eq!(result.time, EvaluationResult::Infeasible);
        // Lexicographic tie-break among all-infeasible singletons.
        assert_eq!(result.sinks.positions(), &[Position::Vertex(0)]);
    }

    #[test]
    fn oversized_k_degenerates_to_all_candidates() {
        let net = DynamicNetwork {
            vertices: vec!["u".into(), "v".into()],
            edges: vec![Edge { u: 0, v: 1, capacity: 1, transit: 2 }],
            sources: BTreeMap::from([(0, 1)]),
        };
        let instance = Instance::new(net, 10);
        let result = solve_fptas(&instance, eps(1, 2)).unwrap();
        assert_eq!(result.sinks.len(), result.candidate_count as usize);
        assert_eq!(result.time, EvaluationResult::Time(0));
    }

    #[test]
    fn identical_results_for_every_worker_count() {
        let net = DynamicNetwork {
            vertices: (0..5).map(|i| format!("v{i}")).collect(),
            edges: vec![
                Edge { u: 0, v: 1, capacity: 1, transit: 4 },
                Edge { u: 1, v: 2, capacity: 2, transit: 3 },
                Edge { u: 2, v: 3, capacity: 1, transit: 5 },
                Edge { u: 0, v: 4, capacity: 1, transit: 2 },
                Edge { u: 3, v: 4, capacity: 3, transit: 1 },
            ],
            sources: BTreeMap::from([(0, 2), (2, 3), (4, 1)]),
        };
        let instance = Instance::new(net, 2);
        let reference = solve_fptas_with(&instance, eps(1, 4), 1).unwrap();
        for threads in [2, 3, 8] {
            let run = solve_fptas_with(&instance, eps(1, 4), threads).unwrap();
            assert_eq!(run, reference, "threads={threads}");
        }
    }

    #[test]
    fn invalid_instances_are_rejected() {
        let mut net = DynamicNetwork {
            vertices: vec!["u".into(), "v".into()],
            edges: vec![Edge { u: 0, v: 1, capacity: 1, transit: 2 }],
            sources: BTreeMap::new(),
        };
        net.edges[0].transit = 0;
        assert!(matches!(
            solve_fptas(&Instance::new(net.clone(), 1), eps(1, 2)),
            Err(Error::InvalidNetwork(_))
        ));
        net.edges[0].transit = 2;
        assert_eq!(
            solve_fptas(&Instance::new(net, 0), eps(1, 2)),
            Err(Error::ZeroK)
        );
    }
}
