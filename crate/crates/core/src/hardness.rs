//! Hard instance generation from Hitting Set.
//!
//! A hitting-set instance maps to a bipartite unit network: one vertex per
//! ground element, one supplied vertex per family set, and a unit edge
//! wherever an element belongs to a set. The family sets can all be
//! drained in one time step exactly when k sinks can be chosen to hit
//! every set, which the verifier checks against a brute-force hitting-set
//! decision on small inputs.

use std::collections::BTreeSet;

use crate::combinatorics::{binomial, SubsetCursor};
use crate::error::Error;
use crate::exact::{solve_exact_threshold_with, DEFAULT_SUBSET_BUDGET};
use crate::network::{DynamicNetwork, Edge, Instance};

/// A ground set, a family of subsets over it, and the hitting budget k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSetInstance {
    pub universe: Vec<String>,
    pub family: Vec<Vec<String>>,
    pub k: u64,
}

impl HittingSetInstance {
    pub fn validate(&self) -> Result<(), Error> {
        let mut seen = BTreeSet::new();
        for element in &self.universe {
            if !seen.insert(element.as_str()) {
                return Err(Error::InvalidHittingSet(format!(
                    "element {element:?} appears twice in the universe"
                )));
            }
        }
        for (index, set) in self.family.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::InvalidHittingSet(format!("set {index} is empty")));
            }
            let mut members = BTreeSet::new();
            for element in set {
                if !seen.contains(element.as_str()) {
                    return Err(Error::InvalidHittingSet(format!(
                        "set {index} contains {element:?}, which is not in the universe"
                    )));
                }
                if !members.insert(element.as_str()) {
                    return Err(Error::InvalidHittingSet(format!(
                        "set {index} lists {element:?} twice"
                    )));
                }
            }
        }
        if self.k == 0 {
            return Err(Error::InvalidHittingSet("k must be at least 1".into()));
        }
        Ok(())
    }
}

/// Builds the bipartite sink-location instance of a hitting-set instance:
/// element vertices first, then one vertex per family set carrying one
/// unit of supply, with a unit-capacity unit-transit edge for each
/// membership. The instance keeps the hitting budget as its k.
pub fn from_hitting_set(hs: &HittingSetInstance) -> Result<Instance, Error> {
    hs.validate()?;
    let element_count = hs.universe.len();
    let mut vertices = hs.universe.clone();
    let taken: BTreeSet<&str> = hs.universe.iter().map(String::as_str).collect();
    for index in 1..=hs.family.len() {
        let mut name = format!("S{index}");
        while taken.contains(name.as_str()) {
            name.push('\'');
        }
        vertices.push(name);
    }

    let mut network = DynamicNetwork {
        vertices,
        edges: Vec::new(),
        sources: (0..hs.family.len())
            .map(|j| (element_count + j, 1))
            .collect(),
    };
    for (j, set) in hs.family.iter().enumerate() {
        let members: BTreeSet<&str> = set.iter().map(String::as_str).collect();
        for (i, element) in hs.universe.iter().enumerate() {
            if members.contains(element.as_str()) {
                network.edges.push(Edge {
                    u: i,
                    v: element_count + j,
                    capacity: 1,
                    transit: 1,
                });
            }
        }
    }
    Ok(Instance::new(network, hs.k))
}

/// [`brute_force_hitting_set_with`] under the default budget.
pub fn brute_force_hitting_set(hs: &HittingSetInstance) -> Result<bool, Error> {
    brute_force_hitting_set_with(hs, DEFAULT_SUBSET_BUDGET)
}

/// Whether some subset of at most k ground elements intersects every
/// family set, by exhaustive enumeration of subsets in ascending size.
pub fn brute_force_hitting_set_with(hs: &HittingSetInstance, budget: u64) -> Result<bool, Error> {
    hs.validate()?;
    let n = hs.universe.len();
    let k = (hs.k as usize).min(n);
    let total: u128 = (0..=k)
        .map(|size| binomial(n as u64, size as u64).unwrap_or(u128::MAX))
        .sum();
    if total > budget as u128 {
        return Err(Error::BudgetExceeded {
            positions: n as u64,
            k: hs.k,
            budget,
        });
    }

    let membership: Vec<BTreeSet<usize>> = hs
        .family
        .iter()
        .map(|set| {
            set.iter()
                .map(|element| {
                    hs.universe
                        .iter()
                        .position(|u| u == element)
                        .expect("validated membership")
                })
                .collect()
        })
        .collect();

    for size in 0..=k {
        let mut cursor = SubsetCursor::first(n, size);
        while !cursor.is_exhausted() {
            let chosen = cursor.indices();
            let hits_all = membership
                .iter()
                .all(|set| chosen.iter().any(|element| set.contains(element)));
            if hits_all {
                return Ok(true);
            }
            if !cursor.advance() {
                break;
            }
        }
    }
    Ok(false)
}

/// [`verify_reduction_with`] under the default budget.
pub fn verify_reduction(hs: &HittingSetInstance) -> Result<bool, Error> {
    verify_reduction_with(hs, DEFAULT_SUBSET_BUDGET)
}

/// Checks the reduction's equivalence on one instance: the hitting-set
/// decision must coincide with "k sinks drain the generated network within
/// one time step". Returns whether the two sides agree.
pub fn verify_reduction_with(hs: &HittingSetInstance, budget: u64) -> Result<bool, Error> {
    let hitting = brute_force_hitting_set_with(hs, budget)?;
    let instance = from_hitting_set(hs)?;
    let sinkable = solve_exact_threshold_with(&instance, 1, budget)?;
    Ok(hitting == sinkable)
}
