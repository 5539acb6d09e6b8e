//! Evacuation-time evaluation for a fixed sink set.
//!
//! An undirected network with sinks reduces to a directed network with a
//! single collection vertex: every undirected edge becomes two opposite
//! arcs, edges hosting interior sinks are first subdivided at them, and
//! each sink gains a transit-0 arc into a fresh collection vertex whose
//! capacity equals the total supply. The minimum evacuation horizon is
//! then found by binary search over the monotone feasibility predicate of
//! [`crate::time_expansion`].

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::fmt;

use crate::error::Error;
use crate::network::{DynamicNetwork, Position, SinkSet};
use crate::time_expansion::{feasible, DirectedArc, DirectedDynamicNetwork};

/// The minimum evacuation horizon for a sink set, or the explicit marker
/// that some positive supply cannot reach any sink.
///
/// The derived ordering places every finite time below `Infeasible`, so
/// minimizing over results treats unreachable sink sets as worst.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EvaluationResult {
    Time(u64),
    Infeasible,
}

impl EvaluationResult {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, EvaluationResult::Infeasible)
    }

    pub fn finite(&self) -> Option<u64> {
        match self {
            EvaluationResult::Time(t) => Some(*t),
            EvaluationResult::Infeasible => None,
        }
    }
}

impl fmt::Display for EvaluationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvaluationResult::Time(t) => write!(f, "{t}"),
            EvaluationResult::Infeasible => write!(f, "infeasible"),
        }
    }
}

/// Horizon bracket for the feasibility search: infeasible strictly below
/// `lower`, feasible at `upper`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HorizonBounds {
    pub lower: u64,
    pub upper: u64,
}

/// The subdivided undirected network together with the sink positions
/// mapped to vertices of it.
struct SubdividedSinks {
    network: DynamicNetwork,
    sink_vertices: Vec<usize>,
}

fn subdivide_at_sinks(net: &DynamicNetwork, sinks: &SinkSet) -> Result<SubdividedSinks, Error> {
    let mut interior = BTreeSet::new();
    for &position in sinks.iter() {
        let canonical = net.canonicalize(position)?;
        if !canonical.is_vertex() {
            interior.insert(canonical);
        }
    }
    let (network, located) = net.subdivide_at(&interior)?;
    let mut sink_vertices: Vec<usize> = sinks
        .iter()
        .map(|&p| match net.canonicalize(p).expect("canonicalized above") {
            Position::Vertex(v) => v,
            point => located[&point],
        })
        .collect();
    sink_vertices.sort_unstable();
    sink_vertices.dedup();
    Ok(SubdividedSinks {
        network,
        sink_vertices,
    })
}

fn directed_from_subdivided(sub: &SubdividedSinks) -> DirectedDynamicNetwork {
    let collection = sub.network.vertex_count();
    let total_supply = sub.network.total_supply();
    let mut arcs = Vec::with_capacity(2 * sub.network.edge_count() + sub.sink_vertices.len());
    for edge in &sub.network.edges {
        arcs.push(DirectedArc {
            from: edge.u,
            to: edge.v,
            capacity: edge.capacity,
            transit: edge.transit,
        });
        arcs.push(DirectedArc {
            from: edge.v,
            to: edge.u,
            capacity: edge.capacity,
            transit: edge.transit,
        });
    }
    for &sink in &sub.sink_vertices {
        arcs.push(DirectedArc {
            from: sink,
            to: collection,
            capacity: total_supply,
            transit: 0,
        });
    }
    DirectedDynamicNetwork {
        vertex_count: collection + 1,
        arcs,
        sources: sub.network.sources.clone(),
        collection,
    }
}

/// Builds the directed collection network for the given sinks: interior
/// sink positions become vertices by subdivision, every (fragment) edge
/// becomes two opposite arcs, and each sink feeds a fresh collection
/// vertex through a transit-0 arc of capacity equal to the total supply.
pub fn reduce_to_directed(
    net: &DynamicNetwork,
    sinks: &SinkSet,
) -> Result<DirectedDynamicNetwork, Error> {
    Ok(directed_from_subdivided(&subdivide_at_sinks(net, sinks)?))
}

/// Shortest transit-time distance from every vertex to its nearest sink
/// vertex, walking only edges with positive capacity. `u64::MAX` marks
/// unreachable vertices.
fn distances_to_sinks(net: &DynamicNetwork, sink_vertices: &[usize]) -> Vec<u64> {
    let mut adjacency = vec![Vec::new(); net.vertex_count()];
    for edge in &net.edges {
        if edge.capacity >= 1 {
            adjacency[edge.u].push((edge.v, edge.transit));
            adjacency[edge.v].push((edge.u, edge.transit));
        }
    }
    let mut dist = vec![u64::MAX; net.vertex_count()];
    let mut heap = BinaryHeap::new();
    for &sink in sink_vertices {
        dist[sink] = 0;
        heap.push(Reverse((0u64, sink)));
    }
    while let Some(Reverse((d, vertex))) = heap.pop() {
        if d > dist[vertex] {
            continue;
        }
        for &(next, weight) in &adjacency[vertex] {
            let candidate = d + weight;
            if candidate < dist[next] {
                dist[next] = candidate;
                heap.push(Reverse((candidate, next)));
            }
        }
    }
    dist
}

fn bounds_of_subdivided(sub: &SubdividedSinks) -> Option<HorizonBounds> {
    let dist = distances_to_sinks(&sub.network, &sub.sink_vertices);
    let mut lower = 0u64;
    for (&vertex, &supply) in &sub.network.sources {
        if supply == 0 {
            continue;
        }
        if dist[vertex] == u64::MAX {
            return None;
        }
        lower = lower.max(dist[vertex]);
    }
    Some(HorizonBounds {
        lower,
        upper: lower + sub.network.total_supply(),
    })
}

/// Horizon bracket for a sink set: `lower` is the largest shortest-path
/// distance from a supplied source to its nearest sink (so no smaller
/// horizon can be feasible), `upper` adds the total supply (serializing
/// units one per step along a shortest path always fits). `None` when some
/// positive supply has no positive-capacity path to any sink.
pub fn horizon_bounds(
    net: &DynamicNetwork,
    sinks: &SinkSet,
) -> Result<Option<HorizonBounds>, Error> {
    Ok(bounds_of_subdivided(&subdivide_at_sinks(net, sinks)?))
}

fn least_feasible(directed: &DirectedDynamicNetwork, mut lower: u64, mut upper: u64) -> u64 {
    while lower < upper {
        let mid = lower + (upper - lower) / 2;
        if feasible(directed, mid) {
            upper = mid;
        } else {
            lower = mid + 1;
        }
    }
    lower
}

/// Evaluates a sink set with an optional cutoff for enumeration search:
/// returns `None` as soon as the evacuation time is provably strictly
/// greater than `cutoff`, avoiding the exact search. Without a cutoff the
/// result is always `Some`.
pub(crate) fn evacuation_time_with_cutoff(
    net: &DynamicNetwork,
    sinks: &SinkSet,
    cutoff: Option<u64>,
) -> Result<Option<EvaluationResult>, Error> {
    if sinks.is_empty() {
        return Err(Error::EmptySinkSet);
    }
    let sub = subdivide_at_sinks(net, sinks)?;
    let Some(bounds) = bounds_of_subdivided(&sub) else {
        return Ok(Some(EvaluationResult::Infeasible));
    };
    let mut upper = bounds.upper;
    if let Some(cutoff) = cutoff {
        if bounds.lower > cutoff {
            return Ok(None);
        }
        upper = upper.min(cutoff);
    }
    let directed = directed_from_subdivided(&sub);
    if !feasible(&directed, upper) {
        return if upper < bounds.upper {
            // Feasible only beyond the cutoff; the exact value cannot matter.
            Ok(None)
        } else {
            Err(Error::UpperBoundInfeasible { upper })
        };
    }
    let best = least_feasible(&directed, bounds.lower, upper);
    Ok(Some(EvaluationResult::Time(best)))
}

/// The minimum horizon in which all supply can reach the sink set, found
/// by binary search between [`horizon_bounds`]; `Infeasible` exactly when
/// some positive supply has no positive-capacity path to any sink.
pub fn evacuation_time(net: &DynamicNetwork, sinks: &SinkSet) -> Result<EvaluationResult, Error> {
    evacuation_time_with_cutoff(net, sinks, None).map(|r| r.expect("no cutoff given"))
}

/// Whether the sink set evacuates within `horizon`. Equivalent to
/// `evacuation_time(..) <= Time(horizon)` by feasibility monotonicity, but
/// needs at most one flow computation.
pub(crate) fn within_horizon(
    net: &DynamicNetwork,
    sinks: &SinkSet,
    horizon: u64,
) -> Result<bool, Error> {
    if sinks.is_empty() {
        return Err(Error::EmptySinkSet);
    }
    let sub = subdivide_at_sinks(net, sinks)?;
    let Some(bounds) = bounds_of_subdivided(&sub) else {
        return Ok(false);
    };
    if bounds.lower > horizon {
        return Ok(false);
    }
    Ok(feasible(&directed_from_subdivided(&sub), horizon))
}
