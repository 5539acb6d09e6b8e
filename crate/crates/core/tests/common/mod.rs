//! Seeded random instance generators shared by the integration suites.
//!
//! Corpus bounds follow the acceptance envelope: at most 8 vertices,
//! 12 edges, transit 6, capacity 3 and total supply 10.

use std::collections::{BTreeMap, BTreeSet};

use ksink_core::network::Edge;
use ksink_core::{DynamicNetwork, Instance, Position, SinkSet};
use rand::RngExt;

pub const MAX_VERTICES: usize = 8;
pub const MAX_EDGES: usize = 12;
pub const MAX_TRANSIT: u64 = 6;
pub const MAX_CAPACITY: u64 = 3;
pub const MAX_TOTAL_SUPPLY: u64 = 10;

fn vertex_names(count: usize) -> Vec<String> {
    (0..count).map(|i| format!("v{i}")).collect()
}

fn distribute_supply(rng: &mut impl RngExt, vertices: usize, total: u64) -> BTreeMap<usize, u64> {
    let mut sources = BTreeMap::new();
    for _ in 0..total {
        *sources.entry(rng.random_range(0..vertices)).or_insert(0) += 1;
    }
    sources
}

/// A connected network with positive-capacity spanning tree, so every
/// nonempty sink set is reachable and the instance is feasible.
pub fn random_feasible_instance(rng: &mut impl RngExt) -> Instance {
    let nv = rng.random_range(2..=MAX_VERTICES);
    let mut edges = Vec::new();
    let mut present = BTreeSet::new();
    for v in 1..nv {
        let u = rng.random_range(0..v);
        present.insert((u, v));
        edges.push(Edge {
            u,
            v,
            capacity: rng.random_range(1..=MAX_CAPACITY),
            transit: rng.random_range(1..=MAX_TRANSIT),
        });
    }
    let complete = nv * (nv - 1) / 2;
    let budget = complete.min(MAX_EDGES) - (nv - 1);
    let extra = if budget == 0 { 0 } else { rng.random_range(0..=budget) };
    let mut added = 0;
    let mut attempts = 0;
    while added < extra && attempts < 200 {
        attempts += 1;
        let mut u = rng.random_range(0..nv);
        let mut v = rng.random_range(0..nv);
        if u == v {
            continue;
        }
        if u > v {
            std::mem::swap(&mut u, &mut v);
        }
        if !present.insert((u, v)) {
            continue;
        }
        edges.push(Edge {
            u,
            v,
            capacity: rng.random_range(0..=MAX_CAPACITY),
            transit: rng.random_range(1..=MAX_TRANSIT),
        });
        added += 1;
    }
    let total = rng.random_range(1..=MAX_TOTAL_SUPPLY);
    let network = DynamicNetwork {
        vertices: vertex_names(nv),
        edges,
        sources: distribute_supply(rng, nv, total),
    };
    Instance::new(network, rng.random_range(1..=2))
}

/// A network that may be disconnected and may have zero total supply;
/// used where infeasible sink sets are part of the test surface.
pub fn random_loose_network(rng: &mut impl RngExt) -> DynamicNetwork {
    if rng.random_range(0..3) < 2 {
        return random_feasible_instance(rng).network;
    }
    let nv = rng.random_range(2..=MAX_VERTICES);
    let mut edges = Vec::new();
    let mut present = BTreeSet::new();
    let wanted = rng.random_range(0..=(nv * (nv - 1) / 2).min(MAX_EDGES));
    let mut attempts = 0;
    while edges.len() < wanted && attempts < 200 {
        attempts += 1;
        let mut u = rng.random_range(0..nv);
        let mut v = rng.random_range(0..nv);
        if u == v {
            continue;
        }
        if u > v {
            std::mem::swap(&mut u, &mut v);
        }
        if !present.insert((u, v)) {
            continue;
        }
        edges.push(Edge {
            u,
            v,
            capacity: rng.random_range(0..=MAX_CAPACITY),
            transit: rng.random_range(1..=MAX_TRANSIT),
        });
    }
    let total = rng.random_range(0..=MAX_TOTAL_SUPPLY);
    DynamicNetwork {
        vertices: vertex_names(nv),
        edges,
        sources: distribute_supply(rng, nv, total),
    }
}

/// A random sink set of `k` distinct positions. With some probability two
/// of them are interior points of the same edge, exercising the
/// multi-sink subdivision path.
pub fn random_sink_set(rng: &mut impl RngExt, net: &DynamicNetwork, k: usize) -> SinkSet {
    let positions = net.all_integer_positions();
    let mut chosen: BTreeSet<Position> = BTreeSet::new();
    if k >= 2 && rng.random_range(0..3) == 0 {
        let wide: Vec<usize> = net
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.transit >= 3)
            .map(|(i, _)| i)
            .collect();
        if let Some(&edge) = wide.get(rng.random_range(0..wide.len().max(1))) {
            let transit = net.edges[edge].transit;
            let first = rng.random_range(1..transit);
            let second = rng.random_range(1..transit);
            chosen.insert(Position::EdgePoint { edge, offset: first });
            chosen.insert(Position::EdgePoint { edge, offset: second });
        }
    }
    let mut attempts = 0;
    while chosen.len() < k.min(positions.len()) && attempts < 500 {
        attempts += 1;
        chosen.insert(positions[rng.random_range(0..positions.len())]);
    }
    SinkSet::new(net, chosen).expect("generated positions are canonical and distinct")
}
