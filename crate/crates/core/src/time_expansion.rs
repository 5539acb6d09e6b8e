//! Time-expanded realization of flows over time.
//!
//! A directed dynamic network over a horizon `T` unrolls into a static
//! graph with one node per (vertex, time step): movement arcs shifted by
//! their transit time, holdover arcs modeling supply waiting at a vertex,
//! supply arcs from a static super-source, and collection arcs from the
//! designated collection vertex into a static super-sink. Feasibility of
//! sending all supply within `T` is then a single max-flow saturation
//! check.

use std::collections::BTreeMap;

use crate::error::Error;

/// A directed arc of a dynamic network. Transit 0 is allowed (used by the
/// sink-to-collector gadget arcs).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirectedArc {
    pub from: usize,
    pub to: usize,
    pub capacity: u64,
    pub transit: u64,
}

/// A directed dynamic network with supplied sources and a single
/// collection vertex that all supply must reach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedDynamicNetwork {
    pub vertex_count: usize,
    pub arcs: Vec<DirectedArc>,
    /// Map vertex index -> supply; entries with supply 0 are ignored.
    pub sources: BTreeMap<usize, u64>,
    pub collection: usize,
}

impl DirectedDynamicNetwork {
    /// Sum of the positive supplies; the amount the collection vertex must
    /// absorb for a horizon to be feasible.
    pub fn total_supply(&self) -> u64 {
        self.sources.values().sum()
    }

    pub fn validate(&self) -> Result<(), Error> {
        for arc in &self.arcs {
            if arc.from >= self.vertex_count {
                return Err(Error::UnknownVertex(arc.from));
            }
            if arc.to >= self.vertex_count {
                return Err(Error::UnknownVertex(arc.to));
            }
        }
        for &s in self.sources.keys() {
            if s >= self.vertex_count {
                return Err(Error::UnknownVertex(s));
            }
        }
        if self.collection >= self.vertex_count {
            return Err(Error::UnknownVertex(self.collection));
        }
        Ok(())
    }
}

/// Role of an arc in the expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcKind {
    /// `(u, t) -> (v, t + transit)` for a dynamic arc.
    Movement,
    /// `(v, t) -> (v, t + 1)`: supply waiting at a vertex.
    Holdover,
    /// Super-source -> `(s, 0)` carrying the supply of source `s`.
    Supply,
    /// `(collection, t)` -> super-sink.
    Collection,
}

/// An arc of the expanded static graph. "Unbounded" capacities (holdover
/// and collection arcs) are stored clamped to the total supply, which no
/// flow can exceed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TimeExpandedArc {
    pub from: usize,
    pub to: usize,
    pub capacity: u64,
    pub kind: ArcKind,
}

/// The static expansion of a dynamic network over a fixed horizon.
///
/// Layered node `(v, t)` has id `t * vertex_count + v`; the super-source
/// and super-sink follow the layered block. Arc order is deterministic:
/// movement arcs (per dynamic arc, per departure time), then holdover,
/// then supply, then collection arcs.
#[derive(Debug, Clone)]
pub struct TimeExpandedGraph {
    vertex_count: usize,
    horizon: u64,
    arcs: Vec<TimeExpandedArc>,
    supply_target: u64,
}

impl TimeExpandedGraph {
    pub fn node(&self, vertex: usize, time: u64) -> usize {
        debug_assert!(vertex < self.vertex_count && time <= self.horizon);
        time as usize * self.vertex_count + vertex
    }

    pub fn layered_node_count(&self) -> usize {
        (self.horizon as usize + 1) * self.vertex_count
    }

    /// Total node count including the two static terminals.
    pub fn node_count(&self) -> usize {
        self.layered_node_count() + 2
    }

    pub fn super_source(&self) -> usize {
        self.layered_node_count()
    }

    pub fn super_sink(&self) -> usize {
        self.layered_node_count() + 1
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn arcs(&self) -> &[TimeExpandedArc] {
        &self.arcs
    }

    /// The flow value that certifies feasibility: the sum of all supplies.
    pub fn supply_target(&self) -> u64 {
        self.supply_target
    }
}

/// Builds the expansion of `net` over `0..=horizon`.
pub fn build_time_expanded(net: &DirectedDynamicNetwork, horizon: u64) -> TimeExpandedGraph {
    let nv = net.vertex_count;
    let supply_target: u64 = net.sources.values().sum();
    let mut graph = TimeExpandedGraph {
        vertex_count: nv,
        horizon,
        arcs: Vec::new(),
        supply_target,
    };

    for arc in &net.arcs {
        if arc.capacity == 0 || arc.transit > horizon {
            continue;
        }
        for t in 0..=(horizon - arc.transit) {
            graph.arcs.push(TimeExpandedArc {
                from: t as usize * nv + arc.from,
                to: (t + arc.transit) as usize * nv + arc.to,
                capacity: arc.capacity,
                kind: ArcKind::Movement,
            });
        }
    }
    for vertex in 0..nv {
        for t in 0..horizon {
            graph.arcs.push(TimeExpandedArc {
                from: t as usize * nv + vertex,
                to: (t + 1) as usize * nv + vertex,
                capacity: supply_target,
                kind: ArcKind::Holdover,
            });
        }
    }
    let super_source = graph.super_source();
    for (&source, &supply) in &net.sources {
        if supply > 0 {
            graph.arcs.push(TimeExpandedArc {
                from: super_source,
                to: source,
                capacity: supply,
                kind: ArcKind::Supply,
            });
        }
    }
    let super_sink = graph.super_sink();
    for t in 0..=horizon {
        graph.arcs.push(TimeExpandedArc {
            from: t as usize * nv + net.collection,
            to: super_sink,
            capacity: supply_target,
            kind: ArcKind::Collection,
        });
    }
    graph
}

/// An integral maximum flow: its value and the flow carried by each arc of
/// the expanded graph, indexed like [`TimeExpandedGraph::arcs`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowResult {
    pub value: u64,
    pub arc_flows: Vec<u64>,
}

/// Exact maximum flow from the super-source to the super-sink, computed
/// with Dinic's algorithm. Integral capacities give an integral flow.
pub fn max_flow(graph: &TimeExpandedGraph) -> FlowResult {
    let mut dinic = Dinic::new(graph.node_count());
    let arc_ids: Vec<usize> = graph
        .arcs
        .iter()
        .map(|arc| dinic.add_arc(arc.from, arc.to, arc.capacity))
        .collect();
    let value = dinic.run(graph.super_source(), graph.super_sink());
    let arc_flows = graph
        .arcs
        .iter()
        .zip(&arc_ids)
        .map(|(arc, &id)| arc.capacity - dinic.residual(id))
        .collect();
    FlowResult { value, arc_flows }
}

/// Whether all supply can reach the collection vertex within `horizon`.
pub fn feasible(net: &DirectedDynamicNetwork, horizon: u64) -> bool {
    let graph = build_time_expanded(net, horizon);
    max_flow(&graph).value == graph.supply_target()
}

/// Dinic's blocking-flow max-flow over an adjacency list of paired
/// forward/backward arcs. Visit order follows insertion order, so results
/// are deterministic.
struct Dinic {
    adj: Vec<Vec<u32>>,
    to: Vec<u32>,
    cap: Vec<u64>,
    level: Vec<u32>,
    cursor: Vec<usize>,
}

const UNREACHED: u32 = u32::MAX;

impl Dinic {
    fn new(nodes: usize) -> Self {
        Dinic {
            adj: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
            level: vec![UNREACHED; nodes],
            cursor: vec![0; nodes],
        }
    }

    /// Adds a forward arc and its zero-capacity reverse; returns the
    /// forward arc id (reverse id is `id ^ 1`).
    fn add_arc(&mut self, from: usize, to: usize, capacity: u64) -> usize {
        let id = self.to.len();
        self.to.push(to as u32);
        self.cap.push(capacity);
        self.adj[from].push(id as u32);
        self.to.push(from as u32);
        self.cap.push(0);
        self.adj[to].push(id as u32 + 1);
        id
    }

    fn residual(&self, arc: usize) -> u64 {
        self.cap[arc]
    }

    fn bfs(&mut self, source: usize, sink: usize) -> bool {
        self.level.fill(UNREACHED);
        self.level[source] = 0;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(node) = queue.pop_front() {
            for &arc in &self.adj[node] {
                let next = self.to[arc as usize] as usize;
                if self.cap[arc as usize] > 0 && self.level[next] == UNREACHED {
                    self.level[next] = self.level[node] + 1;
                    queue.push_back(next);
                }
            }
        }
        self.level[sink] != UNREACHED
    }

    fn dfs(&mut self, node: usize, sink: usize, limit: u64) -> u64 {
        if node == sink {
            return limit;
        }
        while self.cursor[node] < self.adj[node].len() {
            let arc = self.adj[node][self.cursor[node]] as usize;
            let next = self.to[arc] as usize;
            if self.cap[arc] > 0 && self.level[next] == self.level[node] + 1 {
                let pushed = self.dfs(next, sink, limit.min(self.cap[arc]));
                if pushed > 0 {
                    self.cap[arc] -= pushed;
                    self.cap[arc ^ 1] += pushed;
                    return pushed;
                }
            }
            self.cursor[node] += 1;
        }
        0
    }

    fn run(&mut self, source: usize, sink: usize) -> u64 {
        if source == sink {
            return 0;
        }
        let mut total = 0u64;
        while self.bfs(source, sink) {
            self.cursor.fill(0);
            loop {
                let pushed = self.dfs(source, sink, u64::MAX);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
        total
    }
}
