//! Data model for undirected dynamic networks and sink positions.
//!
//! A dynamic network is an undirected graph whose edges carry a capacity
//! (units admitted per time step) and an integral transit time, together
//! with supplied source vertices. Sinks may be placed at vertices or at
//! integer offsets along edges; offsets 0 and `transit` canonicalize to
//! the endpoint vertices so position identity is unambiguous.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::Error;

/// An undirected edge, stored once with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    /// Units admitted into the edge per time step, in either direction.
    pub capacity: u64,
    /// Time steps needed to traverse the edge end to end. Always >= 1 in
    /// valid networks.
    pub transit: u64,
}

/// An undirected dynamic network: vertices, capacitated timed edges, and
/// supplied sources.
///
/// Fields are public so that invalid states can be represented and
/// reported by [`DynamicNetwork::validate`]; the constructors below
/// canonicalize endpoint order but do not reject.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DynamicNetwork {
    pub vertices: Vec<String>,
    pub edges: Vec<Edge>,
    /// Map vertex index -> supply. Vertices absent from the map have
    /// supply 0. Zero supplies on listed sources are permitted.
    pub sources: BTreeMap<usize, u64>,
}

/// A sink location: a vertex, or an interior point of an edge at an
/// integer transit offset from the edge's canonical endpoint `u`.
///
/// The derived ordering (vertices first, then edge points by edge index
/// and ascending offset) matches the enumeration order of
/// [`DynamicNetwork::all_integer_positions`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Position {
    Vertex(usize),
    EdgePoint { edge: usize, offset: u64 },
}

impl Position {
    pub fn is_vertex(&self) -> bool {
        matches!(self, Position::Vertex(_))
    }
}

/// A problem instance: the network plus the number of sinks to place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub network: DynamicNetwork,
    pub k: u64,
}

/// A set of distinct canonical positions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SinkSet {
    positions: Vec<Position>,
}

/// A single violated network invariant, naming the offending element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    ZeroTransit { edge: usize },
    SelfLoop { edge: usize },
    ParallelEdge { edge: usize, earlier: usize },
    NonCanonicalEndpoints { edge: usize },
    EndpointOutOfRange { edge: usize },
    SourceOutOfRange { vertex: usize },
    DuplicateVertexName { name: String },
    ZeroK,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroTransit { edge } => {
                write!(f, "edge {edge} has transit 0; transit must be at least 1")
            }
            Violation::SelfLoop { edge } => write!(f, "edge {edge} is a self-loop"),
            Violation::ParallelEdge { edge, earlier } => {
                write!(f, "edge {edge} duplicates the endpoints of edge {earlier}")
            }
            Violation::NonCanonicalEndpoints { edge } => {
                write!(f, "edge {edge} is not stored with u < v")
            }
            Violation::EndpointOutOfRange { edge } => {
                write!(f, "edge {edge} references a vertex outside the vertex list")
            }
            Violation::SourceOutOfRange { vertex } => {
                write!(f, "source vertex {vertex} is not in the vertex list")
            }
            Violation::DuplicateVertexName { name } => {
                write!(f, "vertex name {name:?} appears more than once")
            }
            Violation::ZeroK => write!(f, "k must be at least 1"),
        }
    }
}

/// Joins violations into a single error, for callers that want hard failure.
pub fn violations_to_error(violations: &[Violation]) -> Error {
    let joined = violations
        .iter()
        .map(Violation::to_string)
        .collect::<Vec<_>>()
        .join("; ");
    Error::InvalidNetwork(joined)
}

impl DynamicNetwork {
    /// Builds a network from vertex names, `(u, v, capacity, transit)`
    /// edges and `(vertex, supply)` sources given by name. Endpoint order
    /// is canonicalized; nothing is rejected here, so follow with
    /// [`validate`](Self::validate) when the input is untrusted.
    pub fn from_names(
        vertices: Vec<String>,
        edges: &[(String, String, u64, u64)],
        sources: &[(String, u64)],
    ) -> Result<Self, Error> {
        let index: BTreeMap<String, usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, name)| (name.clone(), i))
            .collect();
        let lookup = |name: &str| -> Result<usize, Error> {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::InvalidNetwork(format!("unknown vertex name {name:?}")))
        };
        let mut net = DynamicNetwork {
            vertices,
            edges: Vec::with_capacity(edges.len()),
            sources: BTreeMap::new(),
        };
        for (u, v, capacity, transit) in edges {
            let (mut a, mut b) = (lookup(u)?, lookup(v)?);
            if a > b {
                std::mem::swap(&mut a, &mut b);
            }
            net.edges.push(Edge {
                u: a,
                v: b,
                capacity: *capacity,
                transit: *transit,
            });
        }
        for (vertex, supply) in sources {
            net.sources.insert(lookup(vertex)?, *supply);
        }
        Ok(net)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Supply at a vertex; vertices absent from the source map have 0.
    pub fn supply(&self, vertex: usize) -> u64 {
        self.sources.get(&vertex).copied().unwrap_or(0)
    }

    pub fn total_supply(&self) -> u64 {
        self.sources.values().sum()
    }

    /// Checks every structural invariant and returns all violations.
    /// Valid networks return an empty list. Violations are data, not
    /// errors; zero-capacity edges are permitted (see [`warnings`](Self::warnings)).
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = Vec::new();
        let n = self.vertices.len();

        let mut seen_names: BTreeMap<&str, usize> = BTreeMap::new();
        for name in &self.vertices {
            *seen_names.entry(name.as_str()).or_insert(0) += 1;
        }
        for (name, count) in seen_names {
            if count > 1 {
                violations.push(Violation::DuplicateVertexName {
                    name: name.to_owned(),
                });
            }
        }

        let mut seen_pairs: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (i, edge) in self.edges.iter().enumerate() {
            if edge.u >= n || edge.v >= n {
                violations.push(Violation::EndpointOutOfRange { edge: i });
                continue;
            }
            if edge.u == edge.v {
                violations.push(Violation::SelfLoop { edge: i });
                continue;
            }
            if edge.u > edge.v {
                violations.push(Violation::NonCanonicalEndpoints { edge: i });
            }
            let key = (edge.u.min(edge.v), edge.u.max(edge.v));
            if let Some(&earlier) = seen_pairs.get(&key) {
                violations.push(Violation::ParallelEdge { edge: i, earlier });
            } else {
                seen_pairs.insert(key, i);
            }
            if edge.transit == 0 {
                violations.push(Violation::ZeroTransit { edge: i });
            }
        }

        for &vertex in self.sources.keys() {
            if vertex >= n {
                violations.push(Violation::SourceOutOfRange { vertex });
            }
        }

        violations
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Advisory notes for conditions that are legal but usually unintended.
    pub fn warnings(&self) -> Vec<String> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.capacity == 0)
            .map(|(i, _)| format!("edge {i} has capacity 0 and can never carry supply"))
            .collect()
    }

    /// Canonical form of a position on this network: offsets 0 and
    /// `transit` become the endpoint vertices. Idempotent.
    pub fn canonicalize(&self, position: Position) -> Result<Position, Error> {
        match position {
            Position::Vertex(v) => {
                if v < self.vertices.len() {
                    Ok(Position::Vertex(v))
                } else {
                    Err(Error::UnknownVertex(v))
                }
            }
            Position::EdgePoint { edge, offset } => {
                let record = self.edges.get(edge).ok_or(Error::UnknownEdge(edge))?;
                if offset == 0 {
                    Ok(Position::Vertex(record.u))
                } else if offset == record.transit {
                    Ok(Position::Vertex(record.v))
                } else if offset < record.transit {
                    Ok(Position::EdgePoint { edge, offset })
                } else {
                    Err(Error::OffsetOutOfRange {
                        edge,
                        offset,
                        transit: record.transit,
                    })
                }
            }
        }
    }

    /// Every integer position of the network: all vertices, then for each
    /// edge its `transit - 1` interior offsets. The order is vertices in
    /// vertex order, then edges in edge order with offsets ascending, so
    /// the result is sorted under [`Position`]'s ordering.
    pub fn all_integer_positions(&self) -> Vec<Position> {
        let interior: u64 = self.edges.iter().map(|e| e.transit.saturating_sub(1)).sum();
        let mut positions = Vec::with_capacity(self.vertices.len() + interior as usize);
        positions.extend((0..self.vertices.len()).map(Position::Vertex));
        for (edge, record) in self.edges.iter().enumerate() {
            for offset in 1..record.transit {
                positions.push(Position::EdgePoint { edge, offset });
            }
        }
        positions
    }

    /// Splits edges at the given interior points, turning each point into a
    /// fresh vertex. An edge with interior points at offsets `o1 < ... < oj`
    /// is replaced by `j + 1` fragments with transits `o1, o2 - o1, ...,
    /// transit - oj`, all inheriting the edge's capacity. Sources and
    /// supplies are unchanged. The returned map locates each point's new
    /// vertex.
    pub fn subdivide_at(
        &self,
        points: &BTreeSet<Position>,
    ) -> Result<(DynamicNetwork, BTreeMap<Position, usize>), Error> {
        let mut by_edge: BTreeMap<usize, BTreeSet<u64>> = BTreeMap::new();
        for &point in points {
            match point {
                Position::EdgePoint { edge, offset } => {
                    let record = self.edges.get(edge).ok_or(Error::UnknownEdge(edge))?;
                    if offset == 0 || offset >= record.transit {
                        return Err(Error::NotInterior { edge, offset });
                    }
                    by_edge.entry(edge).or_default().insert(offset);
                }
                Position::Vertex(v) => {
                    return Err(Error::NotInterior { edge: v, offset: 0 });
                }
            }
        }

        let mut result = DynamicNetwork {
            vertices: self.vertices.clone(),
            edges: Vec::with_capacity(self.edges.len() + points.len()),
            sources: self.sources.clone(),
        };
        let mut located = BTreeMap::new();
        let mut taken: BTreeSet<String> = self.vertices.iter().cloned().collect();

        for (edge, record) in self.edges.iter().enumerate() {
            let Some(offsets) = by_edge.get(&edge) else {
                result.edges.push(*record);
                continue;
            };
            let mut prev_vertex = record.u;
            let mut prev_offset = 0u64;
            for &offset in offsets {
                let mut name = format!(
                    "{}+{}@{}",
                    self.vertices[record.u], offset, self.vertices[record.v]
                );
                while taken.contains(&name) {
                    name.push('\'');
                }
                taken.insert(name.clone());
                let fresh = result.vertices.len();
                result.vertices.push(name);
                located.insert(Position::EdgePoint { edge, offset }, fresh);
                result.edges.push(Edge {
                    u: prev_vertex.min(fresh),
                    v: prev_vertex.max(fresh),
                    capacity: record.capacity,
                    transit: offset - prev_offset,
                });
                prev_vertex = fresh;
                prev_offset = offset;
            }
            result.edges.push(Edge {
                u: prev_vertex.min(record.v),
                v: prev_vertex.max(record.v),
                capacity: record.capacity,
                transit: record.transit - prev_offset,
            });
        }
        Ok((result, located))
    }
}

impl Instance {
    pub fn new(network: DynamicNetwork, k: u64) -> Self {
        Instance { network, k }
    }

    /// Network violations plus the instance-level `k >= 1` requirement.
    pub fn validate(&self) -> Vec<Violation> {
        let mut violations = self.network.validate();
        if self.k == 0 {
            violations.push(Violation::ZeroK);
        }
        violations
    }

    pub(crate) fn ensure_valid(&self) -> Result<(), Error> {
        let violations = self.validate();
        if violations.contains(&Violation::ZeroK) {
            return Err(Error::ZeroK);
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations_to_error(&violations))
        }
    }
}

impl SinkSet {
    /// Canonicalizes the given positions against `network`, sorts them and
    /// rejects duplicates (duplicates are judged after canonicalization, so
    /// `Vertex(u)` collides with an offset-0 point on an incident edge).
    pub fn new(
        network: &DynamicNetwork,
        positions: impl IntoIterator<Item = Position>,
    ) -> Result<Self, Error> {
        let mut canonical = positions
            .into_iter()
            .map(|p| network.canonicalize(p))
            .collect::<Result<Vec<_>, _>>()?;
        canonical.sort_unstable();
        for pair in canonical.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateSink);
            }
        }
        Ok(SinkSet {
            positions: canonical,
        })
    }

    /// Wraps positions that are already canonical, sorted and distinct.
    pub(crate) fn from_canonical(positions: Vec<Position>) -> Self {
        debug_assert!(positions.windows(2).all(|w| w[0] < w[1]));
        SinkSet { positions }
    }

    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Position> {
        self.positions.iter()
    }

    pub fn contains(&self, position: &Position) -> bool {
        self.positions.binary_search(position).is_ok()
    }
}
