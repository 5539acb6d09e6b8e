//! Epsilon-stride candidate positions for the approximate solver.

use crate::epsilon::Epsilon;
use crate::network::{DynamicNetwork, Position, SinkSet};

/// The sampled sink candidates for one network and epsilon: every vertex,
/// plus interior offsets at multiples of the per-edge stride
/// `max(1, floor(epsilon * transit))`, counted strictly below the transit.
/// Positions are canonical and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    positions: Vec<Position>,
    epsilon: Epsilon,
}

/// Samples the candidate set of `net` at stride `epsilon`.
pub fn sample_positions(net: &DynamicNetwork, epsilon: Epsilon) -> CandidateSet {
    let mut positions: Vec<Position> = (0..net.vertex_count()).map(Position::Vertex).collect();
    for (edge, record) in net.edges.iter().enumerate() {
        let stride = epsilon.stride(record.transit);
        let mut offset = stride;
        while offset < record.transit {
            positions.push(Position::EdgePoint { edge, offset });
            offset += stride;
        }
    }
    CandidateSet { positions, epsilon }
}

impl CandidateSet {
    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn epsilon(&self) -> Epsilon {
        self.epsilon
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Largest gap between consecutive candidate offsets on each edge,
    /// counting the endpoints as candidates at offsets 0 and transit.
    pub fn per_edge_max_gap(&self, net: &DynamicNetwork) -> Vec<u64> {
        let mut gaps = Vec::with_capacity(net.edge_count());
        for (edge, record) in net.edges.iter().enumerate() {
            let mut previous = 0u64;
            let mut largest = 0u64;
            for position in &self.positions {
                if let Position::EdgePoint { edge: e, offset } = position {
                    if *e == edge {
                        largest = largest.max(offset - previous);
                        previous = *offset;
                    }
                }
            }
            gaps.push(largest.max(record.transit - previous));
        }
        gaps
    }

    /// Number of interior candidates per edge.
    pub fn per_edge_interior_count(&self, net: &DynamicNetwork) -> Vec<u64> {
        let mut counts = vec![0u64; net.edge_count()];
        for position in &self.positions {
            if let Position::EdgePoint { edge, .. } = position {
                counts[*edge] += 1;
            }
        }
        counts
    }

    /// The size bound `|V| + |E| * ceil(1/epsilon)` the sampled set is
    /// measured against.
    pub fn size_bound(&self, net: &DynamicNetwork) -> u64 {
        net.vertex_count() as u64 + net.edge_count() as u64 * self.epsilon.inverse_ceil()
    }

    /// Every k-subset of the candidates as a [`SinkSet`], in lexicographic
    /// order of candidate indices. When `k` exceeds the candidate count the
    /// single full set is yielded instead; extra sinks cannot help and sink
    /// sets are sets.
    pub fn k_subsets(&self, k: usize) -> Box<dyn Iterator<Item = SinkSet> + '_> {
        if k >= self.positions.len() {
            let full = SinkSet::from_canonical(self.positions.clone());
            return Box::new(std::iter::once(full));
        }
        Box::new(crate::combinatorics::k_subsets(self.positions.len(), k).map(
            move |indices| {
                SinkSet::from_canonical(indices.iter().map(|&i| self.positions[i]).collect())
            },
        ))
    }
}
