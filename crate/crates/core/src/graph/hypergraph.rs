use alloc::vec::Vec;

use super::{BipartiteGraph, GraphError};

/// Hypergraph view `H = (S, E_h)`: subproblems are vertices, every
/// consensus variable is a hyperedge over its subproblem neighbors.
///
/// Vertex and hyperedge weights are unit for views of a bipartite graph;
/// coarsened hypergraphs inside the partitioner carry accumulated weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    vertex_weights: Vec<u64>,
    edge_weights: Vec<u64>,
    edge_offsets: Vec<usize>,
    pins: Vec<u32>,
    vertex_offsets: Vec<usize>,
    incidence: Vec<u32>,
}

impl Hypergraph {
    /// Unit-weight hypergraph. Pins are sorted; every hyperedge needs at
    /// least two distinct in-range pins.
    pub fn new(num_vertices: usize, hyperedges: Vec<Vec<u32>>) -> Result<Self, GraphError> {
        let mut offsets = Vec::with_capacity(hyperedges.len() + 1);
        let mut pins = Vec::new();
        offsets.push(0);
        for (e, mut edge) in hyperedges.into_iter().enumerate() {
            edge.sort_unstable();
            if let Some(&v) = edge.iter().find(|&&v| v as usize >= num_vertices) {
                return Err(GraphError::VertexOutOfRange { hyperedge: e, vertex: v });
            }
            if edge.windows(2).any(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge { subproblem: e, consensus: edge[0] });
            }
            if edge.len() < 2 {
                return Err(GraphError::SmallHyperedge { hyperedge: e, pins: edge.len() });
            }
            pins.extend_from_slice(&edge);
            offsets.push(pins.len());
        }
        let edge_count = offsets.len() - 1;
        Ok(Self::from_parts(alloc::vec![1; num_vertices], alloc::vec![1; edge_count], offsets, pins))
    }

    /// Assembles a weighted hypergraph from flat pin lists. Callers guarantee
    /// sorted, distinct, in-range pins.
    pub(crate) fn from_parts(
        vertex_weights: Vec<u64>,
        edge_weights: Vec<u64>,
        edge_offsets: Vec<usize>,
        pins: Vec<u32>,
    ) -> Self {
        let n = vertex_weights.len();
        let mut degree = alloc::vec![0usize; n];
        for &v in &pins {
            degree[v as usize] += 1;
        }
        let mut vertex_offsets = Vec::with_capacity(n + 1);
        vertex_offsets.push(0);
        for &d in &degree {
            vertex_offsets.push(vertex_offsets.last().unwrap() + d);
        }
        let mut cursor = vertex_offsets[..n].to_vec();
        let mut incidence = alloc::vec![0u32; pins.len()];
        for e in 0..edge_offsets.len() - 1 {
            for &v in &pins[edge_offsets[e]..edge_offsets[e + 1]] {
                incidence[cursor[v as usize]] = e as u32;
                cursor[v as usize] += 1;
            }
        }
        Self { vertex_weights, edge_weights, edge_offsets, pins, vertex_offsets, incidence }
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.vertex_weights.len()
    }

    #[inline]
    pub fn num_hyperedges(&self) -> usize {
        self.edge_offsets.len() - 1
    }

    #[inline]
    pub fn num_pins(&self) -> usize {
        self.pins.len()
    }

    #[inline]
    pub fn pins(&self, e: usize) -> &[u32] {
        &self.pins[self.edge_offsets[e]..self.edge_offsets[e + 1]]
    }

    /// Hyperedges incident to `v`, ascending.
    #[inline]
    pub fn incident(&self, v: usize) -> &[u32] {
        &self.incidence[self.vertex_offsets[v]..self.vertex_offsets[v + 1]]
    }

    #[inline]
    pub fn vertex_weight(&self, v: usize) -> u64 {
        self.vertex_weights[v]
    }

    #[inline]
    pub fn edge_weight(&self, e: usize) -> u64 {
        self.edge_weights[e]
    }

    pub fn total_vertex_weight(&self) -> u64 {
        self.vertex_weights.iter().sum()
    }

    /// Back to the bipartite form: vertex `v` becomes subproblem `v` whose
    /// consensus neighbors are its incident hyperedges.
    pub fn to_bipartite(&self) -> Result<BipartiteGraph, GraphError> {
        let adjacency = (0..self.num_vertices()).map(|v| self.incident(v).to_vec()).collect();
        BipartiteGraph::from_adjacency(self.num_hyperedges(), adjacency)
    }
}

/// Consensus `l` becomes hyperedge `l` over its subproblem neighbors.
pub fn to_hypergraph(g: &BipartiteGraph) -> Hypergraph {
    let mut offsets = Vec::with_capacity(g.num_consensus() + 1);
    let mut pins = Vec::with_capacity(g.num_edges());
    offsets.push(0);
    for l in 0..g.num_consensus() {
        pins.extend(g.consensus_neighbors(l).iter().map(|r| r.subproblem));
        offsets.push(pins.len());
    }
    Hypergraph::from_parts(
        alloc::vec![1; g.num_subproblems()],
        alloc::vec![1; g.num_consensus()],
        offsets,
        pins,
    )
}
