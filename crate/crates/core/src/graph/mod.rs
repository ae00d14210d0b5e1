//! Bipartite computation graph `G(S, C, E)`.
//!
//! Subproblems are numbered `0..|S|`, consensus variables `0..|C|`. The
//! adjacency list of subproblem `i` is the local-to-global slot map: slot `j`
//! of `x_i` is a copy of consensus variable `neighbors(i)[j]`. Lists are kept
//! in ascending consensus id order, so the slot layout is canonical.
//!
//! Edge ids are positions in the flattened adjacency: subproblem 0's slots
//! first, then subproblem 1's, and so on.

use alloc::vec::Vec;
use core::ops::Range;

mod generate;
mod hypergraph;
mod stats;

pub use generate::{generate_bipartite, GeneratorConfig, DEFAULT_MAX_DEGREE_CAP};
pub use hypergraph::{to_hypergraph, Hypergraph};
pub use stats::{degree_stats, DegreeStats};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GraphError {
    #[error("subproblem {subproblem} references consensus {consensus}, but only {num_consensus} exist")]
    ConsensusOutOfRange { subproblem: usize, consensus: u32, num_consensus: usize },
    #[error("duplicate edge between subproblem {subproblem} and consensus {consensus}")]
    DuplicateEdge { subproblem: usize, consensus: u32 },
    #[error("subproblem {subproblem} has no consensus neighbors")]
    EmptySubproblem { subproblem: usize },
    #[error("consensus {consensus} has degree {degree}, at least 2 required")]
    LowConsensusDegree { consensus: usize, degree: usize },
    #[error("hyperedge {hyperedge} has {pins} pins, at least 2 required")]
    SmallHyperedge { hyperedge: usize, pins: usize },
    #[error("vertex {vertex} out of range in hyperedge {hyperedge}")]
    VertexOutOfRange { hyperedge: usize, vertex: u32 },
    #[error("invalid generator config: {0}")]
    InvalidConfig(&'static str),
    #[error("could not match degree sums within {samples} subproblem samples")]
    DegreeSumMismatch { samples: usize },
    #[error("duplicate-edge repair left {duplicates} duplicates after {rounds} swap rounds")]
    RepairFailed { rounds: usize, duplicates: usize },
}

/// One endpoint record in the consensus-side adjacency: `slot` is the
/// position of the consensus variable inside `x_subproblem`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRef {
    pub subproblem: u32,
    pub slot: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    num_consensus: usize,
    sub_offsets: Vec<usize>,
    sub_targets: Vec<u32>,
    con_offsets: Vec<usize>,
    con_sources: Vec<EdgeRef>,
}

impl BipartiteGraph {
    /// Builds a graph from per-subproblem consensus lists. Each list is
    /// sorted; the degree floors and simplicity are validated.
    pub fn from_adjacency(num_consensus: usize, mut adjacency: Vec<Vec<u32>>) -> Result<Self, GraphError> {
        let total: usize = adjacency.iter().map(Vec::len).sum();
        let mut sub_offsets = Vec::with_capacity(adjacency.len() + 1);
        let mut sub_targets = Vec::with_capacity(total);
        sub_offsets.push(0);
        for list in adjacency.iter_mut() {
            list.sort_unstable();
            sub_targets.extend_from_slice(list);
            sub_offsets.push(sub_targets.len());
        }
        Self::from_csr(num_consensus, sub_offsets, sub_targets)
    }

    /// Builds from an already flattened, per-row sorted adjacency.
    pub(crate) fn from_csr(
        num_consensus: usize,
        sub_offsets: Vec<usize>,
        sub_targets: Vec<u32>,
    ) -> Result<Self, GraphError> {
        let num_sub = sub_offsets.len() - 1;
        let mut con_degree = alloc::vec![0usize; num_consensus];
        for i in 0..num_sub {
            let row = &sub_targets[sub_offsets[i]..sub_offsets[i + 1]];
            if row.is_empty() {
                return Err(GraphError::EmptySubproblem { subproblem: i });
            }
            for (k, &l) in row.iter().enumerate() {
                if l as usize >= num_consensus {
                    return Err(GraphError::ConsensusOutOfRange {
                        subproblem: i,
                        consensus: l,
                        num_consensus,
                    });
                }
                if k > 0 && row[k - 1] >= l {
                    return Err(GraphError::DuplicateEdge { subproblem: i, consensus: l });
                }
                con_degree[l as usize] += 1;
            }
        }
        if let Some((l, &d)) = con_degree.iter().enumerate().find(|(_, &d)| d < 2) {
            return Err(GraphError::LowConsensusDegree { consensus: l, degree: d });
        }

        let mut con_offsets = Vec::with_capacity(num_consensus + 1);
        con_offsets.push(0);
        for &d in &con_degree {
            con_offsets.push(con_offsets.last().unwrap() + d);
        }
        let mut cursor = con_offsets[..num_consensus].to_vec();
        let mut con_sources = alloc::vec![EdgeRef { subproblem: 0, slot: 0 }; sub_targets.len()];
        // Walking subproblems in ascending order leaves every consensus list
        // sorted by subproblem id.
        for i in 0..num_sub {
            for (j, &l) in sub_targets[sub_offsets[i]..sub_offsets[i + 1]].iter().enumerate() {
                let at = &mut cursor[l as usize];
                con_sources[*at] = EdgeRef { subproblem: i as u32, slot: j as u32 };
                *at += 1;
            }
        }

        Ok(Self { num_consensus, sub_offsets, sub_targets, con_offsets, con_sources })
    }

    pub fn empty() -> Self {
        Self {
            num_consensus: 0,
            sub_offsets: alloc::vec![0],
            sub_targets: Vec::new(),
            con_offsets: alloc::vec![0],
            con_sources: Vec::new(),
        }
    }

    #[inline]
    pub fn num_subproblems(&self) -> usize {
        self.sub_offsets.len() - 1
    }

    #[inline]
    pub fn num_consensus(&self) -> usize {
        self.num_consensus
    }

    /// `|S| + |C|`.
    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.num_subproblems() + self.num_consensus
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.sub_targets.len()
    }

    /// Consensus ids of subproblem `i`, in slot order.
    #[inline]
    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.sub_targets[self.sub_offsets[i]..self.sub_offsets[i + 1]]
    }

    /// Edge ids owned by subproblem `i`; `edge_range(i).start + j` is slot `j`.
    #[inline]
    pub fn edge_range(&self, i: usize) -> Range<usize> {
        self.sub_offsets[i]..self.sub_offsets[i + 1]
    }

    /// Local copies of consensus `l`, sorted by subproblem id.
    #[inline]
    pub fn consensus_neighbors(&self, l: usize) -> &[EdgeRef] {
        &self.con_sources[self.con_offsets[l]..self.con_offsets[l + 1]]
    }

    #[inline]
    pub fn edge_id(&self, r: EdgeRef) -> usize {
        self.sub_offsets[r.subproblem as usize] + r.slot as usize
    }

    #[inline]
    pub fn subproblem_degree(&self, i: usize) -> usize {
        self.sub_offsets[i + 1] - self.sub_offsets[i]
    }

    /// `N_l`, the number of local copies of consensus `l`.
    #[inline]
    pub fn consensus_degree(&self, l: usize) -> usize {
        self.con_offsets[l + 1] - self.con_offsets[l]
    }

    /// `(edge id, subproblem, consensus)` in edge id order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.num_subproblems())
            .flat_map(move |i| self.edge_range(i).map(move |e| (e, i, self.sub_targets[e] as usize)))
    }

    /// Owned copy of the per-subproblem adjacency lists.
    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        (0..self.num_subproblems()).map(|i| self.neighbors(i).to_vec()).collect()
    }

    /// Flat consensus target of every edge, indexed by edge id.
    #[inline]
    pub fn edge_targets(&self) -> &[u32] {
        &self.sub_targets
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    pub(crate) fn star() -> BipartiteGraph {
        BipartiteGraph::from_adjacency(1, vec![vec![0], vec![0], vec![0]]).unwrap()
    }

    #[test]
    fn star_structure() {
        let g = star();
        assert_eq!(g.num_subproblems(), 3);
        assert_eq!(g.num_consensus(), 1);
        assert_eq!(g.num_edges(), 3);
        assert_eq!(g.consensus_degree(0), 3);
        let subs: Vec<u32> = g.consensus_neighbors(0).iter().map(|r| r.subproblem).collect();
        assert_eq!(subs, vec![0, 1, 2]);
    }

    #[test]
    fn reverse_adjacency_is_transpose() {
        let g = BipartiteGraph::from_adjacency(3, vec![vec![2, 0], vec![1, 2], vec![0, 1, 2]]).unwrap();
        assert_eq!(g.neighbors(0), &[0, 2]);
        for l in 0..3 {
            for r in g.consensus_neighbors(l) {
                assert_eq!(g.neighbors(r.subproblem as usize)[r.slot as usize] as usize, l);
            }
        }
        let total: usize = (0..3).map(|l| g.consensus_degree(l)).sum();
        assert_eq!(total, g.num_edges());
    }

    #[test]
    fn rejects_low_consensus_degree() {
        let err = BipartiteGraph::from_adjacency(2, vec![vec![0, 1], vec![0]]).unwrap_err();
        assert_eq!(err, GraphError::LowConsensusDegree { consensus: 1, degree: 1 });
    }

    #[test]
    fn rejects_duplicates_and_empty_rows() {
        let err = BipartiteGraph::from_adjacency(1, vec![vec![0, 0], vec![0]]).unwrap_err();
        assert!(matches!(err, GraphError::DuplicateEdge { subproblem: 0, consensus: 0 }));
        let err = BipartiteGraph::from_adjacency(1, vec![vec![0], vec![], vec![0]]).unwrap_err();
        assert_eq!(err, GraphError::EmptySubproblem { subproblem: 1 });
        let err = BipartiteGraph::from_adjacency(1, vec![vec![0], vec![3]]).unwrap_err();
        assert!(matches!(err, GraphError::ConsensusOutOfRange { consensus: 3, .. }));
    }

    #[test]
    fn edge_ids_follow_slots() {
        let g = BipartiteGraph::from_adjacency(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 0, 0), (1, 0, 1), (2, 1, 0), (3, 1, 1)]);
        for l in 0..2 {
            for &r in g.consensus_neighbors(l) {
                assert_eq!(g.edge_targets()[g.edge_id(r)] as usize, l);
            }
        }
    }
}
