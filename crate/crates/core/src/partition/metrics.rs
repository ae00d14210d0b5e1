use super::{Assignment, Scheme};
use crate::graph::BipartiteGraph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionMetrics {
    pub scheme: Scheme,
    pub machines: usize,
    /// `(1/|V|) Σ_v |A(v)|`.
    pub replication_factor: f64,
    /// Sum of external degrees over the parts induced by subproblem
    /// placement. Only defined when no subproblem is replicated.
    pub soed: Option<u64>,
    /// Hyperedges (consensus nodes) spanning more than one machine.
    pub cut_hyperedges: u64,
    pub max_edges: usize,
    pub min_edges: usize,
    pub max_subproblems: usize,
    pub min_subproblems: usize,
    /// Heaviest machine relative to the mean: subproblem counts for
    /// hypergraph placements, edge counts otherwise.
    pub imbalance: f64,
}

impl PartitionMetrics {
    /// Whether the placement satisfies the `beta` load bound it is judged by.
    pub fn within(&self, beta: f64) -> bool {
        self.imbalance <= beta + 1e-12
    }
}

pub fn metrics(g: &BipartiteGraph, a: &Assignment) -> PartitionMetrics {
    let m = a.machines();
    let mut edges = alloc::vec![0usize; m];
    for &owner in a.edge_owners() {
        edges[owner as usize] += 1;
    }
    let mut subs = alloc::vec![0usize; m];
    let mut uncut = true;
    for i in 0..g.num_subproblems() {
        subs[a.subproblem_master(i)] += 1;
        uncut &= a.subproblem_replicas(i).len() <= 1;
    }

    let mut soed = 0u64;
    let mut cut = 0u64;
    for l in 0..g.num_consensus() {
        let k = a.consensus_replicas(l).len() as u64;
        if k > 1 {
            soed += k;
            cut += 1;
        }
    }

    let n = g.num_vertices();
    let replication_factor = if n == 0 { 1.0 } else { a.total_replicas() as f64 / n as f64 };
    let ratio = |counts: &[usize], total: usize| {
        if total == 0 {
            1.0
        } else {
            *counts.iter().max().unwrap() as f64 * m as f64 / total as f64
        }
    };
    let imbalance = if a.scheme() == Scheme::Hyper {
        ratio(&subs, g.num_subproblems())
    } else {
        ratio(&edges, g.num_edges())
    };

    PartitionMetrics {
        scheme: a.scheme(),
        machines: m,
        replication_factor,
        soed: uncut.then_some(soed),
        cut_hyperedges: cut,
        max_edges: *edges.iter().max().unwrap(),
        min_edges: *edges.iter().min().unwrap(),
        max_subproblems: *subs.iter().max().unwrap(),
        min_subproblems: *subs.iter().min().unwrap(),
        imbalance,
    }
}
