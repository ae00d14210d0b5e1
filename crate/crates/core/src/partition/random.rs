use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_machines, Assignment, PartitionError, Scheme};
use crate::graph::BipartiteGraph;
use crate::math;

/// Places every edge on a uniformly random machine, independently.
pub fn partition_random(
    g: &BipartiteGraph,
    machines: usize,
    seed: u64,
) -> Result<Assignment, PartitionError> {
    check_machines(machines)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let owners = (0..g.num_edges()).map(|_| rng.random_range(0..machines) as u16).collect();
    Assignment::from_edge_owners(g, machines, Scheme::Random, owners)
}

/// Expected replication factor of [`partition_random`] on `g`, averaging
/// over placements only:
/// `(M/|V|) Σ_v (1 - (1 - 1/M)^deg(v))`.
pub fn expected_rf_random(g: &BipartiteGraph, machines: usize) -> f64 {
    let n = g.num_vertices();
    if n == 0 {
        return 1.0;
    }
    let m = machines as f64;
    let keep = 1.0 - 1.0 / m;
    let touched = |d: usize| 1.0 - math::powi(keep, d as u32);
    let sum: f64 = (0..g.num_consensus())
        .map(|l| touched(g.consensus_degree(l)))
        .chain((0..g.num_subproblems()).map(|i| touched(g.subproblem_degree(i))))
        .sum();
    m * sum / n as f64
}
