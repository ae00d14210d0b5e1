use alloc::vec::Vec;

use super::{check_machines, Assignment, MachineSet, PartitionError, Scheme};
use crate::graph::BipartiteGraph;

/// Sequential greedy vertex cut. Edges are visited in edge id order
/// (ascending subproblem, then slot) and placed by the first matching rule:
///
/// 1. neither endpoint placed: the least loaded machine;
/// 2. one endpoint placed: the least loaded machine of that endpoint;
/// 3. replica sets intersect: the least loaded machine of the intersection;
/// 4. disjoint: the least loaded machine of the endpoint with more
///    unassigned edges (both sets on a tie).
///
/// Load is the number of edges placed so far; ties go to the lowest id.
pub fn partition_greedy(g: &BipartiteGraph, machines: usize) -> Result<Assignment, PartitionError> {
    check_machines(machines)?;
    let mut loads = alloc::vec![0u64; machines];
    let mut sub_set = alloc::vec![MachineSet::EMPTY; g.num_subproblems()];
    let mut con_set = alloc::vec![MachineSet::EMPTY; g.num_consensus()];
    let mut sub_left: Vec<u32> = (0..g.num_subproblems()).map(|i| g.subproblem_degree(i) as u32).collect();
    let mut con_left: Vec<u32> = (0..g.num_consensus()).map(|l| g.consensus_degree(l) as u32).collect();
    let all = MachineSet::all(machines);

    let mut owners = Vec::with_capacity(g.num_edges());
    for (_, i, l) in g.edges() {
        let (a, b) = (sub_set[i], con_set[l]);
        let candidates = match (a.is_empty(), b.is_empty()) {
            (true, true) => all,
            (false, true) => a,
            (true, false) => b,
            (false, false) => {
                let both = a.intersection(b);
                if !both.is_empty() {
                    both
                } else if sub_left[i] > con_left[l] {
                    a
                } else if con_left[l] > sub_left[i] {
                    b
                } else {
                    a.union(b)
                }
            }
        };
        let m = least_loaded(candidates, &loads);
        loads[m] += 1;
        sub_set[i].insert(m);
        con_set[l].insert(m);
        sub_left[i] -= 1;
        con_left[l] -= 1;
        owners.push(m as u16);
    }
    Assignment::from_edge_owners(g, machines, Scheme::Greedy, owners)
}

fn least_loaded(candidates: MachineSet, loads: &[u64]) -> usize {
    let mut best = usize::MAX;
    let mut best_load = u64::MAX;
    for m in candidates.iter() {
        if loads[m] < best_load {
            best = m;
            best_load = loads[m];
        }
    }
    best
}
