//! Vertex-cut placement of a bipartite graph onto `M` simulated machines.
//!
//! Every edge lives on exactly one machine; a vertex is replicated on each
//! machine that owns one of its edges. One replica per vertex is the master.

use alloc::vec::Vec;
use core::fmt;

use crate::graph::{BipartiteGraph, Hypergraph};

mod greedy;
mod hyper;
mod metrics;
mod random;

pub use greedy::partition_greedy;
pub use hyper::{fm_refine, partition_hyper, soed_of_parts, HyperConfig};
pub use metrics::{metrics, PartitionMetrics};
pub use random::{expected_rf_random, partition_random};

/// Largest cluster a [`MachineSet`] can describe.
pub const MAX_MACHINES: usize = 64;

/// Default imbalance factor for the hypergraph scheme.
pub const DEFAULT_BETA: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PartitionError {
    #[error("machine count must be in 1..={max}, got {machines}")]
    MachineCount { machines: usize, max: usize },
    #[error("imbalance factor must be >= 1, got {0}")]
    Beta(f64),
    #[error("infeasible balance: {machines} machines, {subproblems} subproblems, beta {beta}")]
    InfeasibleBalance { machines: usize, subproblems: usize, beta: f64 },
    #[error("assignment covers {got} edges, graph has {expected}")]
    EdgeCount { expected: usize, got: usize },
    #[error("edge {edge} placed on machine {machine}, only {machines} exist")]
    MachineOutOfRange { edge: usize, machine: u16, machines: usize },
    #[error("assignment has {got} subproblem parts, hypergraph has {expected} vertices")]
    PartCount { expected: usize, got: usize },
    #[error("subproblem {0} is replicated; hypergraph placements keep subproblems whole")]
    ReplicatedSubproblem(usize),
    #[error("unknown scheme {0:?}")]
    UnknownScheme(alloc::string::String),
}

pub(crate) fn check_machines(machines: usize) -> Result<(), PartitionError> {
    if machines == 0 || machines > MAX_MACHINES {
        return Err(PartitionError::MachineCount { machines, max: MAX_MACHINES });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    Random,
    Greedy,
    Hyper,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Random, Scheme::Greedy, Scheme::Hyper];

    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Random => "random",
            Scheme::Greedy => "greedy",
            Scheme::Hyper => "hyper",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Scheme {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" => Ok(Scheme::Random),
            "greedy" => Ok(Scheme::Greedy),
            "hyper" => Ok(Scheme::Hyper),
            other => Err(PartitionError::UnknownScheme(other.into())),
        }
    }
}

/// Set of machine ids below [`MAX_MACHINES`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct MachineSet(u64);

impl MachineSet {
    pub const EMPTY: MachineSet = MachineSet(0);

    #[inline]
    pub fn single(m: usize) -> Self {
        MachineSet(1 << m)
    }

    /// `{0, .., machines - 1}`.
    #[inline]
    pub fn all(machines: usize) -> Self {
        if machines >= 64 {
            MachineSet(u64::MAX)
        } else {
            MachineSet((1u64 << machines) - 1)
        }
    }

    #[inline]
    pub fn insert(&mut self, m: usize) {
        self.0 |= 1 << m;
    }

    #[inline]
    pub fn contains(self, m: usize) -> bool {
        self.0 >> m & 1 == 1
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        MachineSet(self.0 & other.0)
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        MachineSet(self.0 | other.0)
    }

    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Machine ids in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let m = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(m)
        })
    }
}

/// Edge placement plus the replica sets and masters it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    machines: usize,
    scheme: Scheme,
    edge_owner: Vec<u16>,
    sub_replicas: Vec<MachineSet>,
    con_replicas: Vec<MachineSet>,
    sub_master: Vec<u16>,
    con_master: Vec<u16>,
}

impl Assignment {
    /// Derives replicas from an edge placement. Masters are the lowest
    /// replica id, except that hypergraph placements put each consensus
    /// master on the machine holding most of its edges.
    pub fn from_edge_owners(
        g: &BipartiteGraph,
        machines: usize,
        scheme: Scheme,
        edge_owner: Vec<u16>,
    ) -> Result<Self, PartitionError> {
        check_machines(machines)?;
        if edge_owner.len() != g.num_edges() {
            return Err(PartitionError::EdgeCount { expected: g.num_edges(), got: edge_owner.len() });
        }
        if let Some((edge, &machine)) = edge_owner.iter().enumerate().find(|(_, &m)| m as usize >= machines) {
            return Err(PartitionError::MachineOutOfRange { edge, machine, machines });
        }

        let mut sub_replicas = alloc::vec![MachineSet::EMPTY; g.num_subproblems()];
        let mut con_replicas = alloc::vec![MachineSet::EMPTY; g.num_consensus()];
        for (e, i, l) in g.edges() {
            let m = edge_owner[e] as usize;
            sub_replicas[i].insert(m);
            con_replicas[l].insert(m);
        }
        let lowest = |s: &MachineSet| s.first().unwrap_or(0) as u16;
        let sub_master = sub_replicas.iter().map(lowest).collect();
        let con_master = if scheme == Scheme::Hyper {
            let mut counts = alloc::vec![0u32; machines];
            (0..g.num_consensus())
                .map(|l| {
                    counts.iter_mut().for_each(|c| *c = 0);
                    for &r in g.consensus_neighbors(l) {
                        counts[edge_owner[g.edge_id(r)] as usize] += 1;
                    }
                    plurality(&counts)
                })
                .collect()
        } else {
            con_replicas.iter().map(lowest).collect()
        };

        Ok(Self { machines, scheme, edge_owner, sub_replicas, con_replicas, sub_master, con_master })
    }

    /// Placement of whole subproblems: every edge of vertex `v` goes to
    /// `parts[v]`. Edge ids follow the bipartite form of `h`.
    pub fn from_hyper_parts(
        h: &Hypergraph,
        machines: usize,
        parts: Vec<u16>,
    ) -> Result<Self, PartitionError> {
        check_machines(machines)?;
        if parts.len() != h.num_vertices() {
            return Err(PartitionError::PartCount { expected: h.num_vertices(), got: parts.len() });
        }
        let mut edge_owner = Vec::with_capacity(h.num_pins());
        let mut sub_replicas = Vec::with_capacity(h.num_vertices());
        for (v, &p) in parts.iter().enumerate() {
            if p as usize >= machines {
                return Err(PartitionError::MachineOutOfRange {
                    edge: edge_owner.len(),
                    machine: p,
                    machines,
                });
            }
            let incident = h.incident(v).len();
            edge_owner.extend(core::iter::repeat_n(p, incident));
            sub_replicas.push(if incident > 0 { MachineSet::single(p as usize) } else { MachineSet::EMPTY });
        }
        let mut counts = alloc::vec![0u32; machines];
        let mut con_replicas = Vec::with_capacity(h.num_hyperedges());
        let mut con_master = Vec::with_capacity(h.num_hyperedges());
        for e in 0..h.num_hyperedges() {
            counts.iter_mut().for_each(|c| *c = 0);
            let mut set = MachineSet::EMPTY;
            for &v in h.pins(e) {
                let p = parts[v as usize] as usize;
                counts[p] += 1;
                set.insert(p);
            }
            con_replicas.push(set);
            con_master.push(plurality(&counts));
        }
        Ok(Self {
            machines,
            scheme: Scheme::Hyper,
            edge_owner,
            sub_replicas,
            con_replicas,
            sub_master: parts,
            con_master,
        })
    }

    /// Machine of every subproblem, for placements that keep subproblems
    /// whole.
    pub fn hyper_parts(&self, h: &Hypergraph) -> Result<Vec<u16>, PartitionError> {
        if self.num_subproblems() != h.num_vertices() {
            return Err(PartitionError::PartCount {
                expected: h.num_vertices(),
                got: self.num_subproblems(),
            });
        }
        if let Some(i) = self.sub_replicas.iter().position(|s| s.len() > 1) {
            return Err(PartitionError::ReplicatedSubproblem(i));
        }
        Ok(self.sub_master.clone())
    }

    #[inline]
    pub fn machines(&self) -> usize {
        self.machines
    }

    #[inline]
    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    #[inline]
    pub fn edge_owner(&self, e: usize) -> usize {
        self.edge_owner[e] as usize
    }

    #[inline]
    pub fn edge_owners(&self) -> &[u16] {
        &self.edge_owner
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.edge_owner.len()
    }

    #[inline]
    pub fn num_subproblems(&self) -> usize {
        self.sub_replicas.len()
    }

    #[inline]
    pub fn num_consensus(&self) -> usize {
        self.con_replicas.len()
    }

    /// `A(i)` for subproblem `i`.
    #[inline]
    pub fn subproblem_replicas(&self, i: usize) -> MachineSet {
        self.sub_replicas[i]
    }

    /// `A(l)` for consensus `l`.
    #[inline]
    pub fn consensus_replicas(&self, l: usize) -> MachineSet {
        self.con_replicas[l]
    }

    #[inline]
    pub fn subproblem_master(&self, i: usize) -> usize {
        self.sub_master[i] as usize
    }

    #[inline]
    pub fn consensus_master(&self, l: usize) -> usize {
        self.con_master[l] as usize
    }

    /// True when the placement has the same shape as `g`.
    pub fn matches(&self, g: &BipartiteGraph) -> bool {
        self.num_edges() == g.num_edges()
            && self.num_subproblems() == g.num_subproblems()
            && self.num_consensus() == g.num_consensus()
    }

    /// `Σ_v |A(v)|` over both sides.
    pub fn total_replicas(&self) -> usize {
        self.sub_replicas.iter().map(|s| s.len()).sum::<usize>()
            + self.con_replicas.iter().map(|s| s.len()).sum::<usize>()
    }
}

/// Index of the largest count, lowest index on ties.
pub(crate) fn plurality(counts: &[u32]) -> u16 {
    let mut best = 0;
    for (m, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = m;
        }
    }
    best as u16
}
