//! ADMM consensus optimization as bulk-synchronous vertex programs over a
//! simulated vertex-cut cluster.
//!
//! The crate is `no_std` (it needs `alloc`). Everything touching files,
//! clocks or the command line lives in the `aco` companion crate.
//!
//! * [`graph`]: the bipartite subproblem/consensus graph, its hypergraph
//!   view and the power-law/Poisson generator.
//! * [`partition`]: random, greedy and multilevel hypergraph vertex cuts and
//!   the metrics that compare them.
//! * [`problem`]: subproblem objectives, their proximal operators and the
//!   voter-model grounding.
//! * [`admm`]: the gather-apply-scatter engine with local convergence and
//!   communication accounting.

#![no_std]
// `!(x > 0.0)` rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod admm;
pub mod graph;
pub mod partition;
pub mod problem;

mod math;

pub use admm::{build_cluster, AdmmConfig, AdmmError, ClusterState, RunReport, StepReport, StopRule};
pub use graph::{
    degree_stats, generate_bipartite, to_hypergraph, BipartiteGraph, DegreeStats, GeneratorConfig,
    GraphError, Hypergraph,
};
pub use partition::{
    expected_rf_random, fm_refine, metrics, partition_greedy, partition_hyper, partition_random, Assignment,
    MachineSet, PartitionError, PartitionMetrics, Scheme,
};
pub use problem::{
    ground_voter_model, random_quadratic, HingePower, Objective, ProblemError, SubproblemSpec, VoterConfig,
    VoterInstance,
};
