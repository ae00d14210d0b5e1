use alloc::string::ToString;
use alloc::vec::Vec;

use super::{AdmmConfig, AdmmError, RunReport, StepReport, StopRule};
use crate::graph::BipartiteGraph;
use crate::math;
use crate::partition::Assignment;
use crate::problem::SubproblemSpec;

/// Residuals of one consensus vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residuals {
    pub primal: f64,
    pub dual: f64,
    pub converged: bool,
}

/// `primal = sqrt(Σ (copy − X)²)`, `dual = ρ·sqrt(N)·|X − X_prev|`;
/// converged when both are below their tolerances.
pub fn check_local_convergence(
    copies: &[f64],
    value: f64,
    prev_value: f64,
    rho: f64,
    eps_primal: f64,
    eps_dual: f64,
) -> Residuals {
    let primal = math::sqrt(copies.iter().map(|c| (c - value) * (c - value)).sum());
    let dual = rho * math::sqrt(copies.len() as f64) * (value - prev_value).abs();
    Residuals { primal, dual, converged: primal < eps_primal && dual < eps_dual }
}

/// Where a replica of a vertex lives: machine and index in its store.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Loc {
    machine: u16,
    index: u32,
}

/// Replica directory for one vertex kind. Vertex `v` has replicas
/// `reps[offsets[v]..offsets[v + 1]]`, master first; each replica holds
/// `width(v)` consecutive values in its machine's store.
#[derive(Debug, Clone)]
struct Replicas {
    offsets: Vec<usize>,
    reps: Vec<Loc>,
    stores: Vec<Vec<f64>>,
}

impl Replicas {
    fn build(
        count: usize,
        machines: usize,
        width: impl Fn(usize) -> usize,
        set: impl Fn(usize) -> crate::partition::MachineSet,
        master: impl Fn(usize) -> usize,
    ) -> Self {
        let mut fill = alloc::vec![0usize; machines];
        let mut offsets = Vec::with_capacity(count + 1);
        let mut reps = Vec::new();
        offsets.push(0);
        for v in 0..count {
            let w = width(v);
            let m0 = master(v);
            let others = set(v).iter().filter(|&m| m != m0);
            for m in core::iter::once(m0).chain(others) {
                reps.push(Loc { machine: m as u16, index: fill[m] as u32 });
                fill[m] += w;
            }
            offsets.push(reps.len());
        }
        let stores = fill.iter().map(|&n| alloc::vec![0.0; n]).collect();
        Self { offsets, reps, stores }
    }

    fn of(&self, v: usize) -> &[Loc] {
        &self.reps[self.offsets[v]..self.offsets[v + 1]]
    }

    fn find(&self, v: usize, machine: usize) -> Loc {
        *self
            .of(v)
            .iter()
            .find(|l| l.machine as usize == machine)
            .expect("edge machine holds a replica of both endpoints")
    }

    fn slice(&self, loc: Loc, width: usize) -> &[f64] {
        let i = loc.index as usize;
        &self.stores[loc.machine as usize][i..i + width]
    }

    fn master(&self, v: usize, width: usize) -> &[f64] {
        self.slice(self.of(v)[0], width)
    }

    /// Writes `values` to every replica of `v`; returns the mirror count.
    fn sync(&mut self, v: usize, values: &[f64]) -> u64 {
        let (start, end) = (self.offsets[v], self.offsets[v + 1]);
        for r in start..end {
            let loc = self.reps[r];
            let i = loc.index as usize;
            self.stores[loc.machine as usize][i..i + values.len()].copy_from_slice(values);
        }
        (end - start - 1) as u64
    }

    fn consistent(&self, v: usize, width: usize) -> bool {
        let master = self.master(v, width);
        self.of(v)[1..].iter().all(|&loc| self.slice(loc, width) == master)
    }
}

/// Simulated cluster executing the ADMM vertex programs.
#[derive(Debug, Clone)]
pub struct ClusterState {
    graph: BipartiteGraph,
    assignment: Assignment,
    specs: Vec<SubproblemSpec>,
    config: AdmmConfig,
    step: u64,

    /// `x_i` copies, width `deg(i)`.
    sub: Replicas,
    /// `X_l` copies, width 1.
    con: Replicas,
    /// Per edge: the replica of its subproblem on the edge's machine.
    edge_sub: Vec<Loc>,
    /// Per edge: the replica of its consensus on the edge's machine.
    edge_con: Vec<Loc>,

    // Subproblem master state, indexed by edge id.
    lambda: Vec<f64>,
    snapshot: Vec<f64>,
    active: Vec<bool>,

    // Consensus master state.
    prev_value: Vec<f64>,
    primal: Vec<f64>,
    dual: Vec<f64>,
    converged: Vec<bool>,

    machine_payload: Vec<u64>,
    cum_payload: u64,
}

/// Sets up replicas and zeroes every iterate.
pub fn build_cluster(
    graph: &BipartiteGraph,
    assignment: &Assignment,
    specs: &[SubproblemSpec],
    config: AdmmConfig,
) -> Result<ClusterState, AdmmError> {
    config.validate()?;
    if specs.len() != graph.num_subproblems() {
        return Err(AdmmError::SizeMismatch { expected: graph.num_subproblems(), got: specs.len() });
    }
    if !assignment.matches(graph) {
        return Err(AdmmError::AssignmentMismatch);
    }
    for (i, spec) in specs.iter().enumerate() {
        spec.validate(i).map_err(|e| AdmmError::Spec { subproblem: i, reason: e.to_string() })?;
        if spec.slots.as_slice() != graph.neighbors(i) {
            return Err(AdmmError::Spec {
                subproblem: i,
                reason: "slots differ from the graph's consensus neighbors".to_string(),
            });
        }
    }

    let machines = assignment.machines();
    let sub = Replicas::build(
        graph.num_subproblems(),
        machines,
        |i| graph.subproblem_degree(i),
        |i| assignment.subproblem_replicas(i),
        |i| assignment.subproblem_master(i),
    );
    let con = Replicas::build(
        graph.num_consensus(),
        machines,
        |_| 1,
        |l| assignment.consensus_replicas(l),
        |l| assignment.consensus_master(l),
    );
    let mut edge_sub = Vec::with_capacity(graph.num_edges());
    let mut edge_con = Vec::with_capacity(graph.num_edges());
    for (e, i, l) in graph.edges() {
        let m = assignment.edge_owner(e);
        let base = sub.find(i, m);
        let slot = (e - graph.edge_range(i).start) as u32;
        edge_sub.push(Loc { machine: base.machine, index: base.index + slot });
        edge_con.push(con.find(l, m));
    }

    let n_e = graph.num_edges();
    let n_c = graph.num_consensus();
    Ok(ClusterState {
        graph: graph.clone(),
        assignment: assignment.clone(),
        specs: specs.to_vec(),
        config,
        step: 0,
        sub,
        con,
        edge_sub,
        edge_con,
        lambda: alloc::vec![0.0; n_e],
        snapshot: alloc::vec![0.0; n_e],
        active: alloc::vec![true; graph.num_subproblems()],
        prev_value: alloc::vec![0.0; n_c],
        primal: alloc::vec![0.0; n_c],
        dual: alloc::vec![0.0; n_c],
        converged: alloc::vec![false; n_c],
        machine_payload: alloc::vec![0; machines],
        cum_payload: 0,
    })
}

impl ClusterState {
    /// One bulk-synchronous superstep.
    pub fn superstep(&mut self) -> Result<StepReport, AdmmError> {
        self.step += 1;
        let rho = self.config.rho;
        let g = &self.graph;
        let mut payload = 0u64;
        let mut touched = alloc::vec![false; g.num_consensus()];
        let mut x = Vec::new();
        let mut active_count = 0;

        // Subproblems: gather, apply, sync mirrors.
        for i in 0..g.num_subproblems() {
            if !self.active[i] {
                continue;
            }
            active_count += 1;
            let range = g.edge_range(i);
            for e in range.clone() {
                let loc = self.edge_con[e];
                self.snapshot[e] = self.con.stores[loc.machine as usize][loc.index as usize];
            }
            // Dual step for the previous solve against the freshly averaged
            // consensus, then the proximal step.
            let prev = self.sub.master(i, range.len());
            for (k, e) in range.clone().enumerate() {
                self.lambda[e] += rho * (prev[k] - self.snapshot[e]);
            }
            x.clear();
            x.resize(range.len(), 0.0);
            self.specs[i].prox(&self.lambda[range.clone()], &self.snapshot[range.clone()], rho, &mut x);
            if x.iter().any(|v| !v.is_finite()) {
                return Err(AdmmError::Divergence { subproblem: i, step: self.step });
            }
            let mirrors = self.sub.sync(i, &x);
            payload += mirrors;
            self.machine_payload[self.assignment.subproblem_master(i)] += mirrors;
            for &l in g.neighbors(i) {
                touched[l as usize] = true;
            }
        }

        // Consensus vertices: average copies in ascending subproblem order.
        let mut copies = Vec::new();
        let mut updated = 0;
        for l in 0..g.num_consensus() {
            if !touched[l] {
                continue;
            }
            updated += 1;
            copies.clear();
            for r in g.consensus_neighbors(l) {
                let loc = self.edge_sub[g.edge_id(*r)];
                copies.push(self.sub.stores[loc.machine as usize][loc.index as usize]);
            }
            let sum: f64 = copies.iter().sum();
            let value = sum / copies.len() as f64;
            let prev = self.con.master(l, 1)[0];
            let res = check_local_convergence(
                &copies,
                value,
                prev,
                rho,
                self.config.eps_primal,
                self.config.eps_dual,
            );
            self.prev_value[l] = prev;
            self.primal[l] = res.primal;
            self.dual[l] = res.dual;
            self.converged[l] = res.converged;
            let mirrors = self.con.sync(l, &[value]);
            payload += mirrors;
            self.machine_payload[self.assignment.consensus_master(l)] += mirrors;
        }

        // Scatter: unconverged consensus vertices notify their neighbors.
        for i in 0..g.num_subproblems() {
            self.active[i] =
                !self.config.local_convergence || g.neighbors(i).iter().any(|&l| !self.converged[l as usize]);
        }

        self.cum_payload += payload;
        Ok(StepReport {
            iter: self.step,
            active_subproblems: active_count,
            updated_consensus: updated,
            frac_converged: self.fraction_converged(),
            max_primal: self.primal.iter().fold(0.0, |m, &v| m.max(v)),
            max_dual: self.dual.iter().fold(0.0, |m, &v| m.max(v)),
            payload,
            cum_payload: self.cum_payload,
        })
    }

    /// Supersteps until `stop` holds or `max_iters` more steps ran.
    pub fn run(&mut self, max_iters: u64, stop: StopRule) -> Result<RunReport, AdmmError> {
        if max_iters == 0 {
            return Err(AdmmError::Config("max_iters must be >= 1"));
        }
        let mut steps = Vec::new();
        let mut stopped = false;
        for _ in 0..max_iters {
            let report = self.superstep()?;
            steps.push(report);
            stopped = match stop {
                StopRule::Full => self.converged.iter().all(|&c| c),
                StopRule::Fraction(p) => report.frac_converged >= p,
            };
            if stopped {
                break;
            }
        }
        Ok(RunReport {
            steps,
            stopped,
            objective: self.objective(),
            machine_payload: self.machine_payload.clone(),
        })
    }

    pub fn fraction_converged(&self) -> f64 {
        let n = self.converged.len();
        if n == 0 {
            return 1.0;
        }
        self.converged.iter().filter(|&&c| c).count() as f64 / n as f64
    }

    /// `Σ_i φ_i(x_i)` at the master copies.
    pub fn objective(&self) -> f64 {
        (0..self.graph.num_subproblems()).map(|i| self.specs[i].value(self.subproblem_x(i))).sum()
    }

    /// Mirror synchronizations charged to each machine so far.
    pub fn comm_report(&self) -> &[u64] {
        &self.machine_payload
    }

    pub fn cum_payload(&self) -> u64 {
        self.cum_payload
    }

    pub fn iteration(&self) -> u64 {
        self.step
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }

    pub fn assignment(&self) -> &Assignment {
        &self.assignment
    }

    pub fn config(&self) -> &AdmmConfig {
        &self.config
    }

    pub fn specs(&self) -> &[SubproblemSpec] {
        &self.specs
    }

    pub fn subproblem_x(&self, i: usize) -> &[f64] {
        self.sub.master(i, self.graph.subproblem_degree(i))
    }

    pub fn subproblem_lambda(&self, i: usize) -> &[f64] {
        &self.lambda[self.graph.edge_range(i)]
    }

    /// `X̂_i` as gathered in the last superstep that ran subproblem `i`.
    pub fn subproblem_snapshot(&self, i: usize) -> &[f64] {
        &self.snapshot[self.graph.edge_range(i)]
    }

    pub fn is_active(&self, i: usize) -> bool {
        self.active[i]
    }

    pub fn consensus_value(&self, l: usize) -> f64 {
        self.con.master(l, 1)[0]
    }

    pub fn consensus_values(&self) -> Vec<f64> {
        (0..self.graph.num_consensus()).map(|l| self.consensus_value(l)).collect()
    }

    pub fn consensus_residuals(&self, l: usize) -> Residuals {
        Residuals { primal: self.primal[l], dual: self.dual[l], converged: self.converged[l] }
    }

    /// Number of replicas (master plus mirrors) of consensus `l`.
    pub fn consensus_replica_count(&self, l: usize) -> usize {
        self.con.of(l).len()
    }

    pub fn subproblem_replica_count(&self, i: usize) -> usize {
        self.sub.of(i).len()
    }

    /// Whether every mirror holds its master's value.
    pub fn mirrors_consistent(&self) -> bool {
        (0..self.graph.num_subproblems()).all(|i| self.sub.consistent(i, self.graph.subproblem_degree(i)))
            && (0..self.graph.num_consensus()).all(|l| self.con.consistent(l, 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{partition_random, Scheme};
    use crate::problem::Objective;
    use alloc::vec;

    fn toy() -> (BipartiteGraph, Vec<SubproblemSpec>) {
        // φ1 = (x − 1)², φ2 = (x − 3)² sharing one consensus variable.
        let g = BipartiteGraph::from_adjacency(1, vec![vec![0], vec![0]]).unwrap();
        let spec =
            |t: f64| SubproblemSpec::new(vec![0], Objective::Quadratic { q: vec![2.0], c: vec![-2.0 * t] });
        (g, vec![spec(1.0), spec(3.0)])
    }

    #[test]
    fn starts_at_zero() {
        let (g, specs) = toy();
        let a = Assignment::from_edge_owners(&g, 2, Scheme::Random, vec![0, 1]).unwrap();
        let c = build_cluster(&g, &a, &specs, AdmmConfig::default()).unwrap();
        assert_eq!(c.iteration(), 0);
        assert_eq!(c.consensus_value(0), 0.0);
        assert_eq!(c.subproblem_x(1), &[0.0]);
        assert_eq!(c.consensus_replica_count(0), 2);
        assert!(c.mirrors_consistent());
    }

    #[test]
    fn toy_converges_to_mean() {
        let (g, specs) = toy();
        let a = partition_random(&g, 2, 1).unwrap();
        let config = AdmmConfig { eps_primal: 1e-8, eps_dual: 1e-8, ..AdmmConfig::default() };
        let mut c = build_cluster(&g, &a, &specs, config).unwrap();
        let report = c.run(200, StopRule::Full).unwrap();
        assert!(report.stopped);
        assert!((c.consensus_value(0) - 2.0).abs() < 1e-6);
        assert_eq!(report.final_fraction(), 1.0);
    }

    #[test]
    fn size_mismatch() {
        let (g, specs) = toy();
        let a = partition_random(&g, 1, 0).unwrap();
        assert!(matches!(
            build_cluster(&g, &a, &specs[..1], AdmmConfig::default()),
            Err(AdmmError::SizeMismatch { expected: 2, got: 1 })
        ));
        let other = BipartiteGraph::from_adjacency(1, vec![vec![0], vec![0], vec![0]]).unwrap();
        let b = partition_random(&other, 1, 0).unwrap();
        assert_eq!(
            build_cluster(&g, &b, &specs, AdmmConfig::default()).unwrap_err(),
            AdmmError::AssignmentMismatch
        );
    }

    #[test]
    fn residual_hand_case() {
        let r = check_local_convergence(&[0.0, 1.0], 0.5, 0.5, 1.0, 1e-4, 1e-4);
        assert!((r.primal - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(r.dual, 0.0);
        assert!(!r.converged);
        let r = check_local_convergence(&[0.3, 0.3], 0.3, 0.3, 1.0, 1e-4, 1e-4);
        assert!(r.converged);
    }

    #[test]
    fn fixed_point_is_stable() {
        let (g, specs) = toy();
        let a = partition_random(&g, 2, 3).unwrap();
        let mut c = build_cluster(&g, &a, &specs, AdmmConfig::default()).unwrap();
        c.run(500, StopRule::Full).unwrap();
        let before = (c.consensus_values(), c.subproblem_x(0).to_vec());
        let step = c.superstep().unwrap();
        assert_eq!(step.active_subproblems, 0);
        assert_eq!(step.payload, 0);
        assert_eq!((c.consensus_values(), c.subproblem_x(0).to_vec()), before);
    }

    #[test]
    fn divergence_is_reported() {
        let (g, mut specs) = toy();
        // With a vanishing ρ the linear term overflows the proximal step.
        specs[1] = SubproblemSpec::new(vec![0], Objective::Quadratic { q: vec![0.0], c: vec![-1e10] });
        let a = partition_random(&g, 1, 0).unwrap();
        let config = AdmmConfig { rho: 1e-300, ..AdmmConfig::default() };
        let mut c = build_cluster(&g, &a, &specs, config).unwrap();
        let result = c.superstep();
        assert!(matches!(result, Err(AdmmError::Divergence { subproblem: 1, .. })));
    }
}
