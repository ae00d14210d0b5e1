//! Multilevel hypergraph partitioning by recursive bisection.
//!
//! Each bisection coarsens by heavy-connectivity matching, grows and
//! refines several initial bisections of the coarsest level, then projects
//! back while running two-way FM at every level. Hyperedges cut by a
//! bisection are split between the two halves, so the recursion minimizes
//! connectivity rather than cut count.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_machines, Assignment, PartitionError};
use crate::graph::Hypergraph;
use crate::math;

mod coarsen;
mod fm;
mod initial;
mod kway;

use fm::Bisection;
use kway::KWay;

/// Coarsening stops once this few vertices remain (or at `2M`).
const COARSEST: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperConfig {
    /// Every machine holds at most `floor(beta·|S|/M)` subproblems.
    pub beta: f64,
    pub seed: u64,
    /// Initial bisections tried at the coarsest level.
    pub runs: usize,
    /// Consecutive non-improving FM passes before a level is done.
    pub passes: usize,
    /// Finish with k-way refinement of the whole partition.
    pub polish: bool,
    /// Independent partitioning attempts; the lowest SOED wins.
    pub trials: usize,
    /// Spread the imbalance over the recursion: each bisection side stays
    /// within `beta^(1/levels)` of its proportional share. When off, a side
    /// only has to fit its machines at the final cap.
    pub level_slack: bool,
}

impl HyperConfig {
    pub fn new(beta: f64, seed: u64) -> Self {
        Self { beta, seed, runs: 4, passes: 2, polish: false, trials: 1, level_slack: true }
    }
}

impl Default for HyperConfig {
    fn default() -> Self {
        Self::new(super::DEFAULT_BETA, 0)
    }
}

/// Largest subproblem count a machine may hold, after checking feasibility.
fn leaf_cap(h: &Hypergraph, machines: usize, beta: f64) -> Result<u64, PartitionError> {
    check_machines(machines)?;
    if !(beta >= 1.0) || !beta.is_finite() {
        return Err(PartitionError::Beta(beta));
    }
    let total = h.total_vertex_weight();
    let cap = math::floor(beta * total as f64 / machines as f64) as u64;
    if machines as u64 > total || cap.saturating_mul(machines as u64) < total {
        return Err(PartitionError::InfeasibleBalance { machines, subproblems: h.num_vertices(), beta });
    }
    Ok(cap)
}

/// Places every subproblem (hypergraph vertex) on one machine, minimizing
/// the sum of external degrees subject to the `beta` balance bound.
pub fn partition_hyper(
    h: &Hypergraph,
    machines: usize,
    config: &HyperConfig,
) -> Result<Assignment, PartitionError> {
    let cap = leaf_cap(h, machines, config.beta)?;
    let mut best: Option<(u64, Vec<u16>)> = None;
    if machines > 1 {
        let levels = usize::BITS - (machines - 1).leading_zeros();
        let slack = math::powf(config.beta, 1.0 / levels as f64);
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let ids: Vec<u32> = (0..h.num_vertices() as u32).collect();
        for _ in 0..config.trials.max(1) {
            let mut parts = alloc::vec![0u16; h.num_vertices()];
            let mut task = Task { config, leaf_cap: cap, slack, parts: &mut parts };
            task.split(h, &ids, machines, 0, &mut rng);
            rebalance(h, &mut parts, machines, cap);
            let mut kw = KWay::new(h, machines, parts, cap);
            if config.polish {
                kw.refine(config.passes, 16);
            }
            let soed = kw.soed();
            if best.as_ref().is_none_or(|(b, _)| soed < *b) {
                best = Some((soed, kw.part));
            }
        }
    }
    let parts = best.map_or_else(|| alloc::vec![0u16; h.num_vertices()], |(_, p)| p);
    Assignment::from_hyper_parts(h, machines, parts)
}

/// Improves a hypergraph placement by single-subproblem moves that lower the
/// SOED while keeping every machine within `floor(beta·|S|/M)` subproblems.
/// Stops after `passes` consecutive passes without improvement.
pub fn fm_refine(
    h: &Hypergraph,
    assignment: &Assignment,
    beta: f64,
    passes: usize,
) -> Result<Assignment, PartitionError> {
    let machines = assignment.machines();
    let cap = leaf_cap(h, machines, beta)?;
    let parts = assignment.hyper_parts(h)?;
    let mut kw = KWay::new(h, machines, parts, cap);
    kw.refine(passes, 64);
    Assignment::from_hyper_parts(h, machines, kw.part)
}

/// Sum of external degrees: every hyperedge spanning `λ > 1` parts
/// contributes `λ` times its weight.
pub fn soed_of_parts(h: &Hypergraph, parts: &[u16], machines: usize) -> u64 {
    KWay::new(h, machines, parts.to_vec(), u64::MAX).soed()
}

struct Task<'c, 'p> {
    config: &'c HyperConfig,
    leaf_cap: u64,
    slack: f64,
    parts: &'p mut [u16],
}

impl Task<'_, '_> {
    /// Assigns the vertices of `h` (original ids `ids`) to parts
    /// `first..first + k`.
    fn split(&mut self, h: &Hypergraph, ids: &[u32], k: usize, first: usize, rng: &mut ChaCha8Rng) {
        if k == 1 {
            for &v in ids {
                self.parts[v as usize] = first as u16;
            }
            return;
        }
        let k0 = k / 2;
        let k1 = k - k0;
        let total = h.total_vertex_weight();
        let cap_for = |ks: usize| {
            let share = total as f64 * ks as f64 / k as f64;
            let full = ks as u64 * self.leaf_cap;
            if !self.config.level_slack {
                return full;
            }
            let loose = math::floor(share * self.slack) as u64;
            loose.max(math::ceil(share) as u64).min(full)
        };
        let cap = [cap_for(k0), cap_for(k1)];
        let target = math::round(total as f64 * k0 as f64 / k as f64) as u64;

        // A last split whose side can hold everything is cut-free.
        let side = if k == 2 && total <= cap[1] {
            alloc::vec![1u8; h.num_vertices()]
        } else {
            self.bisect(h, target, cap, k, rng)
        };

        for s in 0..2u8 {
            let (sub, sub_ids) = extract(h, ids, &side, s);
            let (ks, fs) = if s == 0 { (k0, first) } else { (k1, first + k0) };
            let mut child = ChaCha8Rng::seed_from_u64(rng.random());
            self.split(&sub, &sub_ids, ks, fs, &mut child);
        }
    }

    fn bisect(&self, h: &Hypergraph, target: u64, cap: [u64; 2], k: usize, rng: &mut ChaCha8Rng) -> Vec<u8> {
        let stop = COARSEST.max(2 * k);
        let max_weight = (cap[0].min(cap[1]) / 8).max(1);
        let mut levels: Vec<(Hypergraph, Vec<u32>)> = Vec::new();
        loop {
            let current = levels.last().map_or(h, |(c, _)| c);
            let n = current.num_vertices();
            if n <= stop {
                break;
            }
            let (coarse, map) = coarsen::coarsen(current, rng, max_weight);
            if coarse.num_vertices() * 20 > n * 19 {
                break;
            }
            levels.push((coarse, map));
        }

        let coarsest = levels.last().map_or(h, |(c, _)| c);
        let cfg = self.config;
        let mut side = initial::initial_bisection(coarsest, target, cap, cfg.runs, cfg.passes, rng);
        for depth in (0..levels.len()).rev() {
            let map = &levels[depth].1;
            let finer = if depth == 0 { h } else { &levels[depth - 1].0 };
            let projected = map.iter().map(|&c| side[c as usize]).collect();
            let mut b = Bisection::new(finer, projected, cap);
            b.refine(cfg.passes, 16);
            side = b.side;
        }
        side
    }
}

/// Sub-hypergraph induced by the vertices on side `s`. Each hyperedge keeps
/// its pins on that side and is dropped when fewer than two remain.
fn extract(h: &Hypergraph, ids: &[u32], side: &[u8], s: u8) -> (Hypergraph, Vec<u32>) {
    let mut local = alloc::vec![u32::MAX; h.num_vertices()];
    let mut sub_ids = Vec::new();
    let mut weights = Vec::new();
    for v in 0..h.num_vertices() {
        if side[v] == s {
            local[v] = sub_ids.len() as u32;
            sub_ids.push(ids[v]);
            weights.push(h.vertex_weight(v));
        }
    }
    let mut offsets = alloc::vec![0usize];
    let mut pins = Vec::new();
    let mut edge_weights = Vec::new();
    for e in 0..h.num_hyperedges() {
        let start = pins.len();
        pins.extend(h.pins(e).iter().filter(|&&v| side[v as usize] == s).map(|&v| local[v as usize]));
        if pins.len() - start < 2 {
            pins.truncate(start);
        } else {
            offsets.push(pins.len());
            edge_weights.push(h.edge_weight(e));
        }
    }
    (Hypergraph::from_parts(weights, edge_weights, offsets, pins), sub_ids)
}

/// Moves vertices out of parts above `cap` into the lightest parts. Recursive
/// bisection keeps every part within the cap on unit weights, so this only
/// guards against rounding at the boundary.
fn rebalance(h: &Hypergraph, parts: &mut [u16], machines: usize, cap: u64) {
    let mut load = alloc::vec![0u64; machines];
    for v in 0..h.num_vertices() {
        load[parts[v] as usize] += h.vertex_weight(v);
    }
    for v in 0..h.num_vertices() {
        let p = parts[v] as usize;
        if load[p] <= cap {
            continue;
        }
        let lightest = (0..machines).min_by_key(|&m| (load[m], m)).unwrap();
        let w = h.vertex_weight(v);
        if load[lightest] + w <= cap {
            load[p] -= w;
            load[lightest] += w;
            parts[v] = lightest as u16;
        }
    }
}
