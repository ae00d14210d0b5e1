//! Synthetic bipartite graphs with power-law consensus degrees and
//! Poisson subproblem degrees, wired by a configuration model.

use alloc::vec::Vec;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Poisson;

use super::{BipartiteGraph, GraphError};
use crate::math;

/// Upper bound on the default power-law truncation.
pub const DEFAULT_MAX_DEGREE_CAP: usize = 100_000;

/// Subproblem degree draws allowed per consensus node before giving up on
/// matching the degree sums.
pub const SAMPLE_BUDGET_PER_CONSENSUS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorConfig {
    /// Power-law exponent of the consensus degree distribution.
    pub alpha: f64,
    /// Poisson mean of the subproblem degree distribution.
    pub lambda: f64,
    pub num_consensus: usize,
    /// Largest consensus degree the power-law sampler can return.
    pub max_degree: usize,
    pub seed: u64,
}

impl GeneratorConfig {
    /// Config with the default truncation `clamp(|C| - 1, 2, 100_000)`.
    pub fn new(alpha: f64, lambda: f64, num_consensus: usize, seed: u64) -> Self {
        Self {
            alpha,
            lambda,
            num_consensus,
            max_degree: num_consensus.saturating_sub(1).clamp(2, DEFAULT_MAX_DEGREE_CAP),
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        if !(self.alpha > 1.0) || !self.alpha.is_finite() {
            return Err(GraphError::InvalidConfig("alpha must be > 1"));
        }
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return Err(GraphError::InvalidConfig("lambda must be > 0"));
        }
        if self.num_consensus == 0 {
            return Err(GraphError::InvalidConfig("num_consensus must be >= 1"));
        }
        if self.max_degree < 2 {
            return Err(GraphError::InvalidConfig("max_degree must be >= 2"));
        }
        Ok(())
    }
}

/// Generates a simple bipartite graph; identical configs give identical
/// graphs.
pub fn generate_bipartite(cfg: &GeneratorConfig) -> Result<BipartiteGraph, GraphError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let con_degrees = sample_power_law(&mut rng, cfg.alpha, cfg.max_degree, cfg.num_consensus);
    let total: usize = con_degrees.iter().sum();
    let sub_degrees = sample_matching_poisson(
        &mut rng,
        cfg.lambda,
        total,
        SAMPLE_BUDGET_PER_CONSENSUS * cfg.num_consensus,
    )?;

    // Configuration model: shuffle the consensus stubs and deal them out to
    // subproblems in order.
    let mut stubs = Vec::with_capacity(total);
    for (l, &d) in con_degrees.iter().enumerate() {
        stubs.extend(core::iter::repeat_n(l as u32, d));
    }
    stubs.shuffle(&mut rng);

    let mut offsets = Vec::with_capacity(sub_degrees.len() + 1);
    offsets.push(0usize);
    for &d in &sub_degrees {
        offsets.push(offsets.last().unwrap() + d);
    }
    let mut targets = stubs;
    repair_duplicates(&mut rng, &offsets, &mut targets)?;
    for i in 0..sub_degrees.len() {
        targets[offsets[i]..offsets[i + 1]].sort_unstable();
    }
    BipartiteGraph::from_csr(cfg.num_consensus, offsets, targets)
}

/// Discrete inverse-CDF sampling of `P(d) ∝ d^-alpha` on `[2, max_degree]`.
fn sample_power_law(rng: &mut ChaCha8Rng, alpha: f64, max_degree: usize, n: usize) -> Vec<usize> {
    let weights = (2..=max_degree).map(|d| math::powf(d as f64, -alpha));
    let dist = WeightedIndex::new(weights).expect("power-law weights are positive");
    (0..n).map(|_| dist.sample(rng) + 2).collect()
}

/// Draws `Poisson(lambda)` degrees conditioned on `d >= 1` until their sum
/// reaches `target`; the last draw is trimmed by the overshoot.
fn sample_matching_poisson(
    rng: &mut ChaCha8Rng,
    lambda: f64,
    target: usize,
    max_samples: usize,
) -> Result<Vec<usize>, GraphError> {
    let poisson = Poisson::new(lambda).map_err(|_| GraphError::InvalidConfig("lambda must be > 0"))?;
    let mut degrees = Vec::new();
    let mut sum = 0usize;
    while sum < target {
        if degrees.len() >= max_samples {
            return Err(GraphError::DegreeSumMismatch { samples: max_samples });
        }
        let d = loop {
            let d: f64 = poisson.sample(rng);
            if d >= 1.0 {
                break d as usize;
            }
        };
        let d = d.min(target - sum);
        degrees.push(d);
        sum += d;
    }
    Ok(degrees)
}

/// Removes repeated `(i, l)` pairs by swapping the consensus endpoint with
/// a uniformly chosen edge of another subproblem. Gives up after `|E|`
/// swap attempts.
fn repair_duplicates(rng: &mut ChaCha8Rng, offsets: &[usize], targets: &mut [u32]) -> Result<(), GraphError> {
    let num_edges = targets.len();
    let mut edge_row = alloc::vec![0u32; num_edges];
    for i in 0..offsets.len() - 1 {
        edge_row[offsets[i]..offsets[i + 1]].fill(i as u32);
    }
    let mut attempts = 0usize;
    loop {
        let duplicates = find_duplicates(offsets, targets);
        if duplicates.is_empty() {
            return Ok(());
        }
        for &e in &duplicates {
            let i = edge_row[e] as usize;
            loop {
                if attempts >= num_edges {
                    let left = find_duplicates(offsets, targets).len();
                    return Err(GraphError::RepairFailed { rounds: attempts, duplicates: left });
                }
                attempts += 1;
                let other = rng.random_range(0..num_edges);
                let j = edge_row[other] as usize;
                if j == i {
                    continue;
                }
                let (t, t_other) = (targets[e], targets[other]);
                if targets[offsets[i]..offsets[i + 1]].contains(&t_other)
                    || targets[offsets[j]..offsets[j + 1]].contains(&t)
                {
                    continue;
                }
                targets.swap(e, other);
                break;
            }
        }
    }
}

/// Edge positions whose target already appeared earlier in the same row.
fn find_duplicates(offsets: &[usize], targets: &[u32]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut scratch: Vec<u32> = Vec::new();
    for i in 0..offsets.len() - 1 {
        let row = &targets[offsets[i]..offsets[i + 1]];
        if row.len() < 2 {
            continue;
        }
        scratch.clear();
        scratch.extend_from_slice(row);
        scratch.sort_unstable();
        if scratch.windows(2).all(|w| w[0] != w[1]) {
            continue;
        }
        for (k, &t) in row.iter().enumerate() {
            if row[..k].contains(&t) {
                out.push(offsets[i] + k);
            }
        }
    }
    out
}
