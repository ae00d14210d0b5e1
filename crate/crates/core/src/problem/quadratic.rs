//! Random strictly convex quadratic problems over a given graph.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Objective, SubproblemSpec};
use crate::graph::BipartiteGraph;

/// Added to every diagonal so each `Q_i` is positive definite.
const RIDGE: f64 = 0.1;

/// One quadratic per subproblem with `Q_i = BᵀB + 0.1·I`, `B` and `c`
/// uniform on `[-1, 1]`.
pub fn random_quadratic(g: &BipartiteGraph, seed: u64) -> Vec<SubproblemSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..g.num_subproblems())
        .map(|i| {
            let slots = g.neighbors(i).to_vec();
            let n = slots.len();
            let b: Vec<f64> = (0..n * n).map(|_| rng.random_range(-1.0..=1.0)).collect();
            let mut q = alloc::vec![0.0; n * n];
            for r in 0..n {
                for c in 0..n {
                    let mut s = if r == c { RIDGE } else { 0.0 };
                    for k in 0..n {
                        s += b[k * n + r] * b[k * n + c];
                    }
                    q[r * n + c] = s;
                }
            }
            // Symmetrize exactly; the two triangles can differ in rounding.
            for r in 0..n {
                for c in 0..r {
                    q[c * n + r] = q[r * n + c];
                }
            }
            let c = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
            SubproblemSpec::new(slots, Objective::Quadratic { q, c })
        })
        .collect()
}
