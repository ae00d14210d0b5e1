//! Initial bisection of the coarsest hypergraph by greedy region growing.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::fm::Bisection;
use crate::graph::Hypergraph;

/// Grows side 0 breadth-first from a random vertex until it holds `target`
/// weight; everything else is side 1.
pub(crate) fn grow(h: &Hypergraph, target: u64, rng: &mut ChaCha8Rng) -> Vec<u8> {
    let n = h.num_vertices();
    let mut side = alloc::vec![1u8; n];
    if n == 0 {
        return side;
    }
    let mut queued = alloc::vec![false; n];
    let mut queue = VecDeque::new();
    let mut edge_done = alloc::vec![false; h.num_hyperedges()];
    let mut weight = 0u64;
    let mut remaining = n;

    while weight < target && remaining > 0 {
        if queue.is_empty() {
            // Restart from a random unvisited vertex.
            let mut v = rng.random_range(0..n);
            while queued[v] {
                v = (v + 1) % n;
            }
            queued[v] = true;
            queue.push_back(v as u32);
        }
        let v = queue.pop_front().unwrap() as usize;
        remaining -= 1;
        let w = h.vertex_weight(v);
        if weight + w > target && weight > 0 {
            continue;
        }
        side[v] = 0;
        weight += w;
        for &e in h.incident(v) {
            if core::mem::replace(&mut edge_done[e as usize], true) {
                continue;
            }
            for &u in h.pins(e as usize) {
                if !queued[u as usize] {
                    queued[u as usize] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    side
}

/// Best of `runs` grown and refined bisections, ranked by (overload, cut).
pub(crate) fn initial_bisection(
    h: &Hypergraph,
    target: u64,
    cap: [u64; 2],
    runs: usize,
    passes: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<u8> {
    let mut best: Option<((u64, u64), Vec<u8>)> = None;
    for _ in 0..runs.max(1) {
        let side = grow(h, target, rng);
        let mut b = Bisection::new(h, side, cap);
        b.refine(passes, 32);
        let score = (b.overload(), b.cut());
        if best.as_ref().is_none_or(|(s, _)| score < *s) {
            best = Some((score, b.side));
        }
    }
    best.unwrap().1
}
