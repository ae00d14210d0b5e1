//! Single-vertex move refinement of an M-way partition under the SOED
//! objective.
//!
//! Candidates sit in a max-heap keyed by their best move gain. Gains of
//! neighbors across very large hyperedges are not refreshed eagerly; a popped
//! entry is re-evaluated and pushed back when its key is stale, so every
//! applied move uses its exact gain.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::graph::Hypergraph;

const EAGER_EDGE: usize = 256;

pub(crate) struct KWay<'a> {
    h: &'a Hypergraph,
    k: usize,
    pub(crate) part: Vec<u16>,
    /// Pins per part, `k` entries per hyperedge.
    counts: Vec<u32>,
    lambda: Vec<u32>,
    pub(crate) load: Vec<u64>,
    cap: u64,
}

#[inline]
fn soed_term(lambda: u32) -> i64 {
    if lambda > 1 {
        lambda as i64
    } else {
        0
    }
}

impl<'a> KWay<'a> {
    pub(crate) fn new(h: &'a Hypergraph, k: usize, part: Vec<u16>, cap: u64) -> Self {
        let mut counts = alloc::vec![0u32; h.num_hyperedges() * k];
        let mut lambda = alloc::vec![0u32; h.num_hyperedges()];
        let mut load = alloc::vec![0u64; k];
        for v in 0..h.num_vertices() {
            load[part[v] as usize] += h.vertex_weight(v);
        }
        for e in 0..h.num_hyperedges() {
            for &v in h.pins(e) {
                let c = &mut counts[e * k + part[v as usize] as usize];
                if *c == 0 {
                    lambda[e] += 1;
                }
                *c += 1;
            }
        }
        Self { h, k, part, counts, lambda, load, cap }
    }

    pub(crate) fn soed(&self) -> u64 {
        (0..self.h.num_hyperedges()).map(|e| soed_term(self.lambda[e]) as u64 * self.h.edge_weight(e)).sum()
    }

    /// SOED reduction of moving `v` to part `to`.
    fn gain(&self, v: usize, to: usize) -> i64 {
        let from = self.part[v] as usize;
        let mut g = 0;
        for &e in self.h.incident(v) {
            let e = e as usize;
            let row = &self.counts[e * self.k..(e + 1) * self.k];
            let mut l = self.lambda[e];
            if row[from] == 1 {
                l -= 1;
            }
            if row[to] == 0 {
                l += 1;
            }
            g += (soed_term(self.lambda[e]) - soed_term(l)) * self.h.edge_weight(e) as i64;
        }
        g
    }

    /// Best feasible move of `v` among parts adjacent through its hyperedges.
    fn best_move(&self, v: usize, seen: &mut [bool]) -> Option<(i64, u16)> {
        let from = self.part[v] as usize;
        let w = self.h.vertex_weight(v);
        let mut targets: Vec<usize> = Vec::new();
        for &e in self.h.incident(v) {
            let e = e as usize;
            if self.lambda[e] < 2 {
                continue;
            }
            let row = &self.counts[e * self.k..(e + 1) * self.k];
            for (p, &c) in row.iter().enumerate() {
                if c > 0 && p != from && !seen[p] && self.load[p] + w <= self.cap {
                    seen[p] = true;
                    targets.push(p);
                }
            }
        }
        let mut best: Option<(i64, u16)> = None;
        for &p in &targets {
            seen[p] = false;
            let g = self.gain(v, p);
            if best.is_none_or(|(bg, bp)| g > bg || (g == bg && (p as u16) < bp)) {
                best = Some((g, p as u16));
            }
        }
        best
    }

    fn apply(&mut self, v: usize, to: usize) {
        let from = self.part[v] as usize;
        let w = self.h.vertex_weight(v);
        self.load[from] -= w;
        self.load[to] += w;
        self.part[v] = to as u16;
        for &e in self.h.incident(v) {
            let e = e as usize;
            let row = &mut self.counts[e * self.k..(e + 1) * self.k];
            row[from] -= 1;
            if row[from] == 0 {
                self.lambda[e] -= 1;
            }
            if row[to] == 0 {
                self.lambda[e] += 1;
            }
            row[to] += 1;
        }
    }

    /// One pass; returns the SOED reduction kept after rollback.
    fn pass(&mut self, stall_limit: usize) -> u64 {
        let n = self.h.num_vertices();
        let mut seen = alloc::vec![false; self.k];
        let mut heap = BinaryHeap::new();
        for v in 0..n {
            if let Some((g, _)) = self.best_move(v, &mut seen) {
                heap.push((g, Reverse(v as u32)));
            }
        }
        let mut locked = alloc::vec![false; n];
        let mut moves: Vec<(u32, u16)> = Vec::new();
        let start = self.soed() as i64;
        let mut soed = start;
        let (mut best, mut best_len) = (start, 0usize);

        while let Some((g, Reverse(v))) = heap.pop() {
            let vi = v as usize;
            if locked[vi] {
                continue;
            }
            let Some((actual, to)) = self.best_move(vi, &mut seen) else {
                continue;
            };
            if actual != g {
                heap.push((actual, Reverse(v)));
                continue;
            }
            let from = self.part[vi];
            locked[vi] = true;
            self.apply(vi, to as usize);
            soed -= actual;
            moves.push((v, from));
            if soed < best {
                best = soed;
                best_len = moves.len();
            }
            if moves.len() - best_len > stall_limit {
                break;
            }
            for &e in self.h.incident(vi) {
                let pins = self.h.pins(e as usize);
                if pins.len() > EAGER_EDGE {
                    continue;
                }
                for &u in pins {
                    if !locked[u as usize] {
                        if let Some((gu, _)) = self.best_move(u as usize, &mut seen) {
                            heap.push((gu, Reverse(u)));
                        }
                    }
                }
            }
        }
        for &(v, from) in moves[best_len..].iter().rev() {
            self.apply(v as usize, from as usize);
        }
        debug_assert_eq!(self.soed() as i64, best);
        (start - best) as u64
    }

    /// Runs passes until `passes` consecutive passes bring no improvement.
    pub(crate) fn refine(&mut self, passes: usize, max_passes: usize) {
        let stall_limit = (self.h.num_vertices() / 100).clamp(50, 1000);
        let mut quiet = 0;
        let mut total = 0;
        while quiet < passes && total < max_passes {
            total += 1;
            if self.pass(stall_limit) > 0 {
                quiet = 0;
            } else {
                quiet += 1;
            }
        }
    }
}
