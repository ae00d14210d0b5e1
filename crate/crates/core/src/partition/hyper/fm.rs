//! Two-way Fiduccia–Mattheyses refinement with gain buckets.
//!
//! The objective is the weighted cut (hyperedges with pins on both sides),
//! which is half the sum of external degrees of a bisection.

use alloc::vec::Vec;

use crate::graph::Hypergraph;

const NIL: u32 = u32::MAX;

/// Doubly linked gain buckets over a fixed vertex universe.
struct GainBuckets {
    offset: i64,
    head: Vec<u32>,
    next: Vec<u32>,
    prev: Vec<u32>,
    key: Vec<i64>,
    present: Vec<bool>,
    top: usize,
}

impl GainBuckets {
    fn new(n: usize, max_gain: i64) -> Self {
        Self {
            offset: max_gain,
            head: alloc::vec![NIL; (2 * max_gain + 1) as usize],
            next: alloc::vec![NIL; n],
            prev: alloc::vec![NIL; n],
            key: alloc::vec![0; n],
            present: alloc::vec![false; n],
            top: 0,
        }
    }

    #[inline]
    fn slot(&self, gain: i64) -> usize {
        (gain + self.offset) as usize
    }

    fn insert(&mut self, v: u32, gain: i64) {
        let s = self.slot(gain);
        let vi = v as usize;
        self.key[vi] = gain;
        self.present[vi] = true;
        self.prev[vi] = NIL;
        self.next[vi] = self.head[s];
        if self.head[s] != NIL {
            self.prev[self.head[s] as usize] = v;
        }
        self.head[s] = v;
        if s > self.top {
            self.top = s;
        }
    }

    fn remove(&mut self, v: u32) {
        let vi = v as usize;
        debug_assert!(self.present[vi]);
        let s = self.slot(self.key[vi]);
        let (p, n) = (self.prev[vi], self.next[vi]);
        if p != NIL {
            self.next[p as usize] = n;
        } else {
            self.head[s] = n;
        }
        if n != NIL {
            self.prev[n as usize] = p;
        }
        self.present[vi] = false;
    }

    fn update(&mut self, v: u32, delta: i64) {
        if delta == 0 || !self.present[v as usize] {
            return;
        }
        let g = self.key[v as usize] + delta;
        self.remove(v);
        self.insert(v, g);
    }

    /// Highest-gain vertex accepted by `fits`, scanning at most `limit`
    /// candidates.
    fn best(&mut self, mut fits: impl FnMut(u32) -> bool, limit: usize) -> Option<(u32, i64)> {
        while self.top > 0 && self.head[self.top] == NIL {
            self.top -= 1;
        }
        let mut seen = 0;
        let mut s = self.top as isize;
        while s >= 0 {
            let mut v = self.head[s as usize];
            while v != NIL {
                if fits(v) {
                    return Some((v, self.key[v as usize]));
                }
                seen += 1;
                if seen >= limit {
                    return None;
                }
                v = self.next[v as usize];
            }
            s -= 1;
        }
        None
    }
}

/// Mutable two-way partition state of a hypergraph.
pub(crate) struct Bisection<'a> {
    h: &'a Hypergraph,
    pub(crate) side: Vec<u8>,
    counts: Vec<[u32; 2]>,
    pub(crate) weight: [u64; 2],
    cap: [u64; 2],
}

impl<'a> Bisection<'a> {
    pub(crate) fn new(h: &'a Hypergraph, side: Vec<u8>, cap: [u64; 2]) -> Self {
        let mut counts = alloc::vec![[0u32; 2]; h.num_hyperedges()];
        let mut weight = [0u64; 2];
        for v in 0..h.num_vertices() {
            let s = side[v] as usize;
            weight[s] += h.vertex_weight(v);
            for &e in h.incident(v) {
                counts[e as usize][s] += 1;
            }
        }
        Self { h, side, counts, weight, cap }
    }

    /// Weighted number of hyperedges with pins on both sides.
    pub(crate) fn cut(&self) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, c)| c[0] > 0 && c[1] > 0)
            .map(|(e, _)| self.h.edge_weight(e))
            .sum()
    }

    pub(crate) fn overload(&self) -> u64 {
        self.weight[0].saturating_sub(self.cap[0]) + self.weight[1].saturating_sub(self.cap[1])
    }

    fn gain(&self, v: usize) -> i64 {
        let from = self.side[v] as usize;
        let to = 1 - from;
        let mut g = 0i64;
        for &e in self.h.incident(v) {
            let c = self.counts[e as usize];
            let w = self.h.edge_weight(e as usize) as i64;
            if c[from] == 1 {
                g += w;
            }
            if c[to] == 0 {
                g -= w;
            }
        }
        g
    }

    fn flip(&mut self, v: usize) {
        let from = self.side[v] as usize;
        let to = 1 - from;
        let w = self.h.vertex_weight(v);
        self.weight[from] -= w;
        self.weight[to] += w;
        self.side[v] = to as u8;
        for &e in self.h.incident(v) {
            let c = &mut self.counts[e as usize];
            c[from] -= 1;
            c[to] += 1;
        }
    }

    /// Moves `v` and applies the delta gains to unlocked neighbors.
    fn apply_move(&mut self, v: usize, locked: &[bool], buckets: &mut [GainBuckets; 2]) {
        let from = self.side[v] as usize;
        let to = 1 - from;
        let h = self.h;
        for &e in h.incident(v) {
            let e = e as usize;
            let w = h.edge_weight(e) as i64;
            let pins = h.pins(e);
            let c = self.counts[e];
            if c[to] == 0 {
                for &u in pins {
                    if u as usize != v && !locked[u as usize] {
                        buckets[from].update(u, w);
                    }
                }
            } else if c[to] == 1 {
                if let Some(&u) = pins.iter().find(|&&u| self.side[u as usize] as usize == to) {
                    if !locked[u as usize] {
                        buckets[to].update(u, -w);
                    }
                }
            }
            let left = c[from] - 1;
            if left == 0 {
                for &u in pins {
                    if u as usize != v && !locked[u as usize] {
                        buckets[to].update(u, -w);
                    }
                }
            } else if left == 1 {
                if let Some(&u) =
                    pins.iter().find(|&&u| u as usize != v && self.side[u as usize] as usize == from)
                {
                    if !locked[u as usize] {
                        buckets[from].update(u, w);
                    }
                }
            }
        }
        self.flip(v);
    }

    /// One FM pass. Returns the cut reduction kept after rolling back to the
    /// best prefix (overload first, then cut).
    fn pass(&mut self, stall_limit: usize) -> (u64, u64) {
        let h = self.h;
        let n = h.num_vertices();
        let max_gain = (0..n)
            .map(|v| h.incident(v).iter().map(|&e| h.edge_weight(e as usize)).sum::<u64>())
            .max()
            .unwrap_or(0) as i64;
        let mut buckets = [GainBuckets::new(n, max_gain), GainBuckets::new(n, max_gain)];
        // A move may overshoot a cap by one vertex so that tight bounds can
        // still be traded across; rollback only keeps balanced prefixes when
        // the pass started balanced.
        let tolerance = (0..n).map(|v| h.vertex_weight(v)).max().unwrap_or(0);
        for v in 0..n {
            buckets[self.side[v] as usize].insert(v as u32, self.gain(v));
        }
        let mut locked = alloc::vec![false; n];
        let mut moves: Vec<u32> = Vec::new();

        let start_cut = self.cut() as i64;
        let start_overload = self.overload();
        let mut cut = start_cut;
        let (mut best_cut, mut best_overload, mut best_len) = (cut, start_overload, 0usize);

        loop {
            let mut pick: Option<(u32, i64)> = None;
            for from in 0..2 {
                let to = 1 - from;
                let (wt, cap) = (self.weight[to], self.cap[to]);
                let over_from = self.weight[from] > self.cap[from];
                let cand = buckets[from].best(
                    |v| {
                        let w = h.vertex_weight(v as usize);
                        wt + w <= cap + tolerance || (over_from && wt + w < self.weight[from])
                    },
                    64,
                );
                if let Some((v, g)) = cand {
                    let better = match pick {
                        None => true,
                        Some((_, pg)) => g > pg || (g == pg && self.weight[from] > self.weight[to]),
                    };
                    if better {
                        pick = Some((v, g));
                    }
                }
            }
            let Some((v, g)) = pick else { break };
            let vi = v as usize;
            buckets[self.side[vi] as usize].remove(v);
            locked[vi] = true;
            self.apply_move(vi, &locked, &mut buckets);
            cut -= g;
            moves.push(v);

            let overload = self.overload();
            if (overload, cut) < (best_overload, best_cut) {
                best_cut = cut;
                best_overload = overload;
                best_len = moves.len();
            }
            if moves.len() - best_len > stall_limit {
                break;
            }
        }
        for &v in moves[best_len..].iter().rev() {
            self.flip(v as usize);
        }
        debug_assert_eq!(self.cut() as i64, best_cut);
        ((start_cut - best_cut) as u64, start_overload - best_overload)
    }

    /// Runs passes until `passes` consecutive passes bring no improvement.
    pub(crate) fn refine(&mut self, passes: usize, max_passes: usize) {
        let n = self.h.num_vertices();
        let stall_limit = (n / 100).clamp(100, 1000);
        let mut quiet = 0;
        let mut total = 0;
        while quiet < passes && total < max_passes {
            let (gain, relief) = self.pass(stall_limit);
            total += 1;
            if gain > 0 || relief > 0 {
                quiet = 0;
            } else {
                quiet += 1;
            }
        }
    }
}
