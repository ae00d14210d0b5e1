//! Heavy-connectivity coarsening.
//!
//! Vertices are visited in random order and paired with the unmatched
//! neighbor they share the most connectivity with, where a hyperedge `e`
//! contributes `w_e / (|e| - 1)`. A vertex whose neighbors are all matched
//! joins the best neighbor's cluster instead, as long as the cluster stays
//! under the weight cap.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use crate::graph::Hypergraph;

/// Hyperedges larger than this are only sampled around the vertex.
const LARGE_EDGE: usize = 16;
const LARGE_EDGE_WINDOW: usize = 8;

const UNSET: u32 = u32::MAX;

/// One coarsening step: the coarse hypergraph and the fine-to-coarse map.
pub(crate) fn coarsen(h: &Hypergraph, rng: &mut ChaCha8Rng, max_weight: u64) -> (Hypergraph, Vec<u32>) {
    let n = h.num_vertices();
    let mut cluster = alloc::vec![UNSET; n];
    let mut cluster_weight: Vec<u64> = Vec::new();
    let mut rating = alloc::vec![0.0f64; n];
    let mut touched: Vec<u32> = Vec::new();

    let mut order: Vec<u32> = (0..n as u32).collect();
    order.shuffle(rng);

    for &v in &order {
        let v = v as usize;
        if cluster[v] != UNSET {
            continue;
        }
        for &e in h.incident(v) {
            let pins = h.pins(e as usize);
            let size = pins.len();
            if size < 2 {
                continue;
            }
            let r = h.edge_weight(e as usize) as f64 / (size - 1) as f64;
            let mut rate = |u: u32| {
                if u as usize != v {
                    if rating[u as usize] == 0.0 {
                        touched.push(u);
                    }
                    rating[u as usize] += r;
                }
            };
            if size <= LARGE_EDGE {
                pins.iter().for_each(|&u| rate(u));
            } else {
                let at = pins.binary_search(&(v as u32)).unwrap_or(0);
                for k in 1..=LARGE_EDGE_WINDOW {
                    rate(pins[(at + k) % size]);
                }
            }
        }

        let wv = h.vertex_weight(v);
        let mut best_free: Option<(f64, u32)> = None;
        let mut best_joined: Option<(f64, u32)> = None;
        for &u in &touched {
            let ui = u as usize;
            let r = rating[ui];
            rating[ui] = 0.0;
            if cluster[ui] == UNSET {
                if wv + h.vertex_weight(ui) <= max_weight
                    && best_free.is_none_or(|(b, bu)| r > b || (r == b && u < bu))
                {
                    best_free = Some((r, u));
                }
            } else if wv + cluster_weight[cluster[ui] as usize] <= max_weight
                && best_joined.is_none_or(|(b, bu)| r > b || (r == b && u < bu))
            {
                best_joined = Some((r, u));
            }
        }
        touched.clear();

        if let Some((_, u)) = best_free {
            let c = cluster_weight.len() as u32;
            cluster[v] = c;
            cluster[u as usize] = c;
            cluster_weight.push(wv + h.vertex_weight(u as usize));
        } else if let Some((_, u)) = best_joined {
            let c = cluster[u as usize];
            cluster[v] = c;
            cluster_weight[c as usize] += wv;
        } else {
            cluster[v] = cluster_weight.len() as u32;
            cluster_weight.push(wv);
        }
    }

    let coarse = contract(h, &cluster, cluster_weight);
    (coarse, cluster)
}

/// Builds the quotient hypergraph: pins mapped through `cluster`, single-pin
/// hyperedges dropped, identical hyperedges merged with summed weights.
pub(crate) fn contract(h: &Hypergraph, cluster: &[u32], cluster_weight: Vec<u64>) -> Hypergraph {
    let mut offsets = alloc::vec![0usize];
    let mut pins: Vec<u32> = Vec::with_capacity(h.num_pins());
    let mut weights: Vec<u64> = Vec::new();
    let mut hashes: Vec<u64> = Vec::new();
    for e in 0..h.num_hyperedges() {
        let start = pins.len();
        pins.extend(h.pins(e).iter().map(|&p| cluster[p as usize]));
        let row = &mut pins[start..];
        row.sort_unstable();
        let mut len = 0;
        for k in 0..row.len() {
            if k == 0 || row[k] != row[len - 1] {
                row[len] = row[k];
                len += 1;
            }
        }
        pins.truncate(start + len);
        if len < 2 {
            pins.truncate(start);
            continue;
        }
        hashes.push(hash_pins(&pins[start..]));
        weights.push(h.edge_weight(e));
        offsets.push(pins.len());
    }

    let m = weights.len();
    let row = |k: usize| &pins[offsets[k]..offsets[k + 1]];
    let mut order: Vec<u32> = (0..m as u32).collect();
    order.sort_unstable_by(|&a, &b| {
        let (a, b) = (a as usize, b as usize);
        hashes[a].cmp(&hashes[b]).then_with(|| row(a).cmp(row(b))).then(a.cmp(&b))
    });

    let mut keep = alloc::vec![true; m];
    let mut merged = weights.clone();
    let mut k = 0;
    while k < m {
        let first = order[k] as usize;
        let mut j = k + 1;
        while j < m && hashes[order[j] as usize] == hashes[first] && row(order[j] as usize) == row(first) {
            merged[first] += weights[order[j] as usize];
            keep[order[j] as usize] = false;
            j += 1;
        }
        k = j;
    }

    let mut out_offsets = alloc::vec![0usize];
    let mut out_pins = Vec::with_capacity(pins.len());
    let mut out_weights = Vec::new();
    for e in 0..m {
        if keep[e] {
            out_pins.extend_from_slice(row(e));
            out_offsets.push(out_pins.len());
            out_weights.push(merged[e]);
        }
    }
    Hypergraph::from_parts(cluster_weight, out_weights, out_offsets, out_pins)
}

fn hash_pins(pins: &[u32]) -> u64 {
    let mut x = 0xcbf2_9ce4_8422_2325u64 ^ pins.len() as u64;
    for &p in pins {
        x ^= p as u64;
        x = x.wrapping_mul(0x0000_0100_0000_01b3).rotate_left(17);
    }
    x
}
