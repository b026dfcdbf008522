//! Seeded random graphs with bounded degeneracy.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::VertexId;

/// Builds a random graph on `n` vertices whose degeneracy is at most `k`.
///
/// Vertices are added one at a time; each new vertex picks a uniform count
/// in `1..=min(k, existing)` of distinct earlier vertices to attach to, so
/// the reversed insertion order witnesses the degeneracy bound. Labels are
/// shuffled afterwards to destroy the construction order. Deterministic in
/// `seed`; `k = 0` yields the edgeless graph and `k = 1` a forest.
pub fn random_k_degenerate(n: usize, k: usize, seed: u64) -> Graph {
    assert!(n >= 1, "need at least one vertex");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for i in 1..n {
        let cap = k.min(i);
        if cap == 0 {
            continue;
        }
        let count = rng.random_range(1..=cap);
        for p in sample_distinct(&mut rng, i, count) {
            edges.push((p as VertexId, i as VertexId));
        }
    }
    let mut label: Vec<VertexId> = (0..n as VertexId).collect();
    label.shuffle(&mut rng);
    let relabeled: Vec<_> = edges
        .iter()
        .map(|&(u, v)| (label[u as usize], label[v as usize]))
        .collect();
    Graph::from_edges(n, &relabeled).expect("generator produces valid simple edges")
}

/// Floyd's algorithm: `count` distinct values sampled uniformly from
/// `0..bound`, returned in ascending order.
fn sample_distinct<R: Rng>(rng: &mut R, bound: usize, count: usize) -> Vec<usize> {
    debug_assert!(count <= bound);
    let mut chosen = BTreeSet::new();
    for j in bound - count..bound {
        let t = rng.random_range(0..=j);
        if !chosen.insert(t) {
            chosen.insert(j);
        }
    }
    chosen.into_iter().collect()
}
