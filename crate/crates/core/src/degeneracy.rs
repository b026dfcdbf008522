//! Degeneracy ordering and the relabeled graph the enumerator consumes.
//!
//! The ordering comes from the classic smallest-last peel: repeatedly remove
//! a vertex of minimum remaining degree. The largest degree seen at removal
//! time is the degeneracy `k`, and the removal sequence has the property
//! that every vertex keeps at most `k` neighbors later in the order. Both
//! the peel and the relabeling below run in `O(n + m)`.

use crate::graph::Graph;
use crate::VertexId;

/// A vertex order in which every vertex has at most `k` later neighbors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyOrdering {
    /// Position -> original vertex id (the peel sequence).
    pub order: Vec<VertexId>,
    /// Original vertex id -> position; inverse of `order`.
    pub rank: Vec<u32>,
    /// The degeneracy: no vertex has more than `k` later neighbors, and some
    /// vertex attains `k` under every valid ordering.
    pub k: usize,
}

impl DegeneracyOrdering {
    /// Wraps an explicit order (used by tests); `order` must be a
    /// permutation of `0..n`.
    pub fn from_order(order: Vec<VertexId>, k: usize) -> Self {
        let n = order.len();
        let mut rank = vec![u32::MAX; n];
        for (pos, &v) in order.iter().enumerate() {
            assert!((v as usize) < n && rank[v as usize] == u32::MAX, "not a permutation");
            rank[v as usize] = pos as u32;
        }
        DegeneracyOrdering { order, rank, k }
    }
}

/// Peeled vertices park their rank in the degree array at or above this
/// mark, so one load answers both "peeled yet?" and "what rank?".
const PEELED: u32 = 1 << 31;

/// Everything the smallest-last peel produces in one sweep.
struct Peeled {
    order: Vec<VertexId>,
    rank: Vec<u32>,
    k: usize,
    /// Degree each vertex had when removed, by rank; at most `k`, and equal
    /// to the size of the vertex's larger-neighbor list.
    removal_degree: Vec<u32>,
    /// One entry per edge, `(rank of earlier endpoint, rank of later
    /// endpoint)`, emitted when the later endpoint is peeled. Sorted by the
    /// second component by construction. Empty unless requested.
    edge_stream: Vec<(u32, u32)>,
}

/// Smallest-last peel with a lazy bucket queue: every degree decrement
/// pushes a fresh entry onto the matching bucket stack and stale entries are
/// discarded at pop time, keeping the run linear in `n + m`. Ties break by
/// bucket recency, deterministically.
fn peel(g: &Graph, capture_edges: bool) -> Peeled {
    let n = g.n();
    let mut degree: Vec<u32> = (0..n as VertexId).map(|v| g.degree(v) as u32).collect();
    let max_degree = degree.iter().copied().max().unwrap_or(0) as usize;
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); max_degree + 1];
    // Reverse push so the first pops walk ascending ids.
    for v in (0..n as u32).rev() {
        buckets[degree[v as usize] as usize].push(v);
    }

    let mut order: Vec<VertexId> = Vec::with_capacity(n);
    let mut removal_degree: Vec<u32> = Vec::with_capacity(n);
    let mut edge_stream: Vec<(u32, u32)> =
        Vec::with_capacity(if capture_edges { g.m() } else { 0 });
    let mut k = 0usize;
    let mut cur = 0usize;
    for i in 0..n as u32 {
        let v = loop {
            match buckets[cur].pop() {
                // Stale entries: peeled or decremented since the push.
                Some(v) if degree[v as usize] as usize == cur => break v,
                Some(_) => {}
                None => cur += 1,
            }
        };
        degree[v as usize] = PEELED | i;
        k = k.max(cur);
        order.push(v);
        removal_degree.push(cur as u32);
        for &w in g.neighbors(v) {
            let d = degree[w as usize];
            if d < PEELED {
                degree[w as usize] = d - 1;
                buckets[d as usize - 1].push(w);
            } else if capture_edges {
                // w peeled earlier: in rank space this edge runs upward from
                // w's rank to i, so per first component the second ascends.
                edge_stream.push((d ^ PEELED, i));
            }
        }
        // Removing v lowers each remaining degree by at most one.
        cur = cur.saturating_sub(1);
    }

    let mut rank = vec![0u32; n];
    for (pos, &v) in order.iter().enumerate() {
        rank[v as usize] = pos as u32;
    }
    Peeled { order, rank, k, removal_degree, edge_stream }
}

/// Computes the degeneracy and a witnessing order by the smallest-last peel,
/// in `O(n + m)`.
pub fn compute_degeneracy_ordering(g: &Graph) -> DegeneracyOrdering {
    let p = peel(g, false);
    DegeneracyOrdering { order: p.order, rank: p.rank, k: p.k }
}

/// Stable counting-sort partition of `pairs` by the high bits of the first
/// component, through `buf`. Groups later counting-sort scatters so each
/// touches only a cache-sized slice of its target arrays. A no-op for small
/// vertex counts, where the targets are cache-resident anyway.
fn partition_by_first(pairs: &mut Vec<(u32, u32)>, buf: &mut Vec<(u32, u32)>, n: usize) {
    const RESIDENT_VERTICES: u32 = 12; // 2^12 vertices per partition
    if pairs.is_empty() || n <= 1 << RESIDENT_VERTICES {
        return;
    }
    if std::env::var_os("NO_PARTITION").is_some() {
        return; // experiment toggle
    }
    let bits = u32::BITS - (n as u32 - 1).leading_zeros();
    let part_bits = bits.saturating_sub(RESIDENT_VERTICES).min(10);
    if part_bits == 0 {
        return;
    }
    let shift = bits - part_bits;
    let parts = 1usize << part_bits;
    let mut bounds = vec![0u32; parts + 1];
    for &(a, _) in pairs.iter() {
        bounds[(a >> shift) as usize + 1] += 1;
    }
    for i in 0..parts {
        bounds[i + 1] += bounds[i];
    }
    buf.clear();
    buf.resize(pairs.len(), (0, 0));
    for &(a, b) in pairs.iter() {
        let slot = &mut bounds[(a >> shift) as usize];
        buf[*slot as usize] = (a, b);
        *slot += 1;
    }
    std::mem::swap(pairs, buf);
}

/// True iff `ord` is a permutation consistent with its `rank` field and
/// every vertex has at most `ord.k` neighbors later in the order.
pub fn verify_ordering(g: &Graph, ord: &DegeneracyOrdering) -> bool {
    let n = g.n();
    if ord.order.len() != n || ord.rank.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for (pos, &v) in ord.order.iter().enumerate() {
        if (v as usize) >= n || seen[v as usize] || ord.rank[v as usize] != pos as u32 {
            return false;
        }
        seen[v as usize] = true;
    }
    (0..n as VertexId).all(|u| {
        let later = g
            .neighbors(u)
            .iter()
            .filter(|&&w| ord.rank[w as usize] > ord.rank[u as usize])
            .count();
        later <= ord.k
    })
}

/// A graph relabeled by a degeneracy order, with each adjacency list split
/// into smaller and larger neighbors.
///
/// Vertex ids here are order positions, so "smaller"/"larger" is plain
/// integer comparison. Per vertex `u` the combined neighbor list is stored
/// ascending with a split point: `smaller(u)` are the neighbors below `u`
/// (arbitrarily many), `larger(u)` those above (at most `k` of them).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedGraph {
    k: usize,
    offsets: Vec<u32>,
    /// Combined CSR of neighbor lists in relabeled ids, ascending per vertex.
    adj: Vec<VertexId>,
    /// Absolute index into `adj` where the larger neighbors of each vertex start.
    split: Vec<u32>,
    /// Relabeled id -> original id.
    orig: Vec<VertexId>,
    /// For every larger-neighbor slot `q` (edge u->v with v > u), the slot of
    /// u inside `smaller(v)`. Lets the enumerator reach all cross-list
    /// occurrences of a vertex in O(1) each.
    peer_slot: Vec<u32>,
}

/// Relabels `g` by `ord` and splits every adjacency list.
///
/// Runs in `O(n + m)`: the fill loop distributes neighbors in ascending
/// relabeled order, which leaves every per-vertex list sorted without a
/// comparison sort and hands out the split points for free.
pub fn build_ordered_graph(g: &Graph, ord: &DegeneracyOrdering) -> OrderedGraph {
    debug_assert!(verify_ordering(g, ord), "ordering does not fit the graph");
    let n = g.n();
    let mut offsets = vec![0u32; n + 1];
    for pos in 0..n {
        offsets[pos + 1] = offsets[pos] + g.degree(ord.order[pos]) as u32;
    }
    let adj_len = offsets[n] as usize;
    let mut adj = vec![0 as VertexId; adj_len];
    let mut split = vec![0u32; n];
    let mut cursor: Vec<u32> = offsets[..n].to_vec();
    for b in 0..n as u32 {
        // Values arrive ascending, so when the loop reaches b every smaller
        // neighbor of b has been written and none of the larger ones: the
        // cursor is exactly b's split point.
        split[b as usize] = cursor[b as usize];
        for &w in g.neighbors(ord.order[b as usize]) {
            let a = ord.rank[w as usize] as usize;
            adj[cursor[a] as usize] = b;
            cursor[a] += 1;
        }
    }

    // Cross-links. Owners ascend, so for each target v the slots of
    // smaller(v) are consumed front to back, in step with the ascending
    // values they hold.
    let mut peer_slot = vec![u32::MAX; adj_len];
    let mut smaller_cursor: Vec<u32> = offsets[..n].to_vec();
    for w in 0..n {
        for q in split[w] as usize..offsets[w + 1] as usize {
            let v = adj[q] as usize;
            peer_slot[q] = smaller_cursor[v];
            smaller_cursor[v] += 1;
        }
    }
    debug_assert!((0..n).all(|v| smaller_cursor[v] == split[v]));

    OrderedGraph { k: ord.k, offsets, adj, split, orig: ord.order.clone(), peer_slot }
}

impl OrderedGraph {
    /// Computes a degeneracy ordering for `g` and relabels by it.
    ///
    /// Fused fast path: the peel emits every edge in rank space as it runs,
    /// already grouped for the larger-neighbor scatter, and the smaller
    /// regions plus cross-links fall out of transpose passes. Scatters run
    /// over a stable high-bits partition of their input so the written
    /// regions stay cache-resident. Produces the same graph as
    /// [`build_ordered_graph`] over [`compute_degeneracy_ordering`], in
    /// `O(n + m)` with better constants.
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.n();
        let mut p = peel(g, true);

        let mut offsets = vec![0u32; n + 1];
        let mut split = vec![0u32; n];
        for pos in 0..n {
            let deg = g.degree(p.order[pos]) as u32;
            offsets[pos + 1] = offsets[pos] + deg;
            split[pos] = offsets[pos] + (deg - p.removal_degree[pos]);
        }
        let adj_len = offsets[n] as usize;
        let mut adj = vec![0 as VertexId; adj_len];
        let mut pair_buf: Vec<(u32, u32)> = Vec::new();

        // Larger regions: the stream is sorted by second component, so each
        // owner's values arrive ascending (partitioning is stable).
        partition_by_first(&mut p.edge_stream, &mut pair_buf, n);
        let mut cursor: Vec<u32> = split.clone();
        for &(a, b) in &p.edge_stream {
            adj[cursor[a as usize] as usize] = b;
            cursor[a as usize] += 1;
        }
        debug_assert!((0..n).all(|v| cursor[v] == offsets[v + 1]));

        // Smaller regions are the transpose of the larger ones: owners
        // ascend, so each region fills front to back.
        let mut mirrored: Vec<(u32, u32)> = Vec::with_capacity(p.edge_stream.len());
        for w in 0..n as u32 {
            for q in split[w as usize] as usize..offsets[w as usize + 1] as usize {
                mirrored.push((adj[q], w));
            }
        }
        partition_by_first(&mut mirrored, &mut pair_buf, n);
        let mut smaller_cursor: Vec<u32> = offsets[..n].to_vec();
        for &(v, w) in &mirrored {
            adj[smaller_cursor[v as usize] as usize] = w;
            smaller_cursor[v as usize] += 1;
        }
        debug_assert!((0..n).all(|v| smaller_cursor[v] == split[v]));

        // Cross-links replay the same per-target slot sequence.
        let mut peer_slot = vec![u32::MAX; adj_len];
        let mut smaller_cursor: Vec<u32> = offsets[..n].to_vec();
        for w in 0..n {
            for q in split[w] as usize..offsets[w + 1] as usize {
                let v = adj[q] as usize;
                peer_slot[q] = smaller_cursor[v];
                smaller_cursor[v] += 1;
            }
        }

        OrderedGraph { k: p.k, offsets, adj, split, orig: p.order, peer_slot }
    }

    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn m(&self) -> usize {
        self.adj.len() / 2
    }

    /// Degeneracy bound the ordering was built with.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Neighbors of `u` below `u`, ascending.
    pub fn smaller(&self, u: VertexId) -> &[VertexId] {
        &self.adj[self.offsets[u as usize] as usize..self.split[u as usize] as usize]
    }

    /// Neighbors of `u` above `u`, ascending; at most `k` of them.
    pub fn larger(&self, u: VertexId) -> &[VertexId] {
        &self.adj[self.split[u as usize] as usize..self.offsets[u as usize + 1] as usize]
    }

    /// All neighbors of `u`, ascending.
    pub fn neighbors(&self, u: VertexId) -> &[VertexId] {
        &self.adj[self.offsets[u as usize] as usize..self.offsets[u as usize + 1] as usize]
    }

    /// The input-graph id of relabeled vertex `u`.
    pub fn orig_label(&self, u: VertexId) -> VertexId {
        self.orig[u as usize]
    }

    pub(crate) fn adj_len(&self) -> usize {
        self.adj.len()
    }

    pub(crate) fn slot_value(&self, slot: u32) -> VertexId {
        self.adj[slot as usize]
    }

    pub(crate) fn smaller_range(&self, u: VertexId) -> std::ops::Range<usize> {
        self.offsets[u as usize] as usize..self.split[u as usize] as usize
    }

    pub(crate) fn larger_range(&self, u: VertexId) -> std::ops::Range<usize> {
        self.split[u as usize] as usize..self.offsets[u as usize + 1] as usize
    }

    pub(crate) fn peer_slot(&self, larger_slot: usize) -> u32 {
        self.peer_slot[larger_slot]
    }
}
