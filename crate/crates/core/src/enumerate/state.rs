//! Mutable enumeration state: the growing subtree, the candidate and
//! forbidden sets, the pending-smaller lists, and the undo journal.
//!
//! Everything is intrusive: unlinking a node leaves its own links in place,
//! so relinking it is O(1) provided undo happens in strict LIFO order. The
//! journal records one entry per reversible mutation; a recursion frame
//! saves the journal length on entry and replays inverses back to that mark
//! on exit, restoring the state exactly.

use crate::degeneracy::OrderedGraph;
use crate::VertexId;

use super::{tree_adjacency, Variant};

/// One reversible mutation.
#[derive(Debug, Clone, Copy)]
enum UndoOp {
    /// A vertex was pushed onto the subtree stack.
    PushedTree,
    /// A vertex was unlinked from the candidate list.
    UnlinkedCand(VertexId),
    /// A vertex was inserted into the candidate list.
    InsertedCand(VertexId),
    /// A vertex was forbidden (and unlinked from all pending lists).
    Forbade(VertexId),
}

pub(crate) struct State {
    n: u32,
    /// Whether the pending-smaller lists are maintained.
    pruned: bool,
    /// The growing induced subtree, in insertion order.
    pub(crate) tree: Vec<VertexId>,
    pub(crate) in_tree: Vec<bool>,
    /// Candidate set: ascending circular doubly-linked list over vertex ids
    /// with the sentinel at index `n`.
    cand_next: Vec<u32>,
    cand_prev: Vec<u32>,
    pub(crate) in_cand: Vec<bool>,
    pub(crate) forbidden: Vec<bool>,
    /// Pending-smaller lists: for every vertex `u`, the sublist of its
    /// smaller neighbors that are not forbidden. Nodes are slots of the
    /// ordered graph's smaller CSR regions; the sentinel of `u`'s list sits
    /// at `adj_len + u`. When `u` joins the subtree this list is exactly the
    /// set of brand-new candidates, consumed wholesale without re-scanning.
    pend_next: Vec<u32>,
    pend_prev: Vec<u32>,
    pend_base: usize,
    journal: Vec<UndoOp>,
    pub(crate) peak_journal: usize,
}

impl State {
    pub(crate) fn new(g: &OrderedGraph, pruned: bool) -> Self {
        let n = g.n();
        let sentinel = n as u32;
        let mut cand_next: Vec<u32> = (0..=sentinel).collect();
        let mut cand_prev: Vec<u32> = (0..=sentinel).collect();
        cand_next[n] = sentinel;
        cand_prev[n] = sentinel;

        let pend_base = g.adj_len();
        let (mut pend_next, mut pend_prev) = if pruned {
            let len = pend_base + n;
            (vec![0u32; len], vec![0u32; len])
        } else {
            (Vec::new(), Vec::new())
        };
        if pruned {
            for u in 0..n as u32 {
                let sent = (pend_base + u as usize) as u32;
                let mut prev = sent;
                for p in g.smaller_range(u) {
                    pend_next[prev as usize] = p as u32;
                    pend_prev[p] = prev;
                    prev = p as u32;
                }
                pend_next[prev as usize] = sent;
                pend_prev[sent as usize] = prev;
            }
        }

        State {
            n: n as u32,
            pruned,
            tree: Vec::new(),
            in_tree: vec![false; n],
            cand_next,
            cand_prev,
            in_cand: vec![false; n],
            forbidden: vec![false; n],
            pend_next,
            pend_prev,
            pend_base,
            journal: Vec::new(),
            peak_journal: 0,
        }
    }

    pub(crate) fn journal_len(&self) -> usize {
        self.journal.len()
    }

    fn push_op(&mut self, op: UndoOp) {
        self.journal.push(op);
        self.peak_journal = self.peak_journal.max(self.journal.len());
    }

    // ---- candidate list -------------------------------------------------

    pub(crate) fn cand_sentinel(&self) -> u32 {
        self.n
    }

    pub(crate) fn cand_is_empty(&self) -> bool {
        self.cand_next[self.n as usize] == self.n
    }

    /// Smallest candidate, if any.
    pub(crate) fn cand_first(&self) -> Option<VertexId> {
        let first = self.cand_next[self.n as usize];
        (first != self.n).then_some(first)
    }

    fn cand_unlink_raw(&mut self, v: VertexId) {
        let (prev, next) = (self.cand_prev[v as usize], self.cand_next[v as usize]);
        self.cand_next[prev as usize] = next;
        self.cand_prev[next as usize] = prev;
        self.in_cand[v as usize] = false;
    }

    fn cand_relink_raw(&mut self, v: VertexId) {
        let (prev, next) = (self.cand_prev[v as usize], self.cand_next[v as usize]);
        self.cand_next[prev as usize] = v;
        self.cand_prev[next as usize] = v;
        self.in_cand[v as usize] = true;
    }

    pub(crate) fn unlink_cand(&mut self, v: VertexId) {
        debug_assert!(self.in_cand[v as usize]);
        self.cand_unlink_raw(v);
        self.push_op(UndoOp::UnlinkedCand(v));
    }

    /// Inserts `v` directly after `pos` (a vertex id or the sentinel).
    pub(crate) fn insert_cand_after(&mut self, pos: u32, v: VertexId) {
        debug_assert!(!self.in_cand[v as usize] && !self.forbidden[v as usize]);
        let next = self.cand_next[pos as usize];
        self.cand_next[pos as usize] = v;
        self.cand_prev[v as usize] = pos;
        self.cand_next[v as usize] = next;
        self.cand_prev[next as usize] = v;
        self.in_cand[v as usize] = true;
        self.push_op(UndoOp::InsertedCand(v));
    }

    /// Candidate list contents in order; test and snapshot helper.
    pub(crate) fn cand_to_vec(&self) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut p = self.cand_next[self.n as usize];
        while p != self.n {
            out.push(p);
            p = self.cand_next[p as usize];
        }
        out
    }

    // ---- subtree stack ---------------------------------------------------

    pub(crate) fn push_tree(&mut self, v: VertexId) {
        debug_assert!(!self.in_tree[v as usize]);
        self.tree.push(v);
        self.in_tree[v as usize] = true;
        self.push_op(UndoOp::PushedTree);
    }

    // ---- forbidden set and pending lists ----------------------------------

    fn pend_sentinel(&self, u: VertexId) -> u32 {
        (self.pend_base + u as usize) as u32
    }

    fn pend_unlink(&mut self, p: u32) {
        let (prev, next) = (self.pend_prev[p as usize], self.pend_next[p as usize]);
        self.pend_next[prev as usize] = next;
        self.pend_prev[next as usize] = prev;
    }

    fn pend_relink(&mut self, p: u32) {
        let (prev, next) = (self.pend_prev[p as usize], self.pend_next[p as usize]);
        self.pend_next[prev as usize] = p;
        self.pend_prev[next as usize] = p;
    }

    /// Unlinks `w` from the pending list of every larger neighbor.
    fn pending_drop_everywhere(&mut self, g: &OrderedGraph, w: VertexId) {
        for q in g.larger_range(w) {
            self.pend_unlink(g.peer_slot(q));
        }
    }

    /// Inverse of [`Self::pending_drop_everywhere`]; must run in LIFO order
    /// relative to any other pending mutation.
    fn pending_restore_everywhere(&mut self, g: &OrderedGraph, w: VertexId) {
        for q in g.larger_range(w).rev() {
            self.pend_relink(g.peer_slot(q));
        }
    }

    /// Adds `w` to the forbidden set, journaled.
    pub(crate) fn forbid(&mut self, g: &OrderedGraph, w: VertexId) {
        self.forbid_impl(g, w);
        self.push_op(UndoOp::Forbade(w));
    }

    /// Adds `w` to the forbidden set with no journal entry; used by the root
    /// driver, which never revisits vertices below the current root.
    pub(crate) fn forbid_permanent(&mut self, g: &OrderedGraph, w: VertexId) {
        self.forbid_impl(g, w);
    }

    fn forbid_impl(&mut self, g: &OrderedGraph, w: VertexId) {
        debug_assert!(!self.forbidden[w as usize]);
        self.forbidden[w as usize] = true;
        if self.pruned {
            self.pending_drop_everywhere(g, w);
        }
    }

    /// Pending list of `u` (its not-yet-forbidden smaller neighbors).
    pub(crate) fn pending_to_vec(&self, g: &OrderedGraph, u: VertexId) -> Vec<VertexId> {
        debug_assert!(self.pruned);
        let sent = self.pend_sentinel(u);
        let mut out = Vec::new();
        let mut p = self.pend_next[sent as usize];
        while p != sent {
            out.push(g.slot_value(p));
            p = self.pend_next[p as usize];
        }
        out
    }

    // ---- the two include updates ------------------------------------------

    /// Moves candidate `u` (already unlinked, and previously the candidate
    /// minimum) into the subtree and rebuilds the candidate set for it.
    pub(crate) fn include_vertex(&mut self, g: &OrderedGraph, u: VertexId, variant: Variant) {
        match variant {
            Variant::Pruned => self.include_pruned(g, u),
            Variant::Basic => self.include_basic(g, u),
        }
    }

    /// Pruned update. Only the (at most `k`) larger neighbors are scanned;
    /// the smaller side comes straight off the pending list, skipping every
    /// already-forbidden vertex without looking at it.
    fn include_pruned(&mut self, g: &OrderedGraph, u: VertexId) {
        self.push_tree(u);
        // Neighbors that were candidates become forbidden: adding them now
        // would close a cycle through u. All candidates exceed u, the old
        // minimum, so checking larger(u) covers them.
        for &v in g.larger(u) {
            if self.in_cand[v as usize] {
                self.unlink_cand(v);
                self.forbid(g, v);
            }
        }
        self.forbid(g, u);
        // Fresh larger-side candidates, merged in ascending position. The
        // cursor only ever advances: both the list and larger(u) ascend.
        let mut cursor = self.cand_sentinel();
        for &v in g.larger(u) {
            if !self.forbidden[v as usize] {
                debug_assert!(!self.in_cand[v as usize]);
                while self.cand_next[cursor as usize] != self.n
                    && self.cand_next[cursor as usize] < v
                {
                    cursor = self.cand_next[cursor as usize];
                }
                self.insert_cand_after(cursor, v);
                cursor = v;
            }
        }
        // Fresh smaller-side candidates: the whole pending list of u. Every
        // entry is below u and hence below every candidate, so they prepend
        // at the head in list order.
        let sent = self.pend_sentinel(u);
        let mut cursor = self.cand_sentinel();
        let mut p = self.pend_next[sent as usize];
        while p != sent {
            let v = g.slot_value(p);
            debug_assert!(!self.in_cand[v as usize] && !self.forbidden[v as usize]);
            self.insert_cand_after(cursor, v);
            cursor = v;
            p = self.pend_next[p as usize];
        }
    }

    /// Reference update: scan the full neighborhood of `u`. Produces a state
    /// identical to [`Self::include_pruned`].
    fn include_basic(&mut self, g: &OrderedGraph, u: VertexId) {
        self.push_tree(u);
        for &v in g.neighbors(u) {
            if self.in_cand[v as usize] {
                self.unlink_cand(v);
                self.forbid(g, v);
            }
        }
        self.forbid(g, u);
        let mut cursor = self.cand_sentinel();
        for &v in g.smaller(u) {
            if !self.forbidden[v as usize] {
                debug_assert!(!self.in_cand[v as usize]);
                self.insert_cand_after(cursor, v);
                cursor = v;
            }
        }
        for &v in g.larger(u) {
            if !self.forbidden[v as usize] && !self.in_cand[v as usize] {
                while self.cand_next[cursor as usize] != self.n
                    && self.cand_next[cursor as usize] < v
                {
                    cursor = self.cand_next[cursor as usize];
                }
                self.insert_cand_after(cursor, v);
                cursor = v;
            }
        }
    }

    // ---- undo ---------------------------------------------------------------

    /// Replays inverse operations until the journal shrinks to `mark`.
    pub(crate) fn undo_to(&mut self, g: &OrderedGraph, mark: usize) {
        debug_assert!(mark <= self.journal.len());
        while self.journal.len() > mark {
            match self.journal.pop().expect("journal length checked") {
                UndoOp::PushedTree => {
                    let v = self.tree.pop().expect("tree push journaled");
                    self.in_tree[v as usize] = false;
                }
                UndoOp::UnlinkedCand(v) => self.cand_relink_raw(v),
                UndoOp::InsertedCand(v) => self.cand_unlink_raw(v),
                UndoOp::Forbade(v) => {
                    debug_assert!(self.forbidden[v as usize]);
                    self.forbidden[v as usize] = false;
                    if self.pruned {
                        self.pending_restore_everywhere(g, v);
                    }
                }
            }
        }
    }

    // ---- instrumentation -------------------------------------------------

    /// Full recomputation of every structural invariant; debug-mode only,
    /// `O(n + m)` per call.
    pub(crate) fn assert_invariants(&self, g: &OrderedGraph) {
        let n = self.n as usize;
        // Candidate list: strictly ascending, flags in agreement.
        let list = self.cand_to_vec();
        assert!(list.windows(2).all(|w| w[0] < w[1]), "candidate list out of order");
        assert_eq!(list.len(), self.in_cand.iter().filter(|&&b| b).count());
        for &v in &list {
            assert!(self.in_cand[v as usize] && !self.forbidden[v as usize]);
            assert_eq!(self.cand_next[self.cand_prev[v as usize] as usize], v);
            assert_eq!(self.cand_prev[self.cand_next[v as usize] as usize], v);
        }
        // The subtree is forbidden territory and really is an induced subtree.
        for &v in &self.tree {
            assert!(self.in_tree[v as usize] && self.forbidden[v as usize]);
        }
        if !self.tree.is_empty() {
            assert!(induced_subtree_on_ordered(g, &self.in_tree, self.tree[0], self.tree.len()));
            // Candidate definition: not forbidden and adjacent to the
            // subtree exactly once.
            for v in 0..n as VertexId {
                let expected = !self.forbidden[v as usize]
                    && tree_adjacency(g, &self.in_tree, v) == 1;
                assert_eq!(
                    self.in_cand[v as usize], expected,
                    "candidate flag mismatch at vertex {v}"
                );
            }
        }
        // Pending lists match their definition.
        if self.pruned {
            for u in 0..n as VertexId {
                let expected: Vec<VertexId> = g
                    .smaller(u)
                    .iter()
                    .copied()
                    .filter(|&v| !self.forbidden[v as usize])
                    .collect();
                assert_eq!(self.pending_to_vec(g, u), expected, "pending list of {u}");
            }
        }
    }

    /// Materialized copy of the logical state, for restoration checks.
    /// Raw link arrays are deliberately excluded: unlinked nodes keep scratch
    /// pointer values, so only list contents are meaningful.
    pub(crate) fn snapshot(&self, g: &OrderedGraph) -> StateSnapshot {
        StateSnapshot {
            cand: self.cand_to_vec(),
            in_cand: self.in_cand.clone(),
            forbidden: self.forbidden.clone(),
            tree: self.tree.clone(),
            pending: if self.pruned {
                (0..self.n).map(|u| self.pending_to_vec(g, u)).collect()
            } else {
                Vec::new()
            },
        }
    }
}

/// Connectivity-and-size check of the flagged set within the ordered graph.
fn induced_subtree_on_ordered(
    g: &OrderedGraph,
    in_tree: &[bool],
    start: VertexId,
    size: usize,
) -> bool {
    let twice_edges: usize = (0..g.n() as VertexId)
        .filter(|&v| in_tree[v as usize])
        .map(|v| g.neighbors(v).iter().filter(|&&w| in_tree[w as usize]).count())
        .sum();
    if twice_edges != 2 * (size - 1) {
        return false;
    }
    let mut visited = vec![false; g.n()];
    let mut stack = vec![start];
    visited[start as usize] = true;
    let mut reached = 0;
    while let Some(v) = stack.pop() {
        reached += 1;
        for &w in g.neighbors(v) {
            if in_tree[w as usize] && !visited[w as usize] {
                visited[w as usize] = true;
                stack.push(w);
            }
        }
    }
    reached == size
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct StateSnapshot {
    cand: Vec<VertexId>,
    in_cand: Vec<bool>,
    forbidden: Vec<bool>,
    tree: Vec<VertexId>,
    pending: Vec<Vec<VertexId>>,
}
