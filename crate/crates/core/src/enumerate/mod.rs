//! Binary-partition enumeration of induced subtrees.
//!
//! The driver grows a subtree from each root vertex in ascending order of a
//! degeneracy-ordered graph. At every step the smallest candidate `u` is
//! removed and the solution space splits in two: subtrees without `u`
//! (forbid it) and subtrees with `u` (add it and rebuild the candidate set).
//! A solution is reported exactly when the candidate set empties, so every
//! induced subtree is reported once, rooted at its smallest vertex.
//!
//! Two interchangeable candidate updates are provided: [`enumerate_basic`]
//! rescans the full neighborhood of the added vertex, while [`enumerate`]
//! uses the split adjacency and the pending-smaller lists so that an
//! inclusion costs `O(k + new candidates)` — amortized `O(k)` per solution
//! over a whole run. Both produce the identical solution stream.
//!
//! All mutations go through an undo journal; backtracking replays inverses,
//! so one state serves the entire run in `O(n + m)` space.

mod sink;
mod state;

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::degeneracy::OrderedGraph;
use crate::VertexId;

pub use sink::{CollectSink, CountSink, DeltaEvent, DeltaRecorder, NullSink, SolutionSink};
use state::{State, StateSnapshot};

/// Peak undo-journal length never exceeds this multiple of `n + m`: along
/// any root-to-leaf path each vertex is pushed, forbidden, inserted and
/// unlinked at most once apiece.
pub const UNDO_SPACE_FACTOR: usize = 4;

/// Which candidate update the run uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Variant {
    Basic,
    Pruned,
}

/// Knobs for a single enumeration run.
#[derive(Debug, Clone, Copy, Default)]
pub struct EnumerateOptions {
    /// Also report the empty vertex set (one extra mark, before any root).
    pub include_empty: bool,
    /// Deliver each solution as a full ascending-id set via
    /// [`SolutionSink::solution_set`]. Costs `O(|S| log |S|)` per solution,
    /// which forfeits the per-solution bound; counting and delta consumers
    /// leave this off.
    pub emit_full_sets: bool,
    /// Stop after this many solutions.
    pub max_solutions: Option<u64>,
    /// Recompute every structural invariant at each step and verify that
    /// backtracking restores state exactly. Orders of magnitude slower;
    /// meant for tests on small graphs.
    pub check_invariants: bool,
}

/// Counters from one run.
#[derive(Debug, Clone, Default)]
pub struct EnumerationStats {
    /// Number of solutions reported.
    pub solutions: u64,
    /// Number of partition steps. At most `2 * solutions + n`.
    pub iterations: u64,
    /// Peak undo-journal length; at most [`UNDO_SPACE_FACTOR`] `* (n + m)`.
    pub max_undo_entries: usize,
    /// Wall time of the run.
    pub elapsed: Duration,
    /// Whether `max_solutions` cut the run short.
    pub truncated: bool,
}

/// Number of neighbors of `u` inside the flagged vertex set.
pub fn tree_adjacency(g: &OrderedGraph, in_tree: &[bool], u: VertexId) -> usize {
    g.neighbors(u).iter().filter(|&&w| in_tree[w as usize]).count()
}

/// Whether the flagged set stays an induced subtree when `u` joins: a lone
/// vertex always does, otherwise exactly one neighbor must be inside (zero
/// disconnects, two or more close a cycle).
pub fn extends_to_subtree(
    g: &OrderedGraph,
    in_tree: &[bool],
    tree_size: usize,
    u: VertexId,
) -> bool {
    debug_assert!(!in_tree[u as usize]);
    tree_size == 0 || tree_adjacency(g, in_tree, u) == 1
}

/// Enumerates every induced subtree of `g` with the pruned update.
pub fn enumerate<S: SolutionSink>(
    g: &OrderedGraph,
    sink: &mut S,
    opts: &EnumerateOptions,
) -> EnumerationStats {
    run_with_sink(g, sink, opts, Variant::Pruned)
}

/// Same stream as [`enumerate`], via the full-neighborhood update; kept as a
/// differential reference.
pub fn enumerate_basic<S: SolutionSink>(
    g: &OrderedGraph,
    sink: &mut S,
    opts: &EnumerateOptions,
) -> EnumerationStats {
    run_with_sink(g, sink, opts, Variant::Basic)
}

fn run_with_sink<S: SolutionSink>(
    g: &OrderedGraph,
    sink: &mut S,
    opts: &EnumerateOptions,
    variant: Variant,
) -> EnumerationStats {
    let start = Instant::now();
    let budget = match opts.max_solutions {
        None => Budget::Unlimited,
        Some(cap) => Budget::Local(cap),
    };
    let mut engine = Engine::new(g, sink, *opts, variant, budget);
    if opts.include_empty {
        engine.emit();
    }
    engine.run_roots(0..g.n() as u32);
    engine.finish(start)
}

/// Counts induced subtrees with the roots partitioned across workers, each
/// owning a private state. Built with the `parallel` feature this fans out
/// over a rayon pool; without it the same partitioning runs sequentially.
/// Totals equal a sequential run exactly (up to which solutions survive a
/// `max_solutions` cut).
pub fn enumerate_count_parallel(
    g: &OrderedGraph,
    opts: &EnumerateOptions,
) -> EnumerationStats {
    let start = Instant::now();
    let mut opts = *opts;
    opts.emit_full_sets = false;
    let counter = Arc::new(AtomicU64::new(0));
    let mut pre_solutions = 0u64;
    if opts.include_empty && opts.max_solutions.map_or(true, |cap| cap > 0) {
        counter.fetch_add(1, Ordering::Relaxed);
        pre_solutions = 1;
    }

    let worker = |roots: std::ops::Range<u32>| {
        let budget = match opts.max_solutions {
            None => Budget::Unlimited,
            Some(cap) => Budget::Shared(Arc::clone(&counter), cap),
        };
        let mut sink = NullSink;
        let mut engine = Engine::new(g, &mut sink, opts, Variant::Pruned, budget);
        for w in 0..roots.start {
            engine.st.forbid_permanent(g, w);
        }
        engine.run_roots(roots);
        (engine.solutions, engine.iterations, engine.st.peak_journal)
    };

    let chunks = root_chunks(g.n() as u32);
    #[cfg(feature = "parallel")]
    let parts: Vec<(u64, u64, usize)> = {
        use rayon::prelude::*;
        chunks.into_par_iter().map(worker).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let parts: Vec<(u64, u64, usize)> = chunks.into_iter().map(worker).collect();

    let mut stats = EnumerationStats { solutions: pre_solutions, ..Default::default() };
    for (solutions, iterations, peak) in parts {
        stats.solutions += solutions;
        stats.iterations += iterations;
        stats.max_undo_entries = stats.max_undo_entries.max(peak);
    }
    stats.truncated = opts
        .max_solutions
        .is_some_and(|cap| counter.load(Ordering::Relaxed) >= cap);
    stats.elapsed = start.elapsed();
    stats
}

/// Contiguous root ranges; sized for load balance when rayon is in play.
fn root_chunks(n: u32) -> Vec<std::ops::Range<u32>> {
    if n == 0 {
        return Vec::new();
    }
    #[cfg(feature = "parallel")]
    let chunk_count = (rayon::current_num_threads() as u32)
        .saturating_mul(8)
        .clamp(1, n);
    #[cfg(not(feature = "parallel"))]
    let chunk_count = 1u32;
    let size = n.div_ceil(chunk_count);
    (0..chunk_count)
        .map(|i| i * size..((i + 1) * size).min(n))
        .filter(|r| !r.is_empty())
        .collect()
}

enum Budget {
    Unlimited,
    Local(u64),
    Shared(Arc<AtomicU64>, u64),
}

#[derive(Debug, Clone, Copy)]
enum Phase {
    Enter,
    AfterExclude,
    AfterInclude,
}

struct Frame {
    u: VertexId,
    /// Journal mark from before this frame unlinked its pivot.
    mark_frame: usize,
    /// Journal mark from before the branch currently in flight.
    mark_branch: usize,
    phase: Phase,
    /// Pre-branch snapshot when restoration checking is on.
    snap: Option<Box<StateSnapshot>>,
}

impl Frame {
    fn enter() -> Self {
        Frame { u: 0, mark_frame: 0, mark_branch: 0, phase: Phase::Enter, snap: None }
    }
}

struct Engine<'g, 's, S: SolutionSink> {
    g: &'g OrderedGraph,
    st: State,
    sink: &'s mut S,
    opts: EnumerateOptions,
    variant: Variant,
    budget: Budget,
    solutions: u64,
    iterations: u64,
    stop: bool,
    /// Heap-allocated recursion; depth can reach the largest solution size.
    frames: Vec<Frame>,
    set_buf: Vec<VertexId>,
}

impl<'g, 's, S: SolutionSink> Engine<'g, 's, S> {
    fn new(
        g: &'g OrderedGraph,
        sink: &'s mut S,
        opts: EnumerateOptions,
        variant: Variant,
        budget: Budget,
    ) -> Self {
        Engine {
            g,
            st: State::new(g, matches!(variant, Variant::Pruned)),
            sink,
            opts,
            variant,
            budget,
            solutions: 0,
            iterations: 0,
            stop: false,
            frames: Vec::new(),
            set_buf: Vec::new(),
        }
    }

    /// Runs the root loop over `roots` (ascending ordered ids). Expects every
    /// vertex below `roots.start` to be forbidden already.
    fn run_roots(&mut self, roots: std::ops::Range<u32>) {
        for r in roots {
            if self.stop {
                break;
            }
            debug_assert!(self.st.cand_is_empty());
            let mark = self.st.journal_len();
            self.st.push_tree(r);
            self.sink.vertex_added(self.g.orig_label(r));
            // Roots advance monotonically, so r never becomes eligible again:
            // forbid it for good rather than through the journal.
            self.st.forbid_permanent(self.g, r);
            let mut cursor = self.st.cand_sentinel();
            for &v in self.g.larger(r) {
                self.st.insert_cand_after(cursor, v);
                cursor = v;
            }
            self.visit_subtree();
            self.st.undo_to(self.g, mark);
            self.sink.vertex_removed(self.g.orig_label(r));
        }
    }

    /// Explicit-stack binary partition below the current root.
    fn visit_subtree(&mut self) {
        debug_assert!(self.frames.is_empty());
        self.frames.push(Frame::enter());
        while !self.frames.is_empty() {
            let phase = self.frames.last().expect("loop condition").phase;
            match phase {
                Phase::Enter => self.step_enter(),
                Phase::AfterExclude => self.step_after_exclude(),
                Phase::AfterInclude => self.step_after_include(),
            }
        }
    }

    fn step_enter(&mut self) {
        self.iterations += 1;
        if self.opts.check_invariants {
            self.st.assert_invariants(self.g);
        }
        let Some(u) = self.st.cand_first() else {
            // No way to extend: the current subtree is a solution.
            self.emit();
            self.frames.pop();
            return;
        };
        let mark_frame = self.st.journal_len();
        self.st.unlink_cand(u);
        // Exclude branch first.
        let mark_branch = self.st.journal_len();
        let snap = self.branch_snapshot();
        self.st.forbid(self.g, u);
        let frame = self.frames.last_mut().expect("frame in flight");
        frame.u = u;
        frame.mark_frame = mark_frame;
        frame.mark_branch = mark_branch;
        frame.phase = Phase::AfterExclude;
        frame.snap = snap;
        self.frames.push(Frame::enter());
    }

    fn step_after_exclude(&mut self) {
        let (u, mark_frame, mark_branch) = {
            let f = self.frames.last().expect("frame in flight");
            (f.u, f.mark_frame, f.mark_branch)
        };
        self.st.undo_to(self.g, mark_branch);
        self.check_restored();
        if self.stop {
            self.st.undo_to(self.g, mark_frame);
            self.frames.pop();
            return;
        }
        // Include branch.
        let mark_branch = self.st.journal_len();
        let snap = self.branch_snapshot();
        self.st.include_vertex(self.g, u, self.variant);
        self.sink.vertex_added(self.g.orig_label(u));
        let frame = self.frames.last_mut().expect("frame in flight");
        frame.mark_branch = mark_branch;
        frame.phase = Phase::AfterInclude;
        frame.snap = snap;
        self.frames.push(Frame::enter());
    }

    fn step_after_include(&mut self) {
        let (u, mark_frame, mark_branch) = {
            let f = self.frames.last().expect("frame in flight");
            (f.u, f.mark_frame, f.mark_branch)
        };
        self.st.undo_to(self.g, mark_branch);
        self.sink.vertex_removed(self.g.orig_label(u));
        self.check_restored();
        // Put u back among the candidates for the caller.
        self.st.undo_to(self.g, mark_frame);
        self.frames.pop();
    }

    fn branch_snapshot(&self) -> Option<Box<StateSnapshot>> {
        self.opts
            .check_invariants
            .then(|| Box::new(self.st.snapshot(self.g)))
    }

    fn check_restored(&mut self) {
        if let Some(expected) = self.frames.last_mut().expect("frame in flight").snap.take() {
            let now = self.st.snapshot(self.g);
            assert_eq!(now, *expected, "backtracking must restore the state exactly");
        }
    }

    fn emit(&mut self) {
        let allowed = match &self.budget {
            Budget::Unlimited => true,
            Budget::Local(cap) => self.solutions < *cap,
            Budget::Shared(counter, cap) => counter.fetch_add(1, Ordering::Relaxed) < *cap,
        };
        if !allowed {
            self.stop = true;
            return;
        }
        self.solutions += 1;
        match &self.budget {
            Budget::Unlimited => {}
            Budget::Local(cap) => {
                if self.solutions >= *cap {
                    self.stop = true;
                }
            }
            Budget::Shared(counter, cap) => {
                if counter.load(Ordering::Relaxed) >= *cap {
                    self.stop = true;
                }
            }
        }
        if self.opts.emit_full_sets {
            self.set_buf.clear();
            self.set_buf
                .extend(self.st.tree.iter().map(|&v| self.g.orig_label(v)));
            self.set_buf.sort_unstable();
            self.sink.solution_set(&self.set_buf);
        }
        self.sink.solution_mark();
    }

    fn finish(self, start: Instant) -> EnumerationStats {
        EnumerationStats {
            solutions: self.solutions,
            iterations: self.iterations,
            max_undo_entries: self.st.peak_journal,
            elapsed: start.elapsed(),
            truncated: self.stop,
        }
    }
}
