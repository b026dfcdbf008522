//! End-to-end acceptance suite.
//!
//! Each test prints one `criterion N: PASS/FAIL` line with the measured
//! numbers (visible with `cargo test --test acceptance -- --nocapture`).
//! A shared gate serializes the tests so the timing-sensitive ones are not
//! perturbed by sibling tests on other threads.

use std::sync::{Mutex, MutexGuard, OnceLock};
use std::time::Instant;

use induced_subtrees::enumerate::{
    enumerate, enumerate_basic, CollectSink, DeltaRecorder, EnumerateOptions, EnumerationStats,
    NullSink, UNDO_SPACE_FACTOR,
};
use induced_subtrees::generate::random_k_degenerate;
use induced_subtrees::oracle::{brute_force_degeneracy, brute_force_enumerate, SolutionSet};
use induced_subtrees::{
    build_ordered_graph, compute_degeneracy_ordering, verify_ordering, Graph, OrderedGraph,
    VertexId,
};

static GATE: Mutex<()> = Mutex::new(());

fn gate() -> MutexGuard<'static, ()> {
    GATE.lock().unwrap_or_else(|poison| poison.into_inner())
}

/// Every labeled graph on 5 vertices: all 1024 subsets of the 10 edges of K5.
fn graphs_on_five() -> Vec<Graph> {
    let pairs: Vec<(VertexId, VertexId)> =
        (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
    (0u32..1 << 10)
        .map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            Graph::from_edges(5, &edges).expect("valid edge subset")
        })
        .collect()
}

/// Deterministic schedule of 200 seeded random instances, n <= 14, k <= 4.
fn randomized_instances() -> Vec<Graph> {
    (0..200u64)
        .map(|i| {
            let n = 1 + (i as usize * 7 + 5) % 14;
            let k = i as usize % 5;
            random_k_degenerate(n, k, 9000 + i)
        })
        .collect()
}

fn enumerate_sets(g: &Graph, opts: &EnumerateOptions) -> (SolutionSet, EnumerationStats) {
    let og = OrderedGraph::from_graph(g);
    let mut sink = CollectSink::default();
    let opts = EnumerateOptions { emit_full_sets: true, ..*opts };
    let stats = enumerate(&og, &mut sink, &opts);
    let set = SolutionSet::from_sets(sink.sets);
    assert!(!set.has_duplicates(), "duplicate solutions emitted");
    (set, stats)
}

fn path_graph(n: usize) -> Graph {
    let edges: Vec<_> = (0..n as VertexId - 1).map(|i| (i, i + 1)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

fn cycle_graph(n: usize) -> Graph {
    let mut edges: Vec<_> = (0..n as VertexId - 1).map(|i| (i, i + 1)).collect();
    edges.push((n as VertexId - 1, 0));
    Graph::from_edges(n, &edges).unwrap()
}

fn complete_graph(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n as VertexId {
        for v in u + 1..n as VertexId {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

// ---- shared large-scale runs for criteria 5, 7, 8 --------------------------

const SCALING_SIZES: [usize; 3] = [1_000, 10_000, 100_000];
const SCALING_K: usize = 3;
const SCALING_SEED: u64 = 2024;
/// Truncation cap keeping every run at desk scale.
const SCALING_CAP: u64 = 5_000_000;
const SCALING_REPEATS: usize = 5;

struct ScalingRow {
    n: usize,
    m: usize,
    solutions: u64,
    iterations: u64,
    max_undo_entries: usize,
    enumerate_ns: u128,
    preprocess_ns: u128,
}

/// Streams through a buffer larger than this guest's cache share so every
/// preprocessing repeat starts from the same cold state. Per-unit wall time
/// is otherwise incomparable across sizes: a 10^3-vertex graph lives in L1
/// between passes while a 10^5-vertex one cannot.
fn flush_caches(sweep: &mut [u64]) {
    for (i, slot) in sweep.iter_mut().enumerate() {
        *slot = slot.wrapping_add(i as u64);
    }
    std::hint::black_box(&sweep[sweep.len() / 2]);
}

static SCALING: OnceLock<Vec<ScalingRow>> = OnceLock::new();

fn scaling_rows() -> &'static [ScalingRow] {
    SCALING.get_or_init(|| {
        let mut sweep = vec![0u64; 64 * 1024 * 1024 / 8];
        SCALING_SIZES
            .iter()
            .map(|&n| {
                let g = random_k_degenerate(n, SCALING_K, SCALING_SEED);
                let mut preprocess_ns = u128::MAX;
                let mut og = None;
                for _ in 0..SCALING_REPEATS {
                    flush_caches(&mut sweep);
                    let t = Instant::now();
                    let built = OrderedGraph::from_graph(&g);
                    preprocess_ns = preprocess_ns.min(t.elapsed().as_nanos());
                    og = Some(built);
                }
                let og = og.expect("at least one repeat");
                let opts = EnumerateOptions {
                    max_solutions: Some(SCALING_CAP),
                    ..Default::default()
                };
                let mut best: Option<EnumerationStats> = None;
                for _ in 0..SCALING_REPEATS.min(3) {
                    let stats = enumerate(&og, &mut NullSink, &opts);
                    if best.as_ref().map_or(true, |b| stats.elapsed < b.elapsed) {
                        best = Some(stats);
                    }
                }
                let stats = best.expect("at least one repeat");
                ScalingRow {
                    n: g.n(),
                    m: g.m(),
                    solutions: stats.solutions,
                    iterations: stats.iterations,
                    max_undo_entries: stats.max_undo_entries,
                    enumerate_ns: stats.elapsed.as_nanos(),
                    preprocess_ns,
                }
            })
            .collect()
    })
}

// ---- criteria ---------------------------------------------------------------

#[test]
fn criterion_1_oracle_equivalence_exhaustive() {
    let _g = gate();
    let start = Instant::now();
    let mut total_solutions = 0u64;
    let mut mismatches = 0usize;
    for g in graphs_on_five() {
        let (got, _) = enumerate_sets(&g, &EnumerateOptions::default());
        let want = brute_force_enumerate(&g).expect("n = 5");
        if got != want {
            mismatches += 1;
        }
        total_solutions += got.len() as u64;
    }
    let ok = mismatches == 0;
    println!(
        "criterion 1: {} — oracle equivalence on all 1024 labeled 5-vertex graphs \
         ({total_solutions} solutions total, {:.2?})",
        if ok { "PASS" } else { "FAIL" },
        start.elapsed(),
    );
    assert!(ok, "{mismatches} graphs disagree with the oracle");
}

#[test]
fn criterion_2_oracle_equivalence_randomized() {
    let _g = gate();
    let start = Instant::now();
    let mut mismatches = 0usize;
    let mut stream_diffs = 0usize;
    for g in randomized_instances() {
        let (got, _) = enumerate_sets(&g, &EnumerateOptions::default());
        let want = brute_force_enumerate(&g).expect("n <= 14");
        if got != want {
            mismatches += 1;
        }
        let og = OrderedGraph::from_graph(&g);
        let mut pruned = DeltaRecorder::default();
        enumerate(&og, &mut pruned, &EnumerateOptions::default());
        let mut basic = DeltaRecorder::default();
        enumerate_basic(&og, &mut basic, &EnumerateOptions::default());
        if pruned.events != basic.events {
            stream_diffs += 1;
        }
    }
    let ok = mismatches == 0 && stream_diffs == 0;
    println!(
        "criterion 2: {} — 200 seeded random graphs (n<=14, k<=4) match the oracle; \
         basic and pruned streams identical ({:.2?})",
        if ok { "PASS" } else { "FAIL" },
        start.elapsed(),
    );
    assert!(ok, "{mismatches} set mismatches, {stream_diffs} stream mismatches");
}

#[test]
fn criterion_3_degeneracy_correctness() {
    let _g = gate();
    let mut failures = 0usize;
    for g in graphs_on_five() {
        let ord = compute_degeneracy_ordering(&g);
        if ord.k != brute_force_degeneracy(&g).expect("n = 5") {
            failures += 1;
        }
    }
    for n in 2..=8usize {
        if compute_degeneracy_ordering(&path_graph(n)).k != 1 {
            failures += 1;
        }
        if n >= 3 && compute_degeneracy_ordering(&cycle_graph(n)).k != 2 {
            failures += 1;
        }
        if compute_degeneracy_ordering(&complete_graph(n)).k != n - 1 {
            failures += 1;
        }
    }
    let ok = failures == 0;
    println!(
        "criterion 3: {} — degeneracy matches brute force on 1024 graphs, \
         and path=1 / cycle=2 / K_n=n-1 hold for n<=8",
        if ok { "PASS" } else { "FAIL" },
    );
    assert!(ok, "{failures} degeneracy mismatches");
}

#[test]
fn criterion_4_ordering_condition() {
    let _g = gate();
    let mut failures = 0usize;
    let mut checked = 0usize;
    let mut check = |g: &Graph| {
        let ord = compute_degeneracy_ordering(g);
        if !verify_ordering(g, &ord) {
            failures += 1;
        }
        checked += 1;
    };
    for g in graphs_on_five() {
        check(&g);
    }
    for g in randomized_instances() {
        check(&g);
    }
    for n in 2..=8usize {
        check(&path_graph(n));
        if n >= 3 {
            check(&cycle_graph(n));
        }
        check(&complete_graph(n));
    }
    check(&random_k_degenerate(100_000, 3, SCALING_SEED));
    let ok = failures == 0;
    println!(
        "criterion 4: {} — ordering condition verified on {checked} computed orderings \
         (including n=100000)",
        if ok { "PASS" } else { "FAIL" },
    );
    assert!(ok, "{failures} orderings violate the ordering condition");
}

#[test]
fn criterion_5_iteration_bound() {
    let _g = gate();
    let mut failures = 0usize;
    let mut runs = 0usize;
    for g in graphs_on_five().into_iter().chain(randomized_instances()) {
        let og = OrderedGraph::from_graph(&g);
        let stats = enumerate(&og, &mut NullSink, &EnumerateOptions::default());
        if stats.iterations > 2 * stats.solutions + og.n() as u64 {
            failures += 1;
        }
        runs += 1;
    }
    // Truncated runs obey the same bound.
    let g = random_k_degenerate(500, 3, 77);
    let og = OrderedGraph::from_graph(&g);
    let opts = EnumerateOptions { max_solutions: Some(10_000), ..Default::default() };
    let stats = enumerate(&og, &mut NullSink, &opts);
    assert!(stats.truncated);
    if stats.iterations > 2 * stats.solutions + og.n() as u64 {
        failures += 1;
    }
    runs += 1;
    for row in scaling_rows() {
        if row.iterations > 2 * row.solutions + row.n as u64 {
            failures += 1;
        }
        runs += 1;
    }
    let ok = failures == 0;
    println!(
        "criterion 5: {} — iterations <= 2N + n held in all {runs} runs \
         (complete, truncated, and large-scale)",
        if ok { "PASS" } else { "FAIL" },
    );
    assert!(ok, "{failures} runs exceeded the iteration bound");
}

#[test]
fn criterion_6_restoration() {
    let _g = gate();
    let start = Instant::now();
    // check_invariants recomputes every structure from scratch at each step
    // and asserts that every backtrack restores the state exactly; any
    // violation panics inside the run.
    let mut runs = 0usize;
    for g in randomized_instances() {
        let og = OrderedGraph::from_graph(&g);
        let opts = EnumerateOptions { check_invariants: true, ..Default::default() };
        let checked = enumerate(&og, &mut NullSink, &opts);
        let plain = enumerate(&og, &mut NullSink, &EnumerateOptions::default());
        assert_eq!(checked.solutions, plain.solutions);
        assert_eq!(checked.iterations, plain.iterations);
        runs += 1;
    }
    println!(
        "criterion 6: PASS — state restored exactly after every branch across \
         {runs} checked runs ({:.2?})",
        start.elapsed(),
    );
}

#[test]
fn criterion_7_per_solution_scaling() {
    let _g = gate();
    let rows = scaling_rows();
    let per_solution: Vec<f64> = rows
        .iter()
        .map(|r| r.enumerate_ns as f64 / r.solutions.max(1) as f64)
        .collect();
    let per_unit_preprocess: Vec<f64> = rows
        .iter()
        .map(|r| r.preprocess_ns as f64 / (r.n + r.m) as f64)
        .collect();
    let spread = |xs: &[f64]| {
        let min = xs.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = xs.iter().cloned().fold(0.0f64, f64::max);
        max / min
    };
    let solution_spread = spread(&per_solution);
    let preprocess_spread = spread(&per_unit_preprocess);
    let ok = solution_spread < 4.0 && preprocess_spread < 3.0;
    for (row, ns) in rows.iter().zip(&per_solution) {
        println!(
            "  n={:>6} m={:>6} N={:>7} iterations={:>8} ns/solution={:>7.1} preprocess_ns={:>9}",
            row.n, row.m, row.solutions, row.iterations, ns, row.preprocess_ns,
        );
    }
    println!(
        "criterion 7: {} — fixed k={SCALING_K}, n in {{10^3,10^4,10^5}}: ns/solution spread \
         {solution_spread:.2}x (< 4), preprocess per (n+m) spread {preprocess_spread:.2}x (< 3)",
        if ok { "PASS" } else { "FAIL" },
    );
    assert!(ok, "scaling spreads: per-solution {solution_spread:.2}, preprocess {preprocess_spread:.2}");
}

#[test]
fn criterion_8_space_bound() {
    let _g = gate();
    let mut failures = 0usize;
    let mut worst_ratio = 0.0f64;
    for row in scaling_rows() {
        let bound = UNDO_SPACE_FACTOR * (row.n + row.m);
        worst_ratio = worst_ratio.max(row.max_undo_entries as f64 / (row.n + row.m) as f64);
        if row.max_undo_entries > bound {
            failures += 1;
        }
    }
    for g in randomized_instances() {
        let og = OrderedGraph::from_graph(&g);
        let stats = enumerate(&og, &mut NullSink, &EnumerateOptions::default());
        if stats.max_undo_entries > UNDO_SPACE_FACTOR * (og.n() + og.m()) {
            failures += 1;
        }
    }
    let ok = failures == 0;
    println!(
        "criterion 8: {} — peak undo entries <= {UNDO_SPACE_FACTOR}*(n+m) in every run \
         (worst observed ratio {worst_ratio:.2})",
        if ok { "PASS" } else { "FAIL" },
    );
    assert!(ok, "{failures} runs exceeded the undo-space bound");
}
