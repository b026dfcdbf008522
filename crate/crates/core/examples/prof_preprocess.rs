use std::hint::black_box;
use std::time::Instant;

use induced_subtrees::generate::random_k_degenerate;
use induced_subtrees::OrderedGraph;

fn flush_caches(sweep: &mut [u64]) {
    for (i, slot) in sweep.iter_mut().enumerate() {
        *slot = slot.wrapping_add(i as u64);
    }
    black_box(&sweep[sweep.len() / 2]);
}

fn main() {
    let reps = 9;
    let mut sweep = vec![0u64; 64 * 1024 * 1024 / 8];
    for n in [1_000usize, 10_000, 100_000] {
        let g = random_k_degenerate(n, 3, 2024);
        let units = g.n() + g.m();
        let mut best_part = u128::MAX;
        let mut best_plain = u128::MAX;
        // interleave variants so box-level drift hits both equally
        for _ in 0..reps {
            std::env::remove_var("NO_PARTITION");
            flush_caches(&mut sweep);
            let t = Instant::now();
            let og = OrderedGraph::from_graph(&g);
            best_part = best_part.min(t.elapsed().as_nanos());
            black_box(og.m());

            std::env::set_var("NO_PARTITION", "1");
            flush_caches(&mut sweep);
            let t = Instant::now();
            let og = OrderedGraph::from_graph(&g);
            best_plain = best_plain.min(t.elapsed().as_nanos());
            black_box(og.m());
        }
        println!(
            "n={n:>7} partitioned={:.1}ns/u  plain={:.1}ns/u",
            best_part as f64 / units as f64,
            best_plain as f64 / units as f64,
        );
    }
}
