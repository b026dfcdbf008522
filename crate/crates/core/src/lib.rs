//! Enumeration of all induced subtrees of a simple undirected graph.
//!
//! An *induced subtree* is a vertex set `S` whose induced subgraph is
//! connected and acyclic. The enumerator works by binary partition: it grows
//! a subtree one vertex at a time, splitting the solution space at each step
//! into "contains `u`" and "excludes `u`" subproblems, and it keeps the
//! bookkeeping cheap by processing vertices in a degeneracy order. On a graph
//! with degeneracy `k` this yields amortized `O(k)` work per enumerated
//! subtree after linear-time preprocessing.
//!
//! # Example
//!
//! ```
//! use induced_subtrees::{Graph, OrderedGraph};
//! use induced_subtrees::enumerate::{enumerate, CollectSink, EnumerateOptions};
//!
//! // A 4-cycle with one chord: 0-1-2-3-0 plus 0-2.
//! let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
//! let og = OrderedGraph::from_graph(&g);
//!
//! let mut sink = CollectSink::default();
//! let opts = EnumerateOptions { emit_full_sets: true, ..Default::default() };
//! let stats = enumerate(&og, &mut sink, &opts);
//!
//! assert_eq!(stats.solutions, 11);
//! assert!(sink.sets.iter().all(|s| s.len() <= 3)); // every 4-set has a cycle
//! ```
//!
//! The [`oracle`] module provides an exhaustive brute-force reference for
//! small graphs, and [`generate::random_k_degenerate`] builds seeded random
//! graphs of bounded degeneracy for tests and benchmarks.

pub mod degeneracy;
pub mod enumerate;
pub mod generate;
pub mod graph;
pub mod oracle;

/// Dense 0-based vertex index.
pub type VertexId = u32;

pub use degeneracy::{
    build_ordered_graph, compute_degeneracy_ordering, verify_ordering, DegeneracyOrdering,
    OrderedGraph,
};
pub use graph::{Graph, GraphError, ParseOptions};
