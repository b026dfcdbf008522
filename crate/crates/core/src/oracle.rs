//! Exhaustive brute-force ground truth for small graphs.
//!
//! Everything here is written to be obviously correct rather than fast: the
//! enumeration oracle scans all `2^n` vertex subsets and the degeneracy
//! oracle evaluates the definition directly. Both guard against instances
//! that are too large to scan.

use thiserror::Error;

use crate::graph::Graph;
use crate::VertexId;

/// Subset-scan limit for [`brute_force_enumerate`].
pub const MAX_ENUMERATE_VERTICES: usize = 25;
/// Subset-scan limit for [`brute_force_degeneracy`].
pub const MAX_DEGENERACY_VERTICES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph too large for brute force: {n} vertices (limit {limit})")]
    TooLarge { n: usize, limit: usize },
}

/// Canonical solution list: each solution ascending, solutions sorted
/// lexicographically, no duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    sets: Vec<Vec<VertexId>>,
}

impl SolutionSet {
    /// Canonicalizes an arbitrary list of solutions (each already ascending).
    pub fn from_sets(mut sets: Vec<Vec<VertexId>>) -> Self {
        debug_assert!(sets.iter().all(|s| s.windows(2).all(|w| w[0] < w[1])));
        sets.sort_unstable();
        SolutionSet { sets }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: &[VertexId]) -> bool {
        self.sets.binary_search_by(|probe| probe.as_slice().cmp(s)).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[VertexId]> {
        self.sets.iter().map(|s| s.as_slice())
    }

    pub fn as_slice(&self) -> &[Vec<VertexId>] {
        &self.sets
    }

    /// True when some solution occurs more than once.
    pub fn has_duplicates(&self) -> bool {
        self.sets.windows(2).any(|w| w[0] == w[1])
    }
}

/// Whether `s` induces a subtree of `g`: nonempty, connected, and with
/// exactly `|s| - 1` induced edges. The empty set does not count.
pub fn is_induced_subtree(g: &Graph, s: &[VertexId]) -> bool {
    if s.is_empty() {
        return false;
    }
    let mut in_s = vec![false; g.n()];
    for &v in s {
        debug_assert!((v as usize) < g.n());
        if in_s[v as usize] {
            return false; // repeated vertex: not a set
        }
        in_s[v as usize] = true;
    }
    let twice_edges: usize = s
        .iter()
        .map(|&v| g.neighbors(v).iter().filter(|&&w| in_s[w as usize]).count())
        .sum();
    if twice_edges != 2 * (s.len() - 1) {
        return false;
    }
    // Connectivity by traversal inside the induced subgraph.
    let mut visited = vec![false; g.n()];
    let mut stack = vec![s[0]];
    visited[s[0] as usize] = true;
    let mut reached = 0usize;
    while let Some(v) = stack.pop() {
        reached += 1;
        for &w in g.neighbors(v) {
            if in_s[w as usize] && !visited[w as usize] {
                visited[w as usize] = true;
                stack.push(w);
            }
        }
    }
    reached == s.len()
}

/// Every induced subtree of `g`, by scanning all nonempty vertex subsets.
pub fn brute_force_enumerate(g: &Graph) -> Result<SolutionSet, OracleError> {
    let n = g.n();
    if n > MAX_ENUMERATE_VERTICES {
        return Err(OracleError::TooLarge { n, limit: MAX_ENUMERATE_VERTICES });
    }
    let check = |mask: u32| -> Option<Vec<VertexId>> {
        let s: Vec<VertexId> = (0..n as VertexId).filter(|&v| mask >> v & 1 == 1).collect();
        is_induced_subtree(g, &s).then_some(s)
    };
    let top = if n == 0 { 1 } else { 1u32 << n };

    #[cfg(feature = "parallel")]
    let sets: Vec<Vec<VertexId>> = {
        use rayon::prelude::*;
        (1..top).into_par_iter().filter_map(check).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let sets: Vec<Vec<VertexId>> = (1..top).filter_map(check).collect();

    Ok(SolutionSet::from_sets(sets))
}

/// The degeneracy of `g` straight from the definition: the maximum over all
/// nonempty induced subgraphs of their minimum degree.
pub fn brute_force_degeneracy(g: &Graph) -> Result<usize, OracleError> {
    let n = g.n();
    if n > MAX_DEGENERACY_VERTICES {
        return Err(OracleError::TooLarge { n, limit: MAX_DEGENERACY_VERTICES });
    }
    let adj_mask: Vec<u32> = (0..n as VertexId)
        .map(|v| g.neighbors(v).iter().fold(0u32, |acc, &w| acc | 1 << w))
        .collect();
    let mut k = 0usize;
    for mask in 1u32..if n == 0 { 1 } else { 1u32 << n } {
        let min_degree = (0..n)
            .filter(|&v| mask >> v & 1 == 1)
            .map(|v| (adj_mask[v] & mask).count_ones() as usize)
            .min()
            .expect("mask nonempty");
        k = k.max(min_degree);
    }
    Ok(k)
}
