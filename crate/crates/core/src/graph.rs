//! Simple undirected graphs with sorted adjacency lists.
//!
//! [`Graph`] is the input representation for everything else in this crate:
//! immutable after construction, stored as a compact CSR layout, with every
//! adjacency list strictly ascending and every edge present in both endpoint
//! lists. Construction rejects self-loops and (by default) duplicate edges.

use std::fmt::Write as _;

use thiserror::Error;

use crate::VertexId;

/// Errors from building or parsing a graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(VertexId, VertexId),
    #[error("edge endpoint {vertex} out of range for {n} vertices")]
    EndpointOutOfRange { vertex: VertexId, n: usize },
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("vertex {0} never appears; ids must be dense (use a `p <n> <m>` header to declare isolated vertices)")]
    MissingVertex(VertexId),
    #[error("header declares {header} edges but the input has {actual}")]
    EdgeCountMismatch { header: usize, actual: usize },
}

/// Options for [`Graph::parse_edge_list`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Silently drop repeated edges instead of rejecting the input.
    pub dedupe_edges: bool,
}

/// Immutable simple undirected graph.
///
/// Invariants, established at construction and relied upon everywhere:
/// no self-loops, no duplicate edges, `v ∈ N(u) ⇔ u ∈ N(v)`, and each
/// adjacency list strictly ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<u32>,
    neighbors: Vec<VertexId>,
}

impl Graph {
    /// The graph with no vertices.
    pub fn empty() -> Self {
        Graph { offsets: vec![0], neighbors: Vec::new() }
    }

    /// Builds a graph on `n` vertices from an edge list.
    ///
    /// Endpoints must be `< n`; self-loops and duplicate edges are rejected.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        assert!(n <= 1 << 31, "vertex count too large");
        assert!(edges.len() < u32::MAX as usize / 2, "edge count too large");
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            for w in [u, v] {
                if w as usize >= n {
                    return Err(GraphError::EndpointOutOfRange { vertex: w, n });
                }
            }
        }

        let mut offsets = vec![0u32; n + 1];
        for &(u, v) in edges {
            offsets[u as usize + 1] += 1;
            offsets[v as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut neighbors = vec![0 as VertexId; 2 * edges.len()];
        let mut cursor: Vec<u32> = offsets[..n].to_vec();
        for &(u, v) in edges {
            neighbors[cursor[u as usize] as usize] = v;
            cursor[u as usize] += 1;
            neighbors[cursor[v as usize] as usize] = u;
            cursor[v as usize] += 1;
        }
        for u in 0..n {
            neighbors[offsets[u] as usize..offsets[u + 1] as usize].sort_unstable();
        }
        for u in 0..n {
            let list = &neighbors[offsets[u] as usize..offsets[u + 1] as usize];
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let v = w[0];
                return Err(GraphError::DuplicateEdge(
                    (u as VertexId).min(v),
                    (u as VertexId).max(v),
                ));
            }
        }
        Ok(Graph { offsets, neighbors })
    }

    /// Parses the plain edge-list text format.
    ///
    /// One edge per line as `u v`; blank lines and lines starting with `#`
    /// are ignored. An optional first non-comment line `p <n> <m>` fixes the
    /// vertex count, which is the only way to declare isolated vertices.
    /// Without a header, every id in `0..=max_id` must appear.
    pub fn parse_edge_list(text: &str, options: &ParseOptions) -> Result<Self, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
        let mut seen: std::collections::HashSet<VertexId> = std::collections::HashSet::new();
        let mut max_id: Option<VertexId> = None;

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let first = tokens.next().expect("non-empty line has a token");
            if first == "p" {
                if header.is_some() || !edges.is_empty() {
                    return Err(GraphError::Malformed {
                        line: line_no,
                        msg: "header must be the first non-comment line".into(),
                    });
                }
                let n = parse_token(tokens.next(), line_no)?;
                let m = parse_token(tokens.next(), line_no)?;
                if tokens.next().is_some() {
                    return Err(GraphError::Malformed {
                        line: line_no,
                        msg: "expected `p <n> <m>`".into(),
                    });
                }
                header = Some((n as usize, m as usize));
                continue;
            }
            let u: VertexId = parse_str(first, line_no)?;
            let v: VertexId = parse_token(tokens.next(), line_no)?;
            if tokens.next().is_some() {
                return Err(GraphError::Malformed {
                    line: line_no,
                    msg: "expected two integers `u v`".into(),
                });
            }
            seen.insert(u);
            seen.insert(v);
            max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
            edges.push((u, v));
        }

        let n = match header {
            Some((n, _)) => n,
            None => max_id.map_or(0, |m| m as usize + 1),
        };
        if header.is_none() {
            // Dense ids required: with k distinct ids and max id >= k, some
            // id in 0..=k is missing, so the scan below is bounded.
            if let Some(max) = max_id {
                if seen.len() != max as usize + 1 {
                    let missing = (0..=seen.len() as VertexId)
                        .find(|v| !seen.contains(v))
                        .expect("pigeonhole");
                    return Err(GraphError::MissingVertex(missing));
                }
            }
        }
        if options.dedupe_edges {
            for e in &mut edges {
                *e = (e.0.min(e.1), e.0.max(e.1));
            }
            edges.sort_unstable();
            edges.dedup();
        } else if let Some((_, m)) = header {
            if m != edges.len() {
                return Err(GraphError::EdgeCountMismatch { header: m, actual: edges.len() });
            }
        }
        Self::from_edges(n, &edges)
    }

    /// Serializes to the edge-list format with a `p <n> <m>` header.
    ///
    /// `parse_edge_list` of the result reproduces the graph exactly.
    pub fn to_edge_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p {} {}", self.n(), self.m()).unwrap();
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of edges.
    pub fn m(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Degree of `u`.
    pub fn degree(&self, u: VertexId) -> usize {
        self.neighbors(u).len()
    }

    /// Neighbors of `u`, strictly ascending.
    pub fn neighbors(&self, u: VertexId) -> &[VertexId] {
        &self.neighbors[self.offsets[u as usize] as usize..self.offsets[u as usize + 1] as usize]
    }

    /// All edges as `(u, v)` with `u < v`, lexicographically ascending.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.n() as VertexId).flat_map(move |u| {
            self.neighbors(u).iter().copied().filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    /// Full-scan check of the structural invariants; used by tests.
    pub fn check_invariants(&self) -> bool {
        let n = self.n();
        for u in 0..n as VertexId {
            let list = self.neighbors(u);
            if !list.windows(2).all(|w| w[0] < w[1]) {
                return false;
            }
            for &v in list {
                if v as usize >= n || v == u || self.neighbors(v).binary_search(&u).is_err() {
                    return false;
                }
            }
        }
        true
    }
}

fn parse_token(token: Option<&str>, line: usize) -> Result<VertexId, GraphError> {
    match token {
        Some(t) => parse_str(t, line),
        None => Err(GraphError::Malformed { line, msg: "missing integer".into() }),
    }
}

fn parse_str(token: &str, line: usize) -> Result<VertexId, GraphError> {
    token.parse::<VertexId>().map_err(|_| GraphError::Malformed {
        line,
        msg: format!("bad integer `{token}`"),
    })
}
