//! Immutable undirected weighted graphs.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// An undirected edge, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub w: f64,
}

/// What happened to the raw edge stream while building a graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cleanup {
    pub self_loops_dropped: usize,
    pub parallel_collapsed: usize,
}

/// Undirected graph on vertices `0..n` with nonnegative weights.
///
/// The edge list is sorted by `(u, v)` with `u < v` and holds at most one edge
/// per unordered pair. The adjacency index is a CSR layout in which every edge
/// appears once from each endpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    offsets: Vec<usize>,
    adjacency: Vec<(Vertex, f64)>,
}

impl WeightedGraph {
    /// Builds a graph from raw `(u, v, w)` triples.
    ///
    /// Self-loops are dropped and parallel edges collapse to their minimum
    /// weight. Negative, NaN or infinite weights and out-of-range endpoints
    /// are rejected.
    pub fn from_edges<I>(n: usize, raw: I) -> Result<(Self, Cleanup)>
    where
        I: IntoIterator<Item = (Vertex, Vertex, f64)>,
    {
        let mut cleanup = Cleanup::default();
        let mut edges = Vec::new();
        for (a, b, w) in raw {
            if a >= n || b >= n {
                return Err(Error::usage(format!(
                    "edge ({a}, {b}) has an endpoint outside 0..{n}"
                )));
            }
            if !w.is_finite() {
                return Err(Error::usage(format!(
                    "edge ({a}, {b}) has non-finite weight {w}"
                )));
            }
            if w < 0.0 {
                return Err(Error::usage(format!(
                    "edge ({a}, {b}) has negative weight {w}"
                )));
            }
            if a == b {
                cleanup.self_loops_dropped += 1;
                continue;
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            edges.push(Edge { u, v, w });
        }
        edges.sort_by(|x, y| (x.u, x.v).cmp(&(y.u, y.v)).then(x.w.total_cmp(&y.w)));
        let before = edges.len();
        edges.dedup_by(|later, first| later.u == first.u && later.v == first.v);
        cleanup.parallel_collapsed = before - edges.len();
        Ok((Self::from_canonical(n, edges), cleanup))
    }

    /// Graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_canonical(n, Vec::new())
    }

    fn from_canonical(n: usize, edges: Vec<Edge>) -> Self {
        let mut degree = vec![0usize; n + 1];
        for e in &edges {
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
        let mut offsets = vec![0usize; n + 1];
        for v in 0..n {
            offsets[v + 1] = offsets[v] + degree[v];
        }
        let mut cursor = offsets.clone();
        let mut adjacency = vec![(0, 0.0); offsets[n]];
        for e in &edges {
            adjacency[cursor[e.u]] = (e.v, e.w);
            cursor[e.u] += 1;
            adjacency[cursor[e.v]] = (e.u, e.w);
            cursor[e.v] += 1;
        }
        WeightedGraph {
            n,
            edges,
            offsets,
            adjacency,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, f64)] {
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Weight of the edge `{u, v}`, if present.
    pub fn weight(&self, u: Vertex, v: Vertex) -> Option<f64> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges
            .binary_search_by(|e| (e.u, e.v).cmp(&(a, b)))
            .ok()
            .map(|i| self.edges[i].w)
    }

    /// True when every edge has weight exactly 1.
    pub fn is_unit_weight(&self) -> bool {
        self.edges.iter().all(|e| e.w == 1.0)
    }

    /// Union with another edge set on the same vertices, keeping the minimum
    /// weight per pair.
    pub fn union_with<I>(&self, extra: I) -> Self
    where
        I: IntoIterator<Item = (Vertex, Vertex, f64)>,
    {
        let raw = self.edges.iter().map(|e| (e.u, e.v, e.w)).chain(extra);
        Self::from_edges(self.n, raw)
            .expect("union of valid edge sets is valid")
            .0
    }

    /// Full rescan of the representation invariants.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        if self.offsets.len() != self.n + 1 || self.offsets[self.n] != 2 * self.edges.len() {
            return Err("adjacency size does not match edge list".into());
        }
        for pair in self.edges.windows(2) {
            if (pair[0].u, pair[0].v) >= (pair[1].u, pair[1].v) {
                return Err(format!(
                    "edges not strictly sorted at ({}, {})",
                    pair[1].u, pair[1].v
                ));
            }
        }
        for e in &self.edges {
            if e.u >= e.v || e.v >= self.n {
                return Err(format!("bad endpoints ({}, {})", e.u, e.v));
            }
            if !(e.w.is_finite() && e.w >= 0.0) {
                return Err(format!("bad weight on ({}, {})", e.u, e.v));
            }
            let fwd = self
                .neighbors(e.u)
                .iter()
                .filter(|&&(x, w)| x == e.v && w == e.w)
                .count();
            let back = self
                .neighbors(e.v)
                .iter()
                .filter(|&&(x, w)| x == e.u && w == e.w)
                .count();
            if fwd != 1 || back != 1 {
                return Err(format!("edge ({}, {}) not mirrored in adjacency", e.u, e.v));
            }
        }
        Ok(())
    }

    /// SHA-256 over the canonical edge-list serialization, as lowercase hex.
    pub fn fingerprint(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.to_edge_list_string().as_bytes());
        hex::encode(hasher.finalize())
    }

    /// Canonical edge-list text: a vertex-count header, then `u v w` sorted
    /// by `(u, v)` with shortest round-trip weights.
    pub fn to_edge_list_string(&self) -> String {
        let mut out = String::with_capacity(16 * self.edges.len() + 32);
        writeln!(out, "# vertices={}", self.n).unwrap();
        for e in &self.edges {
            writeln!(out, "{} {} {}", e.u, e.v, e.w).unwrap();
        }
        out
    }
}
