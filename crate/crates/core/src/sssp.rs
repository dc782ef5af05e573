//! Exact shortest-path oracles: multi-source Dijkstra, truncated searches and
//! an all-pairs matrix.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};

/// Default vertex cap for [`all_pairs_distances`].
pub const ALL_PAIRS_CAP: usize = 2000;

/// Result of a (multi-source) Dijkstra search.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceVector {
    pub sources: Vec<Vertex>,
    pub dist: Vec<f64>,
    pub parent: Vec<Option<Vertex>>,
    /// Source that realizes `dist[v]`; the smallest id among tied sources.
    pub origin: Vec<Option<Vertex>>,
}

impl DistanceVector {
    pub fn is_reachable(&self, v: Vertex) -> bool {
        self.dist[v].is_finite()
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Entry {
    dist: f64,
    origin: Vertex,
    vertex: Vertex,
}

impl Eq for Entry {}

impl Ord for Entry {
    // Reversed so that `BinaryHeap` pops the smallest (dist, origin, vertex).
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.origin.cmp(&self.origin))
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multi-source Dijkstra: `dist[v] = min over s in sources of dist(s, v)`.
///
/// Labels are compared lexicographically as `(dist, origin)`, so ties between
/// sources resolve to the smallest source id independent of input order.
pub fn dijkstra(g: &WeightedGraph, sources: &[Vertex]) -> Result<DistanceVector> {
    if sources.is_empty() {
        return Err(Error::usage("dijkstra needs at least one source"));
    }
    if let Some(&bad) = sources.iter().find(|&&s| s >= g.vertex_count()) {
        return Err(Error::usage(format!(
            "source {bad} is outside 0..{}",
            g.vertex_count()
        )));
    }
    Ok(multi_source(g, sources))
}

/// Like [`dijkstra`] but an empty source set yields all-infinite distances.
pub(crate) fn multi_source(g: &WeightedGraph, sources: &[Vertex]) -> DistanceVector {
    let n = g.vertex_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut origin: Vec<Option<Vertex>> = vec![None; n];
    let mut parent = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    for &s in sources {
        if dist[s] > 0.0 || origin[s].is_none_or(|o| s < o) {
            dist[s] = 0.0;
            origin[s] = Some(s);
            heap.push(Entry {
                dist: 0.0,
                origin: s,
                vertex: s,
            });
        }
    }
    while let Some(Entry {
        dist: d,
        origin: o,
        vertex: u,
    }) = heap.pop()
    {
        if done[u] || d != dist[u] || Some(o) != origin[u] {
            continue;
        }
        done[u] = true;
        for &(v, w) in g.neighbors(u) {
            if done[v] {
                continue;
            }
            let nd = d + w;
            let better = match nd.total_cmp(&dist[v]) {
                Ordering::Less => true,
                Ordering::Equal => origin[v].is_none_or(|ov| o < ov),
                Ordering::Greater => false,
            };
            if better {
                dist[v] = nd;
                origin[v] = Some(o);
                parent[v] = Some(u);
                heap.push(Entry {
                    dist: nd,
                    origin: o,
                    vertex: v,
                });
            }
        }
    }
    DistanceVector {
        sources: sources.to_vec(),
        dist,
        parent,
        origin,
    }
}

/// Reusable single-source search that only settles vertices strictly below a
/// per-vertex limit. Scratch arrays are reset lazily so repeated small
/// searches cost proportional to what they touch.
pub struct BoundedSearch {
    dist: Vec<f64>,
    done: Vec<bool>,
    touched: Vec<Vertex>,
    heap: BinaryHeap<Entry>,
}

impl BoundedSearch {
    pub fn new(n: usize) -> Self {
        BoundedSearch {
            dist: vec![f64::INFINITY; n],
            done: vec![false; n],
            touched: Vec::new(),
            heap: BinaryHeap::new(),
        }
    }

    /// Settles, in nondecreasing distance order, every vertex `x` reachable
    /// from `source` through vertices that all satisfy `dist < limit(x)`, and
    /// calls `visit(x, dist)` for each.
    pub fn run<L, F>(&mut self, g: &WeightedGraph, source: Vertex, limit: L, mut visit: F)
    where
        L: Fn(Vertex) -> f64,
        F: FnMut(Vertex, f64),
    {
        for &v in &self.touched {
            self.dist[v] = f64::INFINITY;
            self.done[v] = false;
        }
        self.touched.clear();
        self.heap.clear();
        let first = limit(source);
        if first.is_nan() || first <= 0.0 {
            return;
        }
        self.dist[source] = 0.0;
        self.touched.push(source);
        self.heap.push(Entry {
            dist: 0.0,
            origin: source,
            vertex: source,
        });
        while let Some(Entry {
            dist: d, vertex: u, ..
        }) = self.heap.pop()
        {
            if self.done[u] || d != self.dist[u] {
                continue;
            }
            self.done[u] = true;
            visit(u, d);
            for &(v, w) in g.neighbors(u) {
                if self.done[v] {
                    continue;
                }
                let nd = d + w;
                if nd < self.dist[v] && nd < limit(v) {
                    if self.dist[v].is_infinite() {
                        self.touched.push(v);
                    }
                    self.dist[v] = nd;
                    self.heap.push(Entry {
                        dist: nd,
                        origin: source,
                        vertex: v,
                    });
                }
            }
        }
    }
}

/// Dense symmetric distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> f64 {
        self.data[u * self.n + v]
    }

    pub fn row(&self, u: Vertex) -> &[f64] {
        &self.data[u * self.n..(u + 1) * self.n]
    }
}

/// All-pairs distances by Floyd-Warshall, refusing graphs above
/// [`ALL_PAIRS_CAP`] vertices.
pub fn all_pairs_distances(g: &WeightedGraph) -> Result<DistanceMatrix> {
    all_pairs_distances_capped(g, ALL_PAIRS_CAP)
}

pub fn all_pairs_distances_capped(g: &WeightedGraph, cap: usize) -> Result<DistanceMatrix> {
    let n = g.vertex_count();
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    let mut data = vec![f64::INFINITY; n * n];
    for v in 0..n {
        data[v * n + v] = 0.0;
    }
    for e in g.edges() {
        data[e.u * n + e.v] = e.w;
        data[e.v * n + e.u] = e.w;
    }
    for k in 0..n {
        for i in 0..n {
            let dik = data[i * n + k];
            if dik.is_infinite() {
                continue;
            }
            for j in 0..n {
                let cand = dik + data[k * n + j];
                if cand < data[i * n + j] {
                    data[i * n + j] = cand;
                }
            }
        }
    }
    Ok(DistanceMatrix { n, data })
}
