//! Pivots, bunches and hopset assembly.
//!
//! For a vertex `v` whose top level is `i`, its bunch is every `u` in `V_i`
//! strictly closer to `v` than the nearest vertex of `V_{i+1}`. Level `i` of
//! the hopset joins each such `v` to its bunch and to its level-`(i+1)` pivot,
//! and every edge carries the exact graph distance between its endpoints.
//! When `V_{i+1}` is empty or unreachable from `v` the threshold is infinite,
//! so the top level is a clique on each component's share of `V_k`.

use std::io::BufRead;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};
use crate::hierarchy::LevelAssignment;
use crate::sssp::{multi_source, BoundedSearch};

/// Nearest level-`i` vertex for every vertex, for `i` in `1..=k`.
///
/// Ties go to the smallest vertex id.
#[derive(Debug, Clone, PartialEq)]
pub struct PivotTable {
    k: u32,
    dist: Vec<Vec<f64>>,
    pivot: Vec<Vec<Option<Vertex>>>,
}

impl PivotTable {
    pub fn k(&self) -> u32 {
        self.k
    }

    /// `dist(v, V_i)`; zero at level 0 and infinite above `k`.
    #[inline]
    pub fn distance(&self, i: u32, v: Vertex) -> f64 {
        match i {
            0 => 0.0,
            i if i > self.k => f64::INFINITY,
            i => self.dist[i as usize - 1][v],
        }
    }

    /// `p_i(v)`, absent above `k` or when `V_i` is unreachable from `v`.
    pub fn pivot(&self, i: u32, v: Vertex) -> Option<Vertex> {
        match i {
            0 => Some(v),
            i if i > self.k => None,
            i => self.pivot[i as usize - 1][v],
        }
    }

    pub fn distances(&self, i: u32) -> &[f64] {
        &self.dist[i as usize - 1]
    }
}

pub fn compute_pivots(g: &WeightedGraph, levels: &LevelAssignment) -> Result<PivotTable> {
    check_sizes(g, levels)?;
    let k = levels.k();
    let per_level: Vec<_> = (1..=k)
        .into_par_iter()
        .map(|i| {
            let search = multi_source(g, levels.members(i));
            (search.dist, search.origin)
        })
        .collect();
    let (dist, pivot) = per_level.into_iter().unzip();
    Ok(PivotTable { k, dist, pivot })
}

fn check_sizes(g: &WeightedGraph, levels: &LevelAssignment) -> Result<()> {
    if levels.vertex_count() != g.vertex_count() {
        return Err(Error::usage(format!(
            "level assignment covers {} vertices, graph has {}",
            levels.vertex_count(),
            g.vertex_count()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BunchMethod {
    /// One search per bunch owner, stopped at its pivot distance.
    Truncated,
    /// One pruned search per level-`i` vertex `w`, collecting every `v` with
    /// `dist(v, w) < dist(v, V_{i+1})`, then inverted.
    #[default]
    Clusters,
}

impl FromStr for BunchMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "truncated" => Ok(BunchMethod::Truncated),
            "clusters" => Ok(BunchMethod::Clusters),
            other => Err(Error::usage(format!("unknown bunch method '{other}'"))),
        }
    }
}

/// Bunches of every vertex whose top level is `level`, sorted by owner; each
/// bunch is sorted by member id and includes the owner at distance zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Bunches {
    pub level: u32,
    pub sets: Vec<(Vertex, Vec<(Vertex, f64)>)>,
}

impl Bunches {
    pub fn get(&self, v: Vertex) -> Option<&[(Vertex, f64)]> {
        self.sets
            .binary_search_by_key(&v, |(owner, _)| *owner)
            .ok()
            .map(|i| self.sets[i].1.as_slice())
    }

    pub fn member_ids(&self, v: Vertex) -> Option<Vec<Vertex>> {
        self.get(v).map(|b| b.iter().map(|&(u, _)| u).collect())
    }

    pub fn total_size(&self) -> usize {
        self.sets.iter().map(|(_, b)| b.len()).sum()
    }
}

pub fn compute_bunches(
    g: &WeightedGraph,
    levels: &LevelAssignment,
    pivots: &PivotTable,
    level: u32,
    method: BunchMethod,
) -> Result<Bunches> {
    check_sizes(g, levels)?;
    if level > levels.k() {
        return Err(Error::usage(format!(
            "level {level} exceeds k={}",
            levels.k()
        )));
    }
    let n = g.vertex_count();
    let threshold = |v: Vertex| pivots.distance(level + 1, v);
    let sets = match method {
        BunchMethod::Truncated => {
            let owners: Vec<Vertex> = levels.exact_level(level).collect();
            owners
                .into_par_iter()
                .map_init(
                    || BoundedSearch::new(n),
                    |search, v| {
                        let limit = threshold(v);
                        let mut bunch = Vec::new();
                        search.run(
                            g,
                            v,
                            |_| limit,
                            |u, d| {
                                if levels.level(u) >= level {
                                    bunch.push((u, d));
                                }
                            },
                        );
                        bunch.sort_unstable_by_key(|&(u, _)| u);
                        (v, bunch)
                    },
                )
                .collect()
        }
        BunchMethod::Clusters => {
            let mut hits: Vec<(Vertex, Vertex, f64)> = levels
                .members(level)
                .par_iter()
                .map_init(
                    || BoundedSearch::new(n),
                    |search, &w| {
                        let mut found = Vec::new();
                        search.run(g, w, threshold, |x, d| {
                            if levels.level(x) == level {
                                found.push((x, w, d));
                            }
                        });
                        found
                    },
                )
                .flatten()
                .collect();
            hits.par_sort_unstable_by_key(|&(x, w, _)| (x, w));
            // Owners at distance zero from V_{i+1} (zero-weight edges) have
            // empty bunches and appear in no cluster.
            let mut sets: Vec<(Vertex, Vec<(Vertex, f64)>)> =
                levels.exact_level(level).map(|v| (v, Vec::new())).collect();
            let mut slot = 0;
            for (x, w, d) in hits {
                while sets[slot].0 != x {
                    slot += 1;
                }
                sets[slot].1.push((w, d));
            }
            sets
        }
    };
    Ok(Bunches { level, sets })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopEdge {
    pub u: Vertex,
    pub v: Vertex,
    pub w: f64,
    pub level: u32,
}

/// Hopset edges `E_0 ∪ … ∪ E_k`, sorted by `(level, u, v)` with `u < v` and
/// one edge per pair within a level.
#[derive(Debug, Clone, PartialEq)]
pub struct Hopset {
    pub n: usize,
    pub k: u32,
    pub seed: Option<u64>,
    pub graph_fingerprint: String,
    pub probabilities: Vec<f64>,
    pub edges: Vec<HopEdge>,
    /// Opaque provenance echoed into the file header (one line, no newlines).
    pub run_config: Option<String>,
}

impl Hopset {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn level_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.k as usize + 1];
        for e in &self.edges {
            counts[e.level as usize] += 1;
        }
        counts
    }

    /// Edges as `(u, v, w)` triples, levels dropped.
    pub fn triples(&self) -> impl Iterator<Item = (Vertex, Vertex, f64)> + '_ {
        self.edges.iter().map(|e| (e.u, e.v, e.w))
    }

    pub fn to_text(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::with_capacity(24 * self.edges.len() + 256);
        let seed = self
            .seed
            .map_or_else(|| "none".to_string(), |s| s.to_string());
        writeln!(out, "# hopset n={} k={} seed={}", self.n, self.k, seed).unwrap();
        writeln!(out, "# graph={}", self.graph_fingerprint).unwrap();
        let q: Vec<String> = self.probabilities.iter().map(f64::to_string).collect();
        writeln!(out, "# q={}", q.join(" ")).unwrap();
        if let Some(run) = &self.run_config {
            writeln!(out, "# run={run}").unwrap();
        }
        for e in &self.edges {
            writeln!(out, "{} {} {} {}", e.u, e.v, e.w, e.level).unwrap();
        }
        out
    }

    pub fn parse<R: BufRead>(reader: R) -> Result<Self> {
        let mut header: Option<(usize, u32, Option<u64>)> = None;
        let mut fingerprint = String::new();
        let mut probabilities = Vec::new();
        let mut run_config = None;
        let mut edges = Vec::new();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.map_err(|e| Error::io("<hopset>", e))?;
            let bad = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix("# hopset ") {
                let mut n = None;
                let mut k = None;
                let mut seed = None;
                for field in rest.split_whitespace() {
                    match field.split_once('=') {
                        Some(("n", x)) => n = x.parse().ok(),
                        Some(("k", x)) => k = x.parse().ok(),
                        Some(("seed", "none")) => {}
                        Some(("seed", x)) => {
                            seed = Some(x.parse().map_err(|_| bad(format!("bad seed '{x}'")))?)
                        }
                        _ => return Err(bad(format!("unknown header field '{field}'"))),
                    }
                }
                match (n, k) {
                    (Some(n), Some(k)) => header = Some((n, k, seed)),
                    _ => return Err(bad("header needs n= and k=".into())),
                }
                continue;
            }
            if let Some(fp) = trimmed.strip_prefix("# graph=") {
                fingerprint = fp.trim().to_string();
                continue;
            }
            if let Some(q) = trimmed.strip_prefix("# q=") {
                probabilities = q
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| bad(format!("bad probability '{t}'"))))
                    .collect::<Result<_>>()?;
                continue;
            }
            if let Some(run) = trimmed.strip_prefix("# run=") {
                run_config = Some(run.to_string());
                continue;
            }
            if trimmed.starts_with('#') {
                continue;
            }
            let Some((n, k, _)) = header else {
                return Err(bad("edge before '# hopset' header".into()));
            };
            let t: Vec<&str> = trimmed.split_whitespace().collect();
            if t.len() != 4 {
                return Err(bad(format!(
                    "expected 'u v w level', found {} fields",
                    t.len()
                )));
            }
            let u: Vertex = t[0]
                .parse()
                .map_err(|_| bad(format!("bad vertex '{}'", t[0])))?;
            let v: Vertex = t[1]
                .parse()
                .map_err(|_| bad(format!("bad vertex '{}'", t[1])))?;
            let w: f64 = t[2]
                .parse()
                .map_err(|_| bad(format!("bad weight '{}'", t[2])))?;
            let level: u32 = t[3]
                .parse()
                .map_err(|_| bad(format!("bad level '{}'", t[3])))?;
            if u >= n || v >= n || u == v {
                return Err(bad(format!("bad endpoints ({u}, {v}) for n={n}")));
            }
            if !(w.is_finite() && w >= 0.0) {
                return Err(bad(format!("bad weight {w}")));
            }
            if level > k {
                return Err(bad(format!("level {level} above k={k}")));
            }
            edges.push(HopEdge {
                u: u.min(v),
                v: u.max(v),
                w,
                level,
            });
        }
        let (n, k, seed) = header.ok_or(Error::Parse {
            line: 0,
            message: "missing '# hopset' header".into(),
        })?;
        Ok(Hopset {
            n,
            k,
            seed,
            graph_fingerprint: fingerprint,
            probabilities,
            edges: canonicalize(edges),
            run_config,
        })
    }
}

/// Sorts by `(level, u, v)` and merges duplicate pairs within a level to
/// their minimum weight.
fn canonicalize(mut edges: Vec<HopEdge>) -> Vec<HopEdge> {
    edges.par_sort_unstable_by(|a, b| {
        (a.level, a.u, a.v)
            .cmp(&(b.level, b.u, b.v))
            .then(a.w.total_cmp(&b.w))
    });
    edges.dedup_by(|later, first| {
        (later.level, later.u, later.v) == (first.level, first.u, first.v)
    });
    edges
}

/// Everything a build produces.
#[derive(Debug, Clone)]
pub struct Construction {
    pub hopset: Hopset,
    pub levels: LevelAssignment,
    pub pivots: PivotTable,
}

/// Samples a hierarchy from `seed` and builds the hopset with the cluster
/// method. Graphs with fewer than two vertices get an empty hopset.
pub fn build_hopset(g: &WeightedGraph, k: u32, seed: u64) -> Result<Construction> {
    if k == 0 {
        return Err(Error::usage("k must be at least 1"));
    }
    let levels = if g.vertex_count() < 2 {
        LevelAssignment::from_levels(k, vec![0; g.vertex_count()])?
    } else {
        LevelAssignment::sample(g.vertex_count(), k, seed)?
    };
    let mut out = build_with_levels(g, levels, BunchMethod::Clusters)?;
    out.hopset.seed = Some(seed);
    Ok(out)
}

pub fn build_with_levels(
    g: &WeightedGraph,
    levels: LevelAssignment,
    method: BunchMethod,
) -> Result<Construction> {
    let pivots = compute_pivots(g, &levels)?;
    let k = levels.k();
    let mut edges = Vec::new();
    for i in 0..=k {
        let bunches = compute_bunches(g, &levels, &pivots, i, method)?;
        for (v, bunch) in &bunches.sets {
            edges.extend(
                bunch
                    .iter()
                    .filter(|&&(u, _)| u != *v)
                    .map(|&(u, w)| HopEdge {
                        u: u.min(*v),
                        v: u.max(*v),
                        w,
                        level: i,
                    }),
            );
        }
        for v in levels.exact_level(i) {
            if let Some(p) = pivots.pivot(i + 1, v) {
                edges.push(HopEdge {
                    u: p.min(v),
                    v: p.max(v),
                    w: pivots.distance(i + 1, v),
                    level: i,
                });
            }
        }
    }
    let hopset = Hopset {
        n: g.vertex_count(),
        k,
        seed: levels.seed(),
        graph_fingerprint: g.fingerprint(),
        probabilities: levels.probabilities().to_vec(),
        edges: canonicalize(edges),
        run_config: None,
    };
    Ok(Construction {
        hopset,
        levels,
        pivots,
    })
}
