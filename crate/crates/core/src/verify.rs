//! Independent checks of a built hopset.
//!
//! Everything here recomputes distances from the input graph; nothing is
//! taken from the construction besides the hopset edges themselves.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::Hopset;
use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};
use crate::params::HopsetParams;
use crate::rng;
use crate::size::{size_stats, SizeStats};
use crate::sssp::multi_source;

/// Relative tolerance on every stretch and lower-bound comparison.
pub const TOLERANCE: f64 = 1e-9;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// `G ∪ H` with levels dropped and one edge per pair at the minimum weight.
pub fn union_graph(g: &WeightedGraph, h: &Hopset) -> WeightedGraph {
    g.union_with(h.triples())
}

/// Synchronous Bellman-Ford rounds from one source.
///
/// After `t` calls to [`HopRelaxation::step`], `dist()` holds `dist^(t)`, the
/// shortest distance using at most `t` edges. Each round only rescans the
/// edges of vertices that improved in the previous round; any other vertex
/// offers the same candidates it offered before.
pub struct HopRelaxation<'g> {
    graph: &'g WeightedGraph,
    dist: Vec<f64>,
    next: Vec<f64>,
    last_improved: Vec<u64>,
    frontier: Vec<Vertex>,
    marked: Vec<bool>,
    rounds: u64,
}

impl<'g> HopRelaxation<'g> {
    pub fn new(graph: &'g WeightedGraph, source: Vertex) -> Self {
        let n = graph.vertex_count();
        let mut dist = vec![f64::INFINITY; n];
        dist[source] = 0.0;
        HopRelaxation {
            graph,
            next: dist.clone(),
            dist,
            last_improved: vec![0; n],
            frontier: vec![source],
            marked: vec![false; n],
            rounds: 0,
        }
    }

    pub fn dist(&self) -> &[f64] {
        &self.dist
    }

    pub fn rounds(&self) -> u64 {
        self.rounds
    }

    /// True once another round cannot change anything.
    pub fn converged(&self) -> bool {
        self.frontier.is_empty()
    }

    /// Runs one round; returns whether any distance improved.
    pub fn step(&mut self) -> bool {
        if self.frontier.is_empty() {
            self.rounds += 1;
            return false;
        }
        let mut changed = Vec::new();
        for &u in &self.frontier {
            let du = self.dist[u];
            for &(v, w) in self.graph.neighbors(u) {
                let cand = du + w;
                if cand < self.next[v] {
                    self.next[v] = cand;
                    if !self.marked[v] {
                        self.marked[v] = true;
                        changed.push(v);
                    }
                }
            }
        }
        self.rounds += 1;
        for &v in &changed {
            self.dist[v] = self.next[v];
            self.marked[v] = false;
            self.last_improved[v] = self.rounds;
        }
        self.frontier = changed;
        !self.frontier.is_empty()
    }

    /// Runs until `rounds() == limit` or convergence.
    pub fn run_to(&mut self, limit: u64) {
        while self.rounds < limit && !self.frontier.is_empty() {
            self.step();
        }
    }

    /// Fewest rounds that achieve the current `dist[v]`.
    pub fn hops(&self, v: Vertex) -> Option<u64> {
        self.dist[v].is_finite().then_some(self.last_improved[v])
    }
}

/// `dist^(β)` over `G ∪ H` from `source`.
pub fn bounded_hop_distances(
    g: &WeightedGraph,
    h: &Hopset,
    source: Vertex,
    beta: u64,
) -> Result<Vec<f64>> {
    if source >= g.vertex_count() {
        return Err(Error::usage(format!("source {source} outside graph")));
    }
    check_pairing(g, h)?;
    let union = union_graph(g, h);
    let mut relax = HopRelaxation::new(&union, source);
    relax.run_to(beta);
    Ok(relax.dist)
}

/// The fingerprint covers the vertex count, so any mismatch in n or in the
/// edge set surfaces as a fingerprint mismatch.
fn check_pairing(g: &WeightedGraph, h: &Hopset) -> Result<()> {
    let found = g.fingerprint();
    if h.graph_fingerprint != found {
        return Err(Error::FingerprintMismatch {
            expected: h.graph_fingerprint.clone(),
            found,
        });
    }
    if h.n != g.vertex_count() {
        return Err(Error::usage(format!(
            "hopset header claims {} vertices, graph has {}",
            h.n,
            g.vertex_count()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairMode {
    /// Uniform source, uniform target among the other vertices.
    Uniform,
    /// Uniform source; the j-th pair takes its target from distance decile
    /// `j mod 10` of that source's reachable vertices.
    Stratified,
    Explicit(Vec<(Vertex, Vertex)>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairSpec {
    pub mode: PairMode,
    pub count: usize,
    pub seed: u64,
    /// When set, targets are drawn only among reachable vertices at least
    /// this far from the source.
    pub min_distance: Option<f64>,
}

impl PairSpec {
    pub fn uniform(count: usize, seed: u64) -> Self {
        PairSpec {
            mode: PairMode::Uniform,
            count,
            seed,
            min_distance: None,
        }
    }

    pub fn stratified(count: usize, seed: u64) -> Self {
        PairSpec {
            mode: PairMode::Stratified,
            ..Self::uniform(count, seed)
        }
    }

    pub fn explicit(pairs: Vec<(Vertex, Vertex)>) -> Self {
        PairSpec {
            count: pairs.len(),
            mode: PairMode::Explicit(pairs),
            seed: 0,
            min_distance: None,
        }
    }

    pub fn with_min_distance(mut self, d: f64) -> Self {
        self.min_distance = Some(d);
        self
    }
}

enum Target {
    Fixed(Vertex),
    Drawn { seed: u64, index: usize },
}

/// Pair tasks in a thread-independent order: sources and per-pair seeds are
/// drawn sequentially up front.
fn pair_tasks(n: usize, spec: &PairSpec) -> Result<Vec<(Vertex, Target)>> {
    match &spec.mode {
        PairMode::Explicit(pairs) => {
            if let Some(&(u, v)) = pairs.iter().find(|&&(u, v)| u >= n || v >= n) {
                return Err(Error::usage(format!("pair ({u}, {v}) outside graph")));
            }
            Ok(pairs.iter().map(|&(u, v)| (u, Target::Fixed(v))).collect())
        }
        _ if n == 0 => Ok(Vec::new()),
        _ => {
            let mut rng = rng::stream(spec.seed, rng::PAIR_STREAM);
            Ok((0..spec.count)
                .map(|index| {
                    let u = rng.random_range(0..n);
                    (
                        u,
                        Target::Drawn {
                            seed: rng.random(),
                            index,
                        },
                    )
                })
                .collect())
        }
    }
}

fn choose_target(
    spec: &PairSpec,
    u: Vertex,
    dist: &[f64],
    seed: u64,
    index: usize,
) -> Option<Vertex> {
    let n = dist.len();
    let mut rng = rng::stream(seed, rng::PAIR_STREAM);
    if spec.mode == PairMode::Uniform && spec.min_distance.is_none() {
        if n < 2 {
            return None;
        }
        let r = rng.random_range(0..n - 1);
        return Some(if r >= u { r + 1 } else { r });
    }
    let min = spec.min_distance.unwrap_or(0.0);
    let mut eligible: Vec<Vertex> = (0..n)
        .filter(|&v| v != u && dist[v].is_finite() && dist[v] >= min)
        .collect();
    if eligible.is_empty() {
        return None;
    }
    if spec.mode == PairMode::Stratified {
        eligible.sort_by(|&a, &b| dist[a].total_cmp(&dist[b]).then(a.cmp(&b)));
        let bucket = index % 10;
        let lo = eligible.len() * bucket / 10;
        let hi = eligible.len() * (bucket + 1) / 10;
        if hi > lo {
            return Some(eligible[rng.random_range(lo..hi)]);
        }
    }
    Some(eligible[rng.random_range(0..eligible.len())])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairRecord {
    pub u: Vertex,
    pub v: Vertex,
    pub exact: f64,
    /// `None` when no path within the hop budget exists.
    pub bounded_hop: Option<f64>,
    /// `None` when unbounded.
    pub stretch: Option<f64>,
    /// Fewest hops achieving `bounded_hop`.
    pub hops_used: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub max_stretch: Option<f64>,
    pub mean_stretch: Option<f64>,
    pub max_hops_used: Option<u64>,
    pub violations: usize,
    pub below_exact: usize,
    pub pairs_checked: usize,
    pub pairs_skipped_unreachable: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightMismatch {
    pub u: Vertex,
    pub v: Vertex,
    pub level: u32,
    pub weight: f64,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightAudit {
    pub edges_checked: usize,
    pub sources: usize,
    pub exhaustive: bool,
    pub tolerance: f64,
    pub mismatches: usize,
    pub max_relative_error: f64,
    /// First few mismatches, by `(u, v)`.
    pub examples: Vec<WeightMismatch>,
}

impl WeightAudit {
    pub fn clean(&self) -> bool {
        self.mismatches == 0
    }
}

/// Graphs up to this size get an exhaustive edge-weight audit.
pub const EXHAUSTIVE_AUDIT_MAX_N: usize = 500;
/// Sources sampled by the audit on larger graphs.
pub const AUDIT_SAMPLE_SOURCES: usize = 64;

/// Checks hopset edge weights against fresh single-source searches.
///
/// Every edge is checked from its smaller endpoint. With `sample` set, only
/// edges whose smaller endpoint is among that many seeded random sources are
/// checked.
pub fn audit_edge_weights(
    g: &WeightedGraph,
    h: &Hopset,
    tolerance: f64,
    sample: Option<(usize, u64)>,
) -> Result<WeightAudit> {
    check_pairing(g, h)?;
    let mut sources: Vec<Vertex> = h.edges.iter().map(|e| e.u).collect();
    sources.sort_unstable();
    sources.dedup();
    let exhaustive = match sample {
        Some((count, seed)) if count < sources.len() => {
            let mut rng = rng::stream(seed, rng::PAIR_STREAM);
            let picked = rand::seq::index::sample(&mut rng, sources.len(), count);
            let mut chosen: Vec<Vertex> = picked.into_iter().map(|i| sources[i]).collect();
            chosen.sort_unstable();
            sources = chosen;
            false
        }
        _ => true,
    };
    let mut by_source: Vec<&crate::construct::HopEdge> = h.edges.iter().collect();
    by_source.sort_by_key(|e| (e.u, e.v, e.level));
    let results: Vec<(usize, f64, Vec<WeightMismatch>)> = sources
        .par_iter()
        .map(|&s| {
            let dist = multi_source(g, &[s]).dist;
            let lo = by_source.partition_point(|e| e.u < s);
            let hi = by_source.partition_point(|e| e.u <= s);
            let mut checked = 0;
            let mut worst: f64 = 0.0;
            let mut bad = Vec::new();
            for e in &by_source[lo..hi] {
                checked += 1;
                let d = dist[e.v];
                let rel = if e.w == d {
                    0.0
                } else if d.is_finite() && d > 0.0 {
                    (e.w - d).abs() / d
                } else {
                    f64::INFINITY
                };
                worst = worst.max(rel);
                if rel > tolerance {
                    bad.push(WeightMismatch {
                        u: e.u,
                        v: e.v,
                        level: e.level,
                        weight: e.w,
                        distance: d,
                    });
                }
            }
            (checked, worst, bad)
        })
        .collect();
    let mut audit = WeightAudit {
        edges_checked: 0,
        sources: sources.len(),
        exhaustive,
        tolerance,
        mismatches: 0,
        max_relative_error: 0.0,
        examples: Vec::new(),
    };
    for (checked, worst, bad) in results {
        audit.edges_checked += checked;
        audit.max_relative_error = audit.max_relative_error.max(worst);
        audit.mismatches += bad.len();
        audit.examples.extend(bad);
    }
    audit.examples.sort_by_key(|m| (m.u, m.v, m.level));
    audit.examples.truncate(10);
    Ok(audit)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StretchReport {
    pub schema_version: u32,
    pub graph_fingerprint: String,
    pub hopset_seed: Option<u64>,
    pub pair_spec: PairSpec,
    pub params: HopsetParams,
    pub tolerance: f64,
    pub size: SizeStats,
    pub weight_audit: WeightAudit,
    pub aggregate: Aggregate,
    pub passed: bool,
    pub pairs: Vec<PairRecord>,
}

impl StretchReport {
    /// Flat `u,v,exact,bounded_hop,stretch,hops_used` table.
    pub fn pairs_csv(&self) -> String {
        let mut out = String::from("u,v,exact,bounded_hop,stretch,hops_used\n");
        let opt = |x: Option<f64>| x.map_or_else(String::new, |v| v.to_string());
        for p in &self.pairs {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                p.u,
                p.v,
                p.exact,
                opt(p.bounded_hop),
                opt(p.stretch),
                p.hops_used.map_or_else(String::new, |h| h.to_string())
            ));
        }
        out
    }
}

fn stretch_of(exact: f64, bounded: Option<f64>) -> Option<f64> {
    let b = bounded?;
    if exact > 0.0 {
        Some(b / exact)
    } else if b == 0.0 {
        Some(1.0)
    } else {
        None
    }
}

/// Checks `dist_G ≤ dist^(β)_{G∪H} ≤ (1+ε) dist_G` on sampled pairs, with
/// `β` and `ε` taken from `params`.
pub fn verify_hopset(
    g: &WeightedGraph,
    h: &Hopset,
    params: &HopsetParams,
    spec: &PairSpec,
) -> Result<StretchReport> {
    check_pairing(g, h)?;
    if params.k != h.k {
        return Err(Error::usage(format!(
            "parameters are for k={}, hopset has k={}",
            params.k, h.k
        )));
    }
    let n = g.vertex_count();
    let union = union_graph(g, h);
    let tasks = pair_tasks(n, spec)?;
    let limit = (1.0 + params.epsilon) * (1.0 + TOLERANCE);

    let rows: Vec<Option<PairRecord>> = tasks
        .into_par_iter()
        .map(|(u, target)| {
            let exact = multi_source(g, &[u]).dist;
            let v = match target {
                Target::Fixed(v) => Some(v),
                Target::Drawn { seed, index } => choose_target(spec, u, &exact, seed, index),
            }?;
            if !exact[v].is_finite() {
                return None;
            }
            let mut relax = HopRelaxation::new(&union, u);
            relax.run_to(params.beta);
            let bounded = relax.dist()[v];
            let bounded_hop = bounded.is_finite().then_some(bounded);
            Some(PairRecord {
                u,
                v,
                exact: exact[v],
                bounded_hop,
                stretch: stretch_of(exact[v], bounded_hop),
                hops_used: relax.hops(v),
            })
        })
        .collect();

    let requested = rows.len();
    let mut pairs: Vec<PairRecord> = rows.into_iter().flatten().collect();
    pairs.sort_by_key(|p| (p.u, p.v));

    let mut aggregate = Aggregate {
        max_stretch: None,
        mean_stretch: None,
        max_hops_used: pairs.iter().filter_map(|p| p.hops_used).max(),
        violations: 0,
        below_exact: 0,
        pairs_checked: pairs.len(),
        pairs_skipped_unreachable: requested - pairs.len(),
    };
    let mut sum = 0.0;
    let mut finite = 0usize;
    for p in &pairs {
        match p.stretch {
            Some(s) if s <= limit => {}
            _ => aggregate.violations += 1,
        }
        if let Some(s) = p.stretch {
            sum += s;
            finite += 1;
            aggregate.max_stretch = Some(aggregate.max_stretch.map_or(s, |m: f64| m.max(s)));
        } else {
            aggregate.max_stretch = Some(f64::INFINITY);
        }
        if p.bounded_hop
            .is_some_and(|b| b < p.exact * (1.0 - TOLERANCE))
        {
            aggregate.below_exact += 1;
        }
    }
    if finite > 0 {
        aggregate.mean_stretch = Some(sum / finite as f64);
    }

    let weight_audit = if n <= EXHAUSTIVE_AUDIT_MAX_N {
        audit_edge_weights(g, h, TOLERANCE, None)?
    } else {
        audit_edge_weights(g, h, TOLERANCE, Some((AUDIT_SAMPLE_SOURCES, spec.seed)))?
    };

    Ok(StretchReport {
        schema_version: REPORT_SCHEMA_VERSION,
        graph_fingerprint: h.graph_fingerprint.clone(),
        hopset_seed: h.seed,
        pair_spec: spec.clone(),
        params: params.clone(),
        tolerance: TOLERANCE,
        size: size_stats(h, n, h.k),
        weight_audit,
        passed: aggregate.violations == 0 && aggregate.below_exact == 0,
        aggregate,
        pairs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinHops {
    pub hops: u64,
    /// False when the cap was reached without meeting the target.
    pub met: bool,
}

/// Smallest `t ≤ cap` with `dist^(t)_{G∪H}(u, v) ≤ target · dist_G(u, v)`.
pub fn min_hops_for_stretch(
    g: &WeightedGraph,
    h: &Hopset,
    u: Vertex,
    v: Vertex,
    target_stretch: f64,
    cap: u64,
) -> Result<MinHops> {
    let n = g.vertex_count();
    if u >= n || v >= n {
        return Err(Error::usage(format!("pair ({u}, {v}) outside graph")));
    }
    if target_stretch.is_nan() || target_stretch < 1.0 {
        return Err(Error::usage(format!(
            "target stretch must be >= 1, got {target_stretch}"
        )));
    }
    check_pairing(g, h)?;
    let exact = multi_source(g, &[u]).dist[v];
    if !exact.is_finite() {
        return Err(Error::Domain(format!("{v} is unreachable from {u}")));
    }
    let goal = target_stretch * exact * (1.0 + TOLERANCE);
    let union = union_graph(g, h);
    let mut relax = HopRelaxation::new(&union, u);
    loop {
        if relax.dist()[v] <= goal {
            return Ok(MinHops {
                hops: relax.rounds(),
                met: true,
            });
        }
        if relax.rounds() >= cap || relax.converged() {
            return Ok(MinHops {
                hops: cap,
                met: false,
            });
        }
        relax.step();
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmulatorPair {
    pub u: Vertex,
    pub v: Vertex,
    pub d: f64,
    /// Distance using hopset edges only; `None` if disconnected in `H`.
    pub dist_h: Option<f64>,
    pub additive: Option<f64>,
    /// `(dist_H - d) / (k · d^(1 - 1/k))`.
    pub ratio: Option<f64>,
    /// `d ≤ d_min`: reported, not judged.
    pub excluded: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmulatorReport {
    pub schema_version: u32,
    pub graph_fingerprint: String,
    pub pair_spec: PairSpec,
    pub k: u32,
    pub c: f64,
    pub d_min: f64,
    pub pairs_checked: usize,
    pub pairs_excluded: usize,
    pub pairs_skipped_unreachable: usize,
    /// Over judged pairs.
    pub max_ratio: Option<f64>,
    /// Over excluded small-distance pairs.
    pub max_ratio_excluded: Option<f64>,
    pub lower_bound_violations: usize,
    pub disconnected_in_h: usize,
    pub passed: bool,
    pub pairs: Vec<EmulatorPair>,
}

/// Default `d_min`: pairs at distance 1 or 2 are not judged.
pub const EMULATOR_D_MIN: f64 = 2.0;

/// Measures `H` alone as an emulator of an unweighted `G`: every judged pair
/// needs `d ≤ dist_H ≤ d + c · k · d^(1-1/k)`.
pub fn verify_emulator(
    g: &WeightedGraph,
    h: &Hopset,
    k: u32,
    c: f64,
    d_min: f64,
    spec: &PairSpec,
) -> Result<EmulatorReport> {
    check_pairing(g, h)?;
    if !g.is_unit_weight() {
        return Err(Error::usage(
            "emulator checks need an unweighted (unit-weight) graph",
        ));
    }
    if k == 0 {
        return Err(Error::usage("k must be at least 1"));
    }
    let n = g.vertex_count();
    let emulator = WeightedGraph::from_edges(n, h.triples())?.0;
    let tasks = pair_tasks(n, spec)?;
    let sublinear = |d: f64| k as f64 * d.powf(1.0 - 1.0 / k as f64);

    let rows: Vec<Option<EmulatorPair>> = tasks
        .into_par_iter()
        .map(|(u, target)| {
            let exact = multi_source(g, &[u]).dist;
            let v = match target {
                Target::Fixed(v) => Some(v),
                Target::Drawn { seed, index } => choose_target(spec, u, &exact, seed, index),
            }?;
            let d = exact[v];
            if !d.is_finite() {
                return None;
            }
            let in_h = multi_source(&emulator, &[u]).dist[v];
            let dist_h = in_h.is_finite().then_some(in_h);
            let additive = dist_h.map(|x| x - d);
            Some(EmulatorPair {
                u,
                v,
                d,
                dist_h,
                additive,
                ratio: additive.map(|a| if d > 0.0 { a / sublinear(d) } else { a }),
                excluded: d <= d_min,
            })
        })
        .collect();

    let requested = rows.len();
    let mut pairs: Vec<EmulatorPair> = rows.into_iter().flatten().collect();
    pairs.sort_by_key(|p| (p.u, p.v));

    let fold_max = |acc: Option<f64>, x: f64| Some(acc.map_or(x, |m: f64| m.max(x)));
    let mut max_ratio = None;
    let mut max_ratio_excluded = None;
    let mut lower_bound_violations = 0;
    let mut disconnected_in_h = 0;
    let mut over = 0;
    for p in &pairs {
        if p.dist_h.is_some_and(|x| x < p.d * (1.0 - TOLERANCE)) {
            lower_bound_violations += 1;
        }
        match (p.ratio, p.excluded) {
            (Some(r), false) => {
                max_ratio = fold_max(max_ratio, r);
                if r > c * (1.0 + TOLERANCE) {
                    over += 1;
                }
            }
            (Some(r), true) => max_ratio_excluded = fold_max(max_ratio_excluded, r),
            (None, excluded) => {
                disconnected_in_h += 1;
                if !excluded {
                    over += 1;
                }
            }
        }
    }
    let pairs_excluded = pairs.iter().filter(|p| p.excluded).count();
    Ok(EmulatorReport {
        schema_version: REPORT_SCHEMA_VERSION,
        graph_fingerprint: h.graph_fingerprint.clone(),
        pair_spec: spec.clone(),
        k,
        c,
        d_min,
        pairs_checked: pairs.len() - pairs_excluded,
        pairs_excluded,
        pairs_skipped_unreachable: requested - pairs.len(),
        max_ratio,
        max_ratio_excluded,
        lower_bound_violations,
        disconnected_in_h,
        passed: over == 0 && lower_bound_violations == 0,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_hopset, HopEdge};
    use crate::params::derive_params;

    fn unit_path(n: usize) -> WeightedGraph {
        WeightedGraph::from_edges(n, (1..n).map(|v| (v - 1, v, 1.0)))
            .unwrap()
            .0
    }

    fn bare_hopset(g: &WeightedGraph, k: u32, edges: Vec<HopEdge>) -> Hopset {
        Hopset {
            n: g.vertex_count(),
            k,
            seed: None,
            graph_fingerprint: g.fingerprint(),
            probabilities: vec![],
            edges,
            run_config: None,
        }
    }

    #[test]
    fn zero_hops_reach_only_the_source() {
        let g = unit_path(4);
        let h = bare_hopset(&g, 1, vec![]);
        let d = bounded_hop_distances(&g, &h, 1, 0).unwrap();
        assert_eq!(d[1], 0.0);
        assert!(d[0].is_infinite() && d[2].is_infinite() && d[3].is_infinite());
    }

    #[test]
    fn enough_hops_equal_dijkstra() {
        let g = unit_path(6);
        let h = bare_hopset(&g, 1, vec![]);
        let d = bounded_hop_distances(&g, &h, 0, 5).unwrap();
        assert_eq!(d, vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0]);
        let d = bounded_hop_distances(&g, &h, 0, 2).unwrap();
        assert_eq!(&d[..3], &[0.0, 1.0, 2.0]);
        assert!(d[3].is_infinite());
    }

    #[test]
    fn hop_edges_shorten_hop_count() {
        let g = unit_path(6);
        let h = bare_hopset(
            &g,
            1,
            vec![HopEdge {
                u: 0,
                v: 5,
                w: 5.0,
                level: 1,
            }],
        );
        let d = bounded_hop_distances(&g, &h, 0, 1).unwrap();
        assert_eq!(d[5], 5.0);
        let union = union_graph(&g, &h);
        let mut relax = HopRelaxation::new(&union, 0);
        relax.run_to(10);
        assert_eq!(relax.hops(5), Some(1));
        assert_eq!(relax.hops(4), Some(4));
        assert!(relax.converged());
    }

    #[test]
    fn identity_pair_has_unit_stretch() {
        let g = unit_path(5);
        let c = build_hopset(&g, 1, 0).unwrap();
        let params = derive_params(1, 1.0).unwrap();
        let r = verify_hopset(&g, &c.hopset, &params, &PairSpec::explicit(vec![(2, 2)])).unwrap();
        assert_eq!(r.pairs[0].exact, 0.0);
        assert_eq!(r.pairs[0].bounded_hop, Some(0.0));
        assert_eq!(r.pairs[0].stretch, Some(1.0));
        assert!(r.passed);
    }

    #[test]
    fn edgeless_graph_skips_everything() {
        let g = WeightedGraph::empty(10);
        let c = build_hopset(&g, 2, 1).unwrap();
        let params = derive_params(2, 1.0).unwrap();
        let r = verify_hopset(&g, &c.hopset, &params, &PairSpec::uniform(25, 3)).unwrap();
        assert_eq!(r.aggregate.pairs_checked, 0);
        assert_eq!(r.aggregate.pairs_skipped_unreachable, 25);
        assert!(r.passed);
    }

    #[test]
    fn detects_short_cut_below_exact() {
        let g = unit_path(4);
        let h = bare_hopset(
            &g,
            1,
            vec![HopEdge {
                u: 0,
                v: 3,
                w: 1.0,
                level: 0,
            }],
        );
        let params = derive_params(1, 1.0).unwrap();
        let r = verify_hopset(&g, &h, &params, &PairSpec::explicit(vec![(0, 3)])).unwrap();
        assert_eq!(r.aggregate.below_exact, 1);
        assert!(!r.passed);
        assert!(!r.weight_audit.clean());
    }

    #[test]
    fn detects_stretch_violation() {
        // 0 -> 7 needs 7 hops; the budget is 3
        let g = unit_path(8);
        let h = bare_hopset(&g, 1, vec![]);
        let mut params = derive_params(1, 1.0).unwrap();
        params.beta = 3;
        let r = verify_hopset(&g, &h, &params, &PairSpec::explicit(vec![(0, 7), (0, 2)])).unwrap();
        assert_eq!(r.aggregate.violations, 1);
        assert_eq!(r.aggregate.max_stretch, Some(f64::INFINITY));
        assert!(!r.passed);
    }

    #[test]
    fn fingerprint_mismatch_is_reported() {
        let g = unit_path(5);
        let other = WeightedGraph::from_edges(5, [(0, 1, 2.0)]).unwrap().0;
        let c = build_hopset(&g, 1, 0).unwrap();
        let params = derive_params(1, 1.0).unwrap();
        assert!(matches!(
            verify_hopset(&other, &c.hopset, &params, &PairSpec::uniform(3, 0)),
            Err(Error::FingerprintMismatch { .. })
        ));
    }

    #[test]
    fn min_hops_cases() {
        let g = unit_path(6);
        let h = bare_hopset(
            &g,
            1,
            vec![HopEdge {
                u: 0,
                v: 4,
                w: 4.0,
                level: 1,
            }],
        );
        assert_eq!(
            min_hops_for_stretch(&g, &h, 0, 1, 1.0, 10).unwrap(),
            MinHops { hops: 1, met: true }
        );
        assert_eq!(
            min_hops_for_stretch(&g, &h, 0, 5, 1.0, 10).unwrap(),
            MinHops { hops: 2, met: true }
        );
        assert_eq!(
            min_hops_for_stretch(&g, &h, 0, 4, 1e9, 10).unwrap(),
            MinHops { hops: 1, met: true }
        );
        assert_eq!(
            min_hops_for_stretch(&g, &h, 1, 5, 1.0, 2).unwrap(),
            MinHops {
                hops: 2,
                met: false
            }
        );
        assert_eq!(
            min_hops_for_stretch(&g, &h, 3, 3, 1.0, 2).unwrap(),
            MinHops { hops: 0, met: true }
        );
        let split = WeightedGraph::from_edges(3, [(0, 1, 1.0)]).unwrap().0;
        let hs = bare_hopset(&split, 1, vec![]);
        assert!(matches!(
            min_hops_for_stretch(&split, &hs, 0, 2, 1.0, 5),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn emulator_direct_edge_has_zero_additive() {
        let g = unit_path(6);
        let h = bare_hopset(
            &g,
            1,
            (1..6)
                .map(|v| HopEdge {
                    u: 0,
                    v,
                    w: v as f64,
                    level: 0,
                })
                .collect(),
        );
        let r = verify_emulator(
            &g,
            &h,
            1,
            8.0,
            2.0,
            &PairSpec::explicit(vec![(0, 5), (0, 1)]),
        )
        .unwrap();
        assert_eq!(r.pairs[0].additive, Some(0.0));
        assert_eq!(r.pairs_excluded, 1);
        assert!(r.passed);
    }

    #[test]
    fn emulator_rejects_weighted_graphs() {
        let g = WeightedGraph::from_edges(3, [(0, 1, 2.0), (1, 2, 1.0)])
            .unwrap()
            .0;
        let h = bare_hopset(&g, 1, vec![]);
        assert!(matches!(
            verify_emulator(&g, &h, 1, 8.0, 2.0, &PairSpec::uniform(3, 0)),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn stratified_pairs_cover_deciles() {
        let g = unit_path(200);
        let c = build_hopset(&g, 1, 4).unwrap();
        let params = derive_params(1, 1.0).unwrap();
        let r = verify_hopset(&g, &c.hopset, &params, &PairSpec::stratified(40, 9)).unwrap();
        assert_eq!(r.aggregate.pairs_checked, 40);
        assert!(r.pairs.iter().any(|p| p.exact > 100.0));
        let r2 = verify_hopset(&g, &c.hopset, &params, &PairSpec::stratified(40, 9)).unwrap();
        assert_eq!(r, r2);
    }

    #[test]
    fn min_distance_filter() {
        let g = unit_path(50);
        let c = build_hopset(&g, 1, 4).unwrap();
        let params = derive_params(1, 1.0).unwrap();
        let spec = PairSpec::uniform(30, 2).with_min_distance(10.0);
        let r = verify_hopset(&g, &c.hopset, &params, &spec).unwrap();
        assert!(r.pairs.iter().all(|p| p.exact >= 10.0));
        assert_eq!(r.aggregate.pairs_checked, 30);
    }

    #[test]
    fn csv_export_has_header_and_rows() {
        let g = unit_path(5);
        let c = build_hopset(&g, 1, 0).unwrap();
        let params = derive_params(1, 1.0).unwrap();
        let r = verify_hopset(
            &g,
            &c.hopset,
            &params,
            &PairSpec::explicit(vec![(0, 4), (1, 3)]),
        )
        .unwrap();
        let csv = r.pairs_csv();
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.starts_with("u,v,exact,bounded_hop,stretch,hops_used\n0,4,4,"));
    }
}
