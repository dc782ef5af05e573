//! Construction and verification checked against brute-force oracles that
//! share no code path with the implementation beyond the graph type.

use hopset_core::sssp::{all_pairs_distances, DistanceMatrix};
use hopset_core::verify::{union_graph, HopRelaxation};
use hopset_core::*;
use proptest::prelude::*;

fn random_graph(seed: u64, n: usize) -> WeightedGraph {
    let weights = if seed.is_multiple_of(2) {
        WeightDist::Unit
    } else {
        WeightDist::Uniform { lo: 1.0, hi: 10.0 }
    };
    let family = match seed % 4 {
        0 => Family::ErdosRenyi {
            m: (2 * n).min(n * (n - 1) / 2),
        },
        1 => Family::RandomGeometric { radius: 0.3 },
        2 => Family::Path,
        _ => Family::ErdosRenyi {
            m: n.min(n * (n - 1) / 2),
        },
    };
    generate_graph(family, n, weights, seed).unwrap()
}

/// `(dist(v, V_i), smallest-id minimizer)` straight from the matrix.
fn brute_pivot(m: &DistanceMatrix, members: &[Vertex], v: Vertex) -> (f64, Option<Vertex>) {
    let mut best = (f64::INFINITY, None);
    for &u in members {
        let d = m.get(v, u);
        if d < best.0 || (d == best.0 && d.is_finite() && best.1.is_none_or(|b| u < b)) {
            best = (d, Some(u));
        }
    }
    best
}

fn brute_bunch(m: &DistanceMatrix, levels: &LevelAssignment, i: u32, v: Vertex) -> Vec<Vertex> {
    let threshold = brute_pivot(m, levels.members(i + 1), v).0;
    levels
        .members(i)
        .iter()
        .copied()
        .filter(|&u| m.get(v, u) < threshold)
        .collect()
}

/// Full double-buffered sweeps over every edge, straight from the definition.
fn naive_bounded_hop(g: &WeightedGraph, source: Vertex, beta: u64) -> Vec<f64> {
    let mut cur = vec![f64::INFINITY; g.vertex_count()];
    cur[source] = 0.0;
    for _ in 0..beta {
        let mut next = cur.clone();
        for e in g.edges() {
            next[e.v] = next[e.v].min(cur[e.u] + e.w);
            next[e.u] = next[e.u].min(cur[e.v] + e.w);
        }
        cur = next;
    }
    cur
}

#[test]
fn dijkstra_matches_floyd_warshall() {
    for seed in 0..50 {
        let n = 5 + (seed as usize * 7) % 120;
        let g = random_graph(seed, n);
        let m = all_pairs_distances(&g).unwrap();
        for s in 0..n {
            assert_eq!(
                dijkstra(&g, &[s]).unwrap().dist,
                m.row(s),
                "seed {seed} source {s}"
            );
        }
        for u in 0..n {
            assert_eq!(m.get(u, u), 0.0);
            for v in 0..n {
                assert_eq!(m.get(u, v), m.get(v, u));
            }
        }
    }
}

#[test]
fn pivots_and_bunches_match_definitions() {
    let mut mismatches = 0;
    for seed in 0..100u64 {
        let n = 6 + (seed as usize * 13) % 45;
        let k = 1 + (seed % 3) as u32;
        let g = random_graph(seed, n);
        let m = all_pairs_distances(&g).unwrap();
        let levels = LevelAssignment::sample(n, k, seed).unwrap();
        let pivots = compute_pivots(&g, &levels).unwrap();
        for i in 1..=k {
            for v in 0..n {
                let (d, p) = brute_pivot(&m, levels.members(i), v);
                if pivots.distance(i, v) != d || pivots.pivot(i, v) != p {
                    mismatches += 1;
                }
            }
        }
        for i in 0..=k {
            let fast = compute_bunches(&g, &levels, &pivots, i, BunchMethod::Clusters).unwrap();
            let slow = compute_bunches(&g, &levels, &pivots, i, BunchMethod::Truncated).unwrap();
            assert_eq!(fast, slow, "methods disagree, seed {seed} level {i}");
            for v in levels.exact_level(i) {
                if fast.member_ids(v).unwrap() != brute_bunch(&m, &levels, i, v) {
                    mismatches += 1;
                }
            }
        }
    }
    assert_eq!(mismatches, 0);
}

#[test]
fn bunches_with_forced_empty_levels() {
    // only V_0 and V_1 populated at k = 3: levels 1 and 2 use an infinite threshold
    let g = random_graph(3, 30);
    let m = all_pairs_distances(&g).unwrap();
    let mut raw = vec![0u32; 30];
    for v in [4, 9, 17] {
        raw[v] = 1;
    }
    let levels = LevelAssignment::from_levels(3, raw).unwrap();
    let pivots = compute_pivots(&g, &levels).unwrap();
    for i in 0..=3 {
        let b = compute_bunches(&g, &levels, &pivots, i, BunchMethod::Clusters).unwrap();
        for v in levels.exact_level(i) {
            assert_eq!(b.member_ids(v).unwrap(), brute_bunch(&m, &levels, i, v));
        }
    }
}

#[test]
fn zero_weight_edges_keep_methods_in_agreement() {
    let (g, _) =
        WeightedGraph::from_edges(5, [(0, 1, 0.0), (1, 2, 1.0), (2, 3, 0.0), (3, 4, 2.0)]).unwrap();
    let levels = LevelAssignment::from_levels(1, vec![0, 1, 0, 0, 0]).unwrap();
    let pivots = compute_pivots(&g, &levels).unwrap();
    let a = compute_bunches(&g, &levels, &pivots, 0, BunchMethod::Clusters).unwrap();
    let b = compute_bunches(&g, &levels, &pivots, 0, BunchMethod::Truncated).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.member_ids(0), Some(vec![]));
}

#[test]
fn hopset_edges_are_exact_distances() {
    for seed in 0..30u64 {
        let n = 20 + (seed as usize * 37) % 480;
        let g = random_graph(seed, n);
        let h = build_hopset(&g, 1 + (seed % 3) as u32, seed)
            .unwrap()
            .hopset;
        for e in &h.edges {
            let d = dijkstra(&g, &[e.u]).unwrap().dist[e.v];
            assert_eq!(e.w, d, "seed {seed} edge ({}, {})", e.u, e.v);
        }
    }
}

#[test]
fn hopset_structure() {
    for seed in 0..20u64 {
        let n = 200;
        let k = 1 + (seed % 3) as u32;
        let g = generate_graph(Family::ErdosRenyi { m: 600 }, n, WeightDist::Unit, seed).unwrap();
        let c = build_hopset(&g, k, seed).unwrap();
        let h = &c.hopset;
        for e in &h.edges {
            assert!(e.u < e.v);
            assert!(c.levels.level(e.u) >= e.level && c.levels.level(e.v) >= e.level);
        }
        for pair in h.edges.windows(2) {
            assert!((pair[0].level, pair[0].u, pair[0].v) < (pair[1].level, pair[1].u, pair[1].v));
        }
        // on a connected component the top level is a clique
        let top = c.levels.members(k);
        let d = all_pairs_distances(&g).unwrap();
        let mut expect = Vec::new();
        for (a, &x) in top.iter().enumerate() {
            for &y in &top[a + 1..] {
                if d.get(x, y).is_finite() {
                    expect.push((x, y));
                }
            }
        }
        let got: Vec<_> = h
            .edges
            .iter()
            .filter(|e| e.level == k)
            .map(|e| (e.u, e.v))
            .collect();
        assert_eq!(got, expect);
    }
}

#[test]
fn builds_are_deterministic_and_thread_independent() {
    let g = generate_graph(
        Family::ErdosRenyi { m: 4000 },
        1000,
        WeightDist::Uniform { lo: 1.0, hi: 100.0 },
        5,
    )
    .unwrap();
    let a = build_hopset(&g, 2, 11).unwrap().hopset.to_text();
    let b = build_hopset(&g, 2, 11).unwrap().hopset.to_text();
    assert_eq!(a, b);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let single = pool.install(|| build_hopset(&g, 2, 11).unwrap().hopset.to_text());
    assert_eq!(a, single);
    assert_ne!(a, build_hopset(&g, 2, 12).unwrap().hopset.to_text());
}

#[test]
fn bunches_ignore_vertex_order() {
    // relabel vertices by a permutation; bunches must map through it
    let n = 60;
    let g = random_graph(1, n);
    let perm: Vec<Vertex> = (0..n).map(|v| (v * 7 + 3) % n).collect();
    let (pg, _) =
        WeightedGraph::from_edges(n, g.edges().iter().map(|e| (perm[e.u], perm[e.v], e.w)))
            .unwrap();
    let levels = LevelAssignment::sample(n, 2, 8).unwrap();
    let mut plevels = vec![0; n];
    for v in 0..n {
        plevels[perm[v]] = levels.level(v);
    }
    let plevels = LevelAssignment::from_levels(2, plevels).unwrap();
    let pivots = compute_pivots(&g, &levels).unwrap();
    let ppivots = compute_pivots(&pg, &plevels).unwrap();
    for i in 0..=2 {
        let b = compute_bunches(&g, &levels, &pivots, i, BunchMethod::Clusters).unwrap();
        let pb = compute_bunches(&pg, &plevels, &ppivots, i, BunchMethod::Clusters).unwrap();
        for v in levels.exact_level(i) {
            let mut mapped: Vec<Vertex> =
                b.member_ids(v).unwrap().iter().map(|&u| perm[u]).collect();
            mapped.sort_unstable();
            assert_eq!(pb.member_ids(perm[v]).unwrap(), mapped);
        }
    }
}

#[test]
fn relaxation_matches_naive_sweeps() {
    for seed in 0..20u64 {
        let n = 80;
        let g = random_graph(seed, n);
        let h = build_hopset(&g, 2, seed).unwrap().hopset;
        let union = union_graph(&g, &h);
        for beta in [0u64, 1, 2, 3, 5, 8] {
            let mut relax = HopRelaxation::new(&union, (seed as usize) % n);
            relax.run_to(beta);
            assert_eq!(
                relax.dist(),
                naive_bounded_hop(&union, (seed as usize) % n, beta)
            );
        }
    }
}

#[test]
fn relaxation_without_hopset_converges_to_dijkstra() {
    for seed in 0..100u64 {
        let n = 10 + (seed as usize) % 60;
        let g = random_graph(seed, n);
        let empty = Hopset {
            n,
            k: 1,
            seed: None,
            graph_fingerprint: g.fingerprint(),
            probabilities: vec![],
            edges: vec![],
            run_config: None,
        };
        let d = bounded_hop_distances(&g, &empty, 0, n as u64 - 1).unwrap();
        assert_eq!(d, dijkstra(&g, &[0]).unwrap().dist);
    }
}

#[test]
fn level_frequencies_track_probabilities() {
    // mean |V_i| over 100 seeds within 5 binomial standard deviations of n*q_i
    let (n, k, seeds) = (2000usize, 3u32, 100u64);
    let q: Vec<f64> = (0..=k)
        .map(|i| sampling_probability(i, k, n).unwrap())
        .collect();
    let mut sums = vec![0usize; k as usize + 1];
    for seed in 0..seeds {
        let a = LevelAssignment::sample(n, k, seed).unwrap();
        a.check_invariants().unwrap();
        for i in 0..=k {
            sums[i as usize] += a.members(i).len();
        }
    }
    for i in 0..=k as usize {
        let trials = (n as u64 * seeds) as f64;
        let sd = (trials * q[i] * (1.0 - q[i])).sqrt();
        let diff = (sums[i] as f64 - trials * q[i]).abs();
        assert!(
            diff <= 5.0 * sd.max(1e-12) + 1e-9,
            "level {i}: {diff} vs sd {sd}"
        );
    }
}

#[test]
fn verify_passes_on_small_corpus() {
    for seed in 0..12u64 {
        let g = random_graph(seed, 150);
        for k in [1, 2] {
            let h = build_hopset(&g, k, seed).unwrap().hopset;
            for eps in [0.5, 1.0] {
                let p = derive_params(k, eps).unwrap();
                let r = verify_hopset(&g, &h, &p, &PairSpec::uniform(40, seed)).unwrap();
                assert!(r.passed, "seed {seed} k {k} eps {eps}");
                assert!(r.weight_audit.clean() && r.weight_audit.exhaustive);
                for pair in &r.pairs {
                    let m =
                        min_hops_for_stretch(&g, &h, pair.u, pair.v, 1.0 + eps, p.beta).unwrap();
                    assert!(m.met && m.hops <= p.beta);
                }
            }
        }
    }
}

#[test]
fn tampered_weight_is_caught() {
    let g = random_graph(5, 120);
    let mut h = build_hopset(&g, 2, 1).unwrap().hopset;
    let p = derive_params(2, 1.0).unwrap();
    h.edges[0].w *= 3.0;
    let r = verify_hopset(&g, &h, &p, &PairSpec::uniform(10, 1)).unwrap();
    assert_eq!(r.weight_audit.mismatches, 1);
    assert_eq!(r.weight_audit.examples[0].u, h.edges[0].u);
    h.edges[0].w /= 9.0;
    let r = verify_hopset(
        &g,
        &h,
        &p,
        &PairSpec::explicit(vec![(h.edges[0].u, h.edges[0].v)]),
    )
    .unwrap();
    assert_eq!(r.aggregate.below_exact, 1);
    assert!(!r.passed);
}

#[test]
fn bounded_hop_is_monotone_in_budget() {
    let g = random_graph(7, 300);
    let h = build_hopset(&g, 2, 7).unwrap().hopset;
    let union = union_graph(&g, &h);
    let mut relax = HopRelaxation::new(&union, 3);
    let mut prev = relax.dist().to_vec();
    for _ in 0..40 {
        relax.step();
        assert!(relax.dist().iter().zip(&prev).all(|(a, b)| a <= b));
        prev = relax.dist().to_vec();
    }
    assert!(relax.converged());
    // the fixpoint is the exact metric, and never below it
    assert_eq!(relax.dist(), dijkstra(&g, &[3]).unwrap().dist);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dijkstra_settles_every_edge(seed in any::<u64>(), n in 2usize..200) {
        let g = random_graph(seed, n);
        let d = dijkstra(&g, &[seed as usize % n]).unwrap();
        for e in g.edges() {
            prop_assert!(d.dist[e.v] <= d.dist[e.u] + e.w);
            prop_assert!(d.dist[e.u] <= d.dist[e.v] + e.w);
        }
    }

    #[test]
    fn edge_list_round_trip(seed in any::<u64>(), n in 1usize..80,
                            raw in proptest::collection::vec((0usize..80, 0usize..80, 0.0f64..1e6), 0..200)) {
        let raw: Vec<_> = raw.into_iter().map(|(u, v, w)| (u % n, v % n, w)).collect();
        let (g, _) = WeightedGraph::from_edges(n, raw).unwrap();
        g.check_invariants().unwrap();
        let back = io::parse_edge_list(g.to_edge_list_string().as_bytes()).unwrap().graph;
        prop_assert_eq!(&back, &g);
        let _ = seed;
    }

    #[test]
    fn hopset_text_round_trip(seed in any::<u64>(), n in 2usize..120, k in 1u32..4) {
        let g = random_graph(seed, n);
        let h = build_hopset(&g, k, seed).unwrap().hopset;
        let back = Hopset::parse(h.to_text().as_bytes()).unwrap();
        prop_assert_eq!(back, h);
    }

    #[test]
    fn promotion_probabilities_are_valid(k in 1u32..=10, n in 4usize..1_000_000_000) {
        let q: Vec<f64> = (0..=k).map(|i| sampling_probability(i, k, n).unwrap()).collect();
        prop_assert_eq!(q[0], 1.0);
        for w in q.windows(2) {
            let ratio = w[1] / w[0];
            prop_assert!(ratio > 0.0 && ratio <= 1.0);
            prop_assert!(w[1] < w[0]);
        }
    }

    #[test]
    fn levels_are_nested(n in 2usize..3000, k in 1u32..5, seed in any::<u64>()) {
        let a = LevelAssignment::sample(n, k, seed).unwrap();
        prop_assert!(a.check_invariants().is_ok());
        prop_assert_eq!(a.members(0).len(), n);
    }

    #[test]
    fn beta_shrinks_as_epsilon_grows(k in 1u32..6, e1 in 0.01f64..4.0, e2 in 0.01f64..4.0) {
        let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        let a = derive_params(k, lo).unwrap();
        let b = derive_params(k, hi).unwrap();
        prop_assert!(b.beta <= a.beta);
    }

    #[test]
    fn beta_growth_across_k(k in 1u32..6, eps in 0.05f64..4.0) {
        let a = derive_params(k, eps).unwrap();
        let b = derive_params(k + 1, eps).unwrap();
        prop_assert!(b.beta as f64 / a.beta as f64 >= b.r as f64);
    }
}
