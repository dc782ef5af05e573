use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hopset_core::verify::{union_graph, HopRelaxation};
use hopset_core::{
    build_hopset, build_with_levels, derive_params, dijkstra, generate_graph, BunchMethod, Family,
    LevelAssignment, WeightDist,
};

fn er(n: usize) -> hopset_core::WeightedGraph {
    generate_graph(
        Family::ErdosRenyi { m: 5 * n },
        n,
        WeightDist::Uniform { lo: 1.0, hi: 100.0 },
        1,
    )
    .unwrap()
}

fn bench_dijkstra(c: &mut Criterion) {
    let g = er(8192);
    c.bench_function("dijkstra/er-8192", |b| {
        b.iter(|| dijkstra(black_box(&g), &[0]).unwrap())
    });
}

fn bench_bunches(c: &mut Criterion) {
    let mut group = c.benchmark_group("build");
    group.sample_size(10);
    for n in [1024usize, 4096] {
        let g = er(n);
        for k in [1u32, 2] {
            let levels = LevelAssignment::sample(n, k, 3).unwrap();
            for method in [BunchMethod::Truncated, BunchMethod::Clusters] {
                let id = BenchmarkId::new(format!("{method:?}/k{k}"), n);
                group.bench_with_input(id, &levels, |b, levels| {
                    b.iter(|| build_with_levels(&g, levels.clone(), method).unwrap())
                });
            }
        }
    }
    group.finish();
}

fn bench_bounded_hop(c: &mut Criterion) {
    let mut group = c.benchmark_group("bounded-hop");
    group.sample_size(20);
    let g = er(1000);
    for k in [1u32, 2] {
        let h = build_hopset(&g, k, 5).unwrap().hopset;
        let beta = derive_params(k, 1.0).unwrap().beta;
        let union = union_graph(&g, &h);
        group.bench_function(BenchmarkId::new("er-1000", format!("k{k}")), |b| {
            b.iter(|| {
                let mut relax = HopRelaxation::new(&union, 0);
                relax.run_to(beta);
                black_box(relax.rounds())
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_dijkstra, bench_bunches, bench_bounded_hop);
criterion_main!(benches);
