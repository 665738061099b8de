use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use twinwidth::families::{gnp, grid};
use twinwidth::ibp::build_ibp;
use twinwidth::independent::k_independent_set;
use twinwidth::toolkit::{greedy_sequence, unit_interval_sequence, GreedyConfig};
use twinwidth::verify_sequence;

fn independent_set(c: &mut Criterion) {
    let mut g = c.benchmark_group("k_independent_set");
    for blocks in [250usize, 1000, 4000] {
        let (graph, seq) = unit_interval_sequence(4, blocks).unwrap();
        g.throughput(Throughput::Elements(graph.n() as u64));
        g.bench_with_input(
            BenchmarkId::new("unit_interval", graph.n()),
            &blocks,
            |b, _| b.iter(|| k_independent_set(&graph, &seq, 5).unwrap()),
        );
    }
    g.finish();
}

fn sequence_search(c: &mut Criterion) {
    let mut g = c.benchmark_group("sequences");
    for side in [6usize, 8, 10] {
        let graph = grid(side, side);
        g.bench_with_input(
            BenchmarkId::new("greedy_grid", side * side),
            &side,
            |b, _| b.iter(|| greedy_sequence(&graph, &GreedyConfig::default()).unwrap()),
        );
        let seq = greedy_sequence(&graph, &GreedyConfig::default()).unwrap();
        g.bench_with_input(
            BenchmarkId::new("verify_grid", side * side),
            &side,
            |b, _| b.iter(|| verify_sequence(&graph, &seq).unwrap()),
        );
    }
    g.finish();
}

fn piece_construction(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_ibp");
    for n in [64usize, 128, 256] {
        let graph = gnp(n, 4.0 / n as f64, 99);
        let seq = greedy_sequence(&graph, &GreedyConfig::default()).unwrap();
        g.throughput(Throughput::Elements(n as u64));
        g.bench_with_input(BenchmarkId::new("sparse_gnp", n), &n, |b, _| {
            b.iter(|| build_ibp(&graph, &seq).unwrap())
        });
    }
    g.finish();
}

criterion_group!(
    benches,
    independent_set,
    sequence_search,
    piece_construction
);
criterion_main!(benches);
