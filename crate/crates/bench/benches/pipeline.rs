//! End-to-end pipeline benchmarks: graph surgery, network build and solve.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use adjflow::adjustment::build_h1;
use adjflow::optimizer::optimal_min_cost;
use adjflow_bench::{worked_example_problem, ordering_example_problem, layered_problem};

fn bench_pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("pipeline");
    group.bench_function("worked_example", |b| {
        let p = worked_example_problem();
        b.iter(|| optimal_min_cost(&p).unwrap())
    });
    group.bench_function("efficiency_ordering_example", |b| {
        let p = ordering_example_problem();
        b.iter(|| optimal_min_cost(&p).unwrap())
    });
    for depth in [20usize, 80, 200] {
        let p = layered_problem(50, depth);
        group.bench_with_input(BenchmarkId::new("layered_50", depth), &p, |b, p| {
            b.iter(|| optimal_min_cost(p).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("build_h1_50", depth), &p, |b, p| {
            b.iter(|| build_h1(p).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_pipeline);
criterion_main!(benches);
