//! Max-flow solver benchmarks on prebuilt networks.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use adjflow::flow::{build_network, Solver};
use adjflow::adjustment::build_h1;
use adjflow_bench::{worked_example_problem, layered_problem};

fn bench_solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("max_flow");
    let small = build_network(&build_h1(&worked_example_problem()).unwrap()).unwrap();
    for solver in [Solver::HighestLabelPreflowPush, Solver::ShortestAugmentingPath] {
        group.bench_with_input(
            BenchmarkId::new("worked_example", format!("{solver:?}")),
            &solver,
            |b, &s| b.iter(|| small.max_flow_with(s)),
        );
    }
    for depth in [20usize, 80] {
        let n = build_network(&build_h1(&layered_problem(50, depth)).unwrap()).unwrap();
        for solver in [Solver::HighestLabelPreflowPush, Solver::ShortestAugmentingPath] {
            group.bench_with_input(
                BenchmarkId::new(format!("layered_50x{depth}"), format!("{solver:?}")),
                &solver,
                |b, &s| b.iter(|| n.max_flow_with(s)),
            );
        }
    }
    group.finish();
}

criterion_group!(benches, bench_solvers);
criterion_main!(benches);
