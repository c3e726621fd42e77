use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use morsecraft::corpus;
use morsecraft::exec::Execution;
use morsecraft::search::{random_discrete_morse, SearchConfig};
use morsecraft::subdivision::barycentric_subdivide;

fn random_morse(c: &mut Criterion) {
    let inputs = [
        ("torus3-27", corpus::load("torus3-27").unwrap()),
        ("sd-boundary-simplex-4", barycentric_subdivide(&corpus::load("boundary-simplex-4").unwrap()).unwrap()),
    ];
    let mut group = c.benchmark_group("random_discrete_morse");
    group.sample_size(10);
    for (name, k) in &inputs {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let cfg = SearchConfig::new(1, 256).with_execution(exec);
            group.bench_with_input(BenchmarkId::new(format!("{exec:?}"), name), k, |b, k| {
                b.iter(|| random_discrete_morse(k, &cfg).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, random_morse);
criterion_main!(benches);
