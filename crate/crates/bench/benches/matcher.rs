use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use pmlg_bench::artifact;
use pmlg_core::{match_exists, Variant};

fn reductions(c: &mut Criterion) {
    let d = 16;
    for variant in [Variant::Undirected, Variant::DetDag, Variant::Zigzag] {
        let mut group = c.benchmark_group(format!("match_exists/{variant}"));
        group.sample_size(10);
        for n in [16, 32, 64] {
            let art = artifact(variant, n, d);
            group.throughput(Throughput::Elements((n * d) as u64));
            group.bench_with_input(BenchmarkId::from_parameter(n), &art, |b, art| {
                b.iter(|| {
                    art.patterns
                        .iter()
                        .any(|p| match_exists(&art.graph, p).unwrap())
                })
            });
        }
        group.finish();
    }
}

criterion_group!(benches, reductions);
criterion_main!(benches);
