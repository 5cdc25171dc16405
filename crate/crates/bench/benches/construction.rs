use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use medlat_core::freedist::{free_algebra, free_enumerate};
use medlat_core::poset::{enumerate_posets, open_sets, powerset_poset};
use medlat_core::BrouwerAlgebra;

fn posets(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_posets");
    g.sample_size(10);
    for n in [4, 5, 6] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| enumerate_posets(n).unwrap()));
    }
    g.finish();
}

fn algebras(c: &mut Criterion) {
    let mut g = c.benchmark_group("from_poset");
    g.sample_size(10);
    for n in [3, 4] {
        let p = powerset_poset(n).unwrap();
        g.bench_with_input(BenchmarkId::new("opens", n), &p, |b, p| b.iter(|| open_sets(p).unwrap()));
        g.bench_with_input(BenchmarkId::new("tables", n), &p, |b, p| b.iter(|| BrouwerAlgebra::from_poset(p).unwrap()));
    }
    g.finish();
}

fn free(c: &mut Criterion) {
    let mut g = c.benchmark_group("free");
    g.sample_size(10);
    g.bench_function("enumerate_5", |b| b.iter(|| free_enumerate(5).unwrap()));
    g.bench_function("tables_4", |b| b.iter(|| free_algebra(4).unwrap()));
    g.finish();
}

criterion_group!(benches, posets, algebras, free);
criterion_main!(benches);
