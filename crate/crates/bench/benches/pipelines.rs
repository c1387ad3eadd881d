use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use napier::census::{rational_search, reproduce_table};
use napier::hermitian::HermitianMatrix;
use napier::linalg::ZERO_TOL;
use napier::{angles_from_gram, classify, GramMatrix, SlopeList};
use napier_bench::lists;

fn signatures(c: &mut Criterion) {
    let mut group = c.benchmark_group("signature");
    for a in lists([2, 5, 9], 1) {
        group.bench_with_input(BenchmarkId::new("real", a.n()), &a, |b, a| {
            b.iter(|| GramMatrix::new(a).signature(ZERO_TOL).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("hermitian", a.n()), &a, |b, a| {
            b.iter(|| HermitianMatrix::new(a).signature(ZERO_TOL).unwrap())
        });
    }
    group.finish();
}

fn recovery(c: &mut Criterion) {
    let mut group = c.benchmark_group("angles_from_gram");
    for a in lists([2, 5, 9], 2) {
        let g = GramMatrix::new(&a).matrix().clone();
        group.bench_with_input(BenchmarkId::from_parameter(a.n()), &g, |b, g| b.iter(|| angles_from_gram(g).unwrap()));
    }
    group.finish();
}

fn census(c: &mut Criterion) {
    c.bench_function("table", |b| b.iter(|| reproduce_table().unwrap()));
    let tumarkin = SlopeList::tumarkin().to_angles().unwrap();
    c.bench_function("classify_tumarkin", |b| b.iter(|| classify(&tumarkin).unwrap()));
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    for d in [12, 24] {
        group.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| b.iter(|| rational_search(d, 100, 1e-9)));
    }
    group.finish();
}

criterion_group!(benches, signatures, recovery, census);
criterion_main!(benches);
