use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use scattering::factorize;
use scattering_bench::{dense_series, kronecker_commutator};

fn bench_factorize(c: &mut Criterion) {
    let mut group = c.benchmark_group("factorize");
    group.sample_size(10);
    for (l1, l2, n) in [(2, 2, 12), (2, 3, 10), (3, 3, 12)] {
        let input = kronecker_commutator(l1, l2, n);
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{l1}x{l2}@{n}")),
            &input,
            |b, c| b.iter(|| factorize(c, n).expect("factorizes")),
        );
    }
    group.finish();
}

fn bench_commutator(c: &mut Criterion) {
    c.bench_function("commutator 3x3@12", |b| {
        b.iter(|| kronecker_commutator(3, 3, 12))
    });
}

fn bench_series(c: &mut Criterion) {
    let mut group = c.benchmark_group("series");
    for n in [8u32, 12, 16] {
        let s = dense_series(n);
        let u = s
            .sub(&scattering::Series::constant(
                s.constant_term() - scattering::series::int(1),
                n,
            ))
            .unwrap();
        group.bench_with_input(BenchmarkId::new("mul", n), &s, |b, s| {
            b.iter(|| s.mul(s).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("invert_unit", n), &u, |b, u| {
            b.iter(|| u.invert_unit().unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_factorize, bench_commutator, bench_series);
criterion_main!(benches);
