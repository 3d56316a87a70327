use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use waring_bench::{random_prime_form, random_rational_form};
use waring_core::decompose::fast_decompose;
use waring_core::hankel::kernel_pair;
use waring_core::{PrimeField, Rationals, Strategy, MERSENNE_61};

fn prime_pipeline(c: &mut Criterion) {
    let f = PrimeField::new(MERSENNE_61).unwrap();
    let mut g = c.benchmark_group("prime_pipeline");
    g.sample_size(10);
    for d in [1024usize, 2048, 4096, 8192] {
        let form = random_prime_form(&f, d, 7);
        g.bench_with_input(BenchmarkId::new("kernel_pair", d), &form, |b, form| b.iter(|| kernel_pair(&f, form).unwrap()));
        g.bench_with_input(BenchmarkId::new("fast_decompose", d), &form, |b, form| {
            b.iter(|| fast_decompose(&f, form, Strategy::Deterministic, 0).unwrap())
        });
    }
    g.finish();
}

fn rational_pipeline(c: &mut Criterion) {
    let mut g = c.benchmark_group("rational_pipeline");
    g.sample_size(10);
    for d in [32usize, 64, 128] {
        let form = random_rational_form(d, 100, 7);
        g.bench_with_input(BenchmarkId::new("fast_decompose", d), &form, |b, form| {
            b.iter(|| fast_decompose(&Rationals, form, Strategy::Deterministic, 0).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, prime_pipeline, rational_pipeline);
criterion_main!(benches);
