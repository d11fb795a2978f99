use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use coxrank::batch::{spectra, spectra_sequential};
use coxrank::corpus::corpus;

fn bench_spectra(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectra");
    group.sample_size(10);
    for size in [32usize, 128] {
        let input = corpus(42, size, 6);
        group.bench_with_input(BenchmarkId::new("parallel", size), &input, |b, ms| {
            b.iter(|| spectra(black_box(ms)))
        });
        group.bench_with_input(BenchmarkId::new("sequential", size), &input, |b, ms| {
            b.iter(|| spectra_sequential(black_box(ms)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_spectra);
criterion_main!(benches);
