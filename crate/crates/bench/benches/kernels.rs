use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kloostlab::counting::{variance_sum, window_histogram};
use kloostlab::kloosterman::kloosterman_all;
use kloostlab::satotate::{discrepancy, q_count};
use kloostlab::{CountMode, Method};
use kloostlab_bench::{central_window, envelope_config};
use std::hint::black_box;

fn tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("kloosterman_table");
    for p in [211u64, 503, 1009] {
        group.bench_with_input(BenchmarkId::new("naive", p), &p, |b, &p| {
            b.iter(|| kloosterman_all(black_box(p), Method::Naive).unwrap())
        });
    }
    for p in [1009u64, 10007, 100003] {
        group.bench_with_input(BenchmarkId::new("convolution", p), &p, |b, &p| {
            b.iter(|| kloosterman_all(black_box(p), Method::Convolution).unwrap())
        });
    }
    group.finish();
}

fn histograms(c: &mut Criterion) {
    let mut group = c.benchmark_group("window_histogram");
    for m in [1009u64, 8009, 65537] {
        let (set, window) = envelope_config(m);
        for mode in [CountMode::Inverse, CountMode::Multiple] {
            group.bench_with_input(BenchmarkId::new(mode.name(), m), &m, |b, &m| {
                b.iter(|| window_histogram(m, &set, &window, mode).unwrap())
            });
        }
    }
    group.finish();

    let (set, window) = envelope_config(8009);
    c.bench_function("variance_sum_inverse_8009", |b| {
        b.iter(|| variance_sum(8009, &set, &window, CountMode::Inverse).unwrap())
    });
}

fn sato_tate(c: &mut Criterion) {
    let table = kloosterman_all(10007, Method::Convolution).unwrap();
    let w = central_window();
    c.bench_function("discrepancy_10007", |b| {
        b.iter(|| discrepancy(black_box(&table)))
    });
    let mut group = c.benchmark_group("q_count_10007");
    for (r, s) in [(10u64, 10u64), (60, 60), (100, 5000)] {
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("{r}x{s}")),
            &(r, s),
            |b, &(r, s)| b.iter(|| q_count(&table, r, s, &w)),
        );
    }
    group.finish();
}

criterion_group!(benches, tables, histograms, sato_tate);
criterion_main!(benches);
