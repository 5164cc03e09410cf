use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use lerchq::divisor::DivisorTable;
use lerchq::lerch::{fc_bruteforce, fc_series};
use lerchq::qseries::{f_divisor_form, mock_f_series, watson_rhs_series};

fn mock_f(c: &mut Criterion) {
    let mut g = c.benchmark_group("mock_f");
    for order in [50, 100, 200] {
        g.bench_with_input(BenchmarkId::new("series", order), &order, |b, &n| b.iter(|| mock_f_series(black_box(n))));
        g.bench_with_input(BenchmarkId::new("watson", order), &order, |b, &n| b.iter(|| watson_rhs_series(black_box(n))));
    }
    g.finish();
}

fn divisor_forms(c: &mut Criterion) {
    let table = DivisorTable::new(100);
    c.bench_function("f_divisor_form/100", |b| b.iter(|| f_divisor_form(black_box(100), &table).unwrap()));
    c.bench_function("divisor_table/1000", |b| b.iter(|| DivisorTable::new(black_box(1000))));
}

fn lerch_coeffs(c: &mut Criterion) {
    let mut g = c.benchmark_group("fc(3,1;2)");
    for order in [60, 120] {
        g.bench_with_input(BenchmarkId::new("divisor", order), &order, |b, &n| b.iter(|| fc_series(3, 1, 2, black_box(n))));
        g.bench_with_input(BenchmarkId::new("direct", order), &order, |b, &n| b.iter(|| fc_bruteforce(3, 1, 2, black_box(n))));
    }
    g.finish();
}

criterion_group!(benches, mock_f, divisor_forms, lerch_coeffs);
criterion_main!(benches);
