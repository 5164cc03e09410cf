use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use num_complex::Complex64 as C64;

use lerchq::integral::{f_via_integral, theta_integral_rep, ThetaKind};
use lerchq::numeric::erf::erf_e_num;
use lerchq::numeric::eta::eta_dedekind_num;
use lerchq::numeric::lerch_num::{lerch_num, LerchFamily, LerchParams};
use lerchq::numeric::mock_num::{mock_num, MockName};
use lerchq::numeric::theta::theta3_num;
use lerchq::numeric::zwegers::{mu_num, ZwegersParams};
use lerchq::HalfPlanePoint;

fn series_evaluators(c: &mut Criterion) {
    let q = C64::new(0.3, 0.2);
    let z = HalfPlanePoint::new(C64::new(0.1, 0.9)).unwrap();
    c.bench_function("theta3", |b| b.iter(|| theta3_num(black_box(C64::new(0.2, 0.1)), q)));
    c.bench_function("eta_dedekind", |b| b.iter(|| eta_dedekind_num(black_box(C64::new(0.1, 0.9)))));
    c.bench_function("mock_f", |b| b.iter(|| mock_num(MockName::F, black_box(q))));
    c.bench_function("lerch_fc", |b| b.iter(|| lerch_num(LerchFamily::Fc, LerchParams::abc(3.0, 1.0, 2.0), black_box(z))));
    c.bench_function("E", |b| b.iter(|| erf_e_num(black_box(C64::new(1.2, -0.4)))));
    let p = ZwegersParams { u: C64::new(0.2, 0.1), v: C64::new(0.3, -0.1), tau: C64::new(0.1, 0.9) };
    c.bench_function("mu", |b| b.iter(|| mu_num(black_box(p))));
}

fn integrals(c: &mut Criterion) {
    let z = HalfPlanePoint::new(C64::new(0.0, 1.0)).unwrap();
    let zz = HalfPlanePoint::new(C64::new(0.1, 0.9)).unwrap();
    let mut g = c.benchmark_group("integral");
    g.sample_size(20);
    g.bench_function("f_via_integral", |b| b.iter(|| f_via_integral(black_box(z), 1e-10)));
    g.bench_function("theta4_rep", |b| {
        b.iter(|| theta_integral_rep(ThetaKind::Four, 1.5, 0.0, black_box(zz), C64::new(0.2, 1.8), 1e-10))
    });
    g.finish();
}

criterion_group!(benches, series_evaluators, integrals);
criterion_main!(benches);
