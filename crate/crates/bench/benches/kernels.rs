use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use picorr::{
    build_block8, build_full16, correlation_series, decompose, oracle_propagate,
    steady_numeric_vector, SystemParams, TauGrid, UnitMode,
};

fn params() -> SystemParams {
    SystemParams::reduced(0.5, 0.5).unwrap()
}

fn bench_decompose(c: &mut Criterion) {
    let generator = build_block8(&params());
    c.bench_function("decompose_block8", |b| b.iter(|| decompose(black_box(&generator)).unwrap()));
}

fn bench_transfer(c: &mut Criterion) {
    let decomp = decompose(&build_block8(&params())).unwrap();
    c.bench_function("transfer_matrix", |b| {
        let mut tau = 0.0;
        b.iter(|| {
            tau += 0.02;
            if tau > 20.0 {
                tau = 0.0;
            }
            decomp.transfer(black_box(tau)).unwrap()
        })
    });
}

fn bench_steady_numeric(c: &mut Criterion) {
    let generator = build_full16(&params());
    c.bench_function("steady_null_space", |b| {
        b.iter(|| steady_numeric_vector(black_box(&generator)).unwrap())
    });
}

fn bench_series(c: &mut Criterion) {
    let p = params();
    let grid = TauGrid::span(20.0, 0.1).unwrap();
    c.bench_function("correlation_series_201pts", |b| {
        b.iter(|| correlation_series(black_box(&p), &grid, &UnitMode::Reduced).unwrap())
    });
}

fn bench_ode_oracle(c: &mut Criterion) {
    let generator = build_block8(&params());
    let v0 = picorr::basis::basis_state(8, picorr::basis::slot::RHO33);
    c.bench_function("ode_oracle_tau20", |b| {
        b.iter(|| oracle_propagate(black_box(&generator), &v0, 20.0).unwrap())
    });
}

criterion_group!(
    kernels,
    bench_decompose,
    bench_transfer,
    bench_steady_numeric,
    bench_series,
    bench_ode_oracle
);
criterion_main!(kernels);
