use bilap_core::coefficients::{build_ledger, char_symbol, Sigma};
use bilap_core::cylinder_ode::{integrate, AutonomousSystem, IntegrateOptions};
use bilap_core::delaunay::{find_b, CMode, CriticalConstants, ShootingOptions};
use bilap_core::rational::{qf, qi};
use bilap_core::Params;
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn symbol(c: &mut Criterion) {
    let p = Params::scalar(7, qf(13, 5)).unwrap();
    c.bench_function("char_symbol n=7 s=13/5", |b| {
        b.iter(|| char_symbol(black_box(&p), Sigma::Minus).unwrap())
    });
}

fn ledger(c: &mut Criterion) {
    let mut g = c.benchmark_group("ledger");
    g.sample_size(10);
    g.bench_function("build_ledger", |b| b.iter(|| build_ledger().unwrap()));
    g.finish();
}

fn ode(c: &mut Criterion) {
    let p = Params::scalar(5, qi(7)).unwrap();
    let sys = AutonomousSystem::from_params(&p, Sigma::Minus).unwrap();
    let opts = IntegrateOptions::tol(1e-10, 1e-12);
    c.bench_function("integrate n=5 s=7 t=0..2", |b| {
        b.iter(|| {
            integrate(&sys, 0.0, black_box(&[0.9, 0.0, -0.1, 0.0]), 2.0, &opts).map(|t| t.len())
        })
    });
}

fn shooting(c: &mut Criterion) {
    let consts = CriticalConstants::new(6, CMode::Measured).unwrap();
    let opts = ShootingOptions::default();
    let mut g = c.benchmark_group("shooting");
    g.sample_size(10);
    g.bench_function("find_b n=6 a=0.5a0", |b| {
        b.iter(|| {
            find_b(&consts, black_box(0.5 * consts.a0), &opts)
                .unwrap()
                .period
        })
    });
    g.finish();
}

criterion_group!(benches, symbol, ledger, ode, shooting);
criterion_main!(benches);
