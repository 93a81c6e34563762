use criterion::{black_box, criterion_group, criterion_main, Criterion};
use koblab_core::catalog::{ellipsoid_kind1, yu_parametric_disc, EllipsoidKind1Params, YuDisc, YuDiscParams};
use koblab_core::metrics::{scalar_target, upper_bound_search, verify_jet, SearchConfig};
use koblab_core::schwarz::{run_suite, Lemma, SuiteConfig};
use koblab_core::stationarity::{verify_k_stationary_with, StationarityConfig};
use koblab_core::{c64, contains_disc, ContainmentConfig, ModelDomain};

fn containment(c: &mut Criterion) {
    let d = yu_parametric_disc(YuDiscParams::optimal()).unwrap();
    let cfg = ContainmentConfig::default();
    c.bench_function("contains_disc yu-optimal M=4096", |b| {
        b.iter(|| contains_disc(&ModelDomain::YuDomain, black_box(&d.disc), &cfg).unwrap())
    });
    c.bench_function("verify_jet yu-optimal", |b| b.iter(|| verify_jet(black_box(&d.disc), &YuDisc::target()).unwrap()));
}

fn search(c: &mut Criterion) {
    let target = scalar_target(c64(0.3, 0.0), c64(1.0, 0.0), 2).unwrap();
    let cfg = SearchConfig { restarts: 2, iterations: 200, degree: Some(8), ..Default::default() };
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    g.bench_function("unit disc k=2 N=8", |b| {
        b.iter(|| upper_bound_search(&ModelDomain::UnitDisc, black_box(&target), &cfg, &[]).unwrap())
    });
    g.finish();
}

fn stationarity(c: &mut Criterion) {
    let p = EllipsoidKind1Params::sample(7, 0.35);
    ellipsoid_kind1(&p).unwrap();
    let cfg = StationarityConfig::default();
    let mut g = c.benchmark_group("stationarity");
    g.sample_size(10);
    g.bench_function("kind1 k=3 M=4096", |b| b.iter(|| verify_k_stationary_with(black_box(&p), 3, false, &cfg).unwrap()));
    g.finish();
}

fn schwarz(c: &mut Criterion) {
    let cfg = SuiteConfig::new(Lemma::Pick, 2, 100, 1).with_base(c64(0.4, 0.2));
    let mut g = c.benchmark_group("schwarz");
    g.sample_size(10);
    g.bench_function("pick suite 100 samples", |b| b.iter(|| run_suite(black_box(&cfg)).unwrap()));
    g.finish();
}

criterion_group!(benches, containment, search, stationarity, schwarz);
criterion_main!(benches);
