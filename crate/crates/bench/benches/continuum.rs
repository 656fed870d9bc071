use criterion::{criterion_group, criterion_main, Criterion};
use jastrow_core::verify::{
    default_min_sep, default_sampling, fd_local_energy, local_energy, sample_configs,
};
use jastrow_core::zoo::params;
use jastrow_core::{zoo_model, PhysicalConstants};

fn local_energies(c: &mut Criterion) {
    let m = zoo_model(
        "lieb-liniger-coulomb",
        &params(&[("g", 1.0), ("omega", 1.0)]),
        6,
        PhysicalConstants::default(),
    )
    .unwrap();
    let configs = sample_configs(&m, 1000, 1, default_min_sep(&m), default_sampling(&m)).unwrap();
    c.bench_function("local_energy llc N=6 x1000", |b| {
        b.iter(|| {
            configs
                .iter()
                .map(|x| local_energy(&m, x).unwrap())
                .sum::<f64>()
        })
    });
    c.bench_function("fd_local_energy llc N=6 x1000", |b| {
        b.iter(|| {
            configs
                .iter()
                .map(|x| fd_local_energy(&m, x, 1e-3).unwrap_or(0.0))
                .sum::<f64>()
        })
    });
}

criterion_group!(benches, local_energies);
criterion_main!(benches);
