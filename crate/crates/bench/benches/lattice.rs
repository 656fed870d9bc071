use criterion::{criterion_group, criterion_main, Criterion};
use jastrow_core::lattice::{
    check_projector_axioms, grid_for, ground_state_overlap, Grid, LatticeRep, StencilOrder,
};
use jastrow_core::zoo::params;
use jastrow_core::{zoo_model, PhysicalConstants, Statistics};

fn lattice(c: &mut Criterion) {
    let mut g = c.benchmark_group("lattice");
    g.sample_size(10);
    let rep = LatticeRep::build(
        Grid::periodic(6, 3.0).unwrap(),
        3,
        Statistics::Boson,
        StencilOrder::Second,
    )
    .unwrap();
    g.bench_function("build rep L=6 N=3", |b| {
        b.iter(|| {
            LatticeRep::build(
                Grid::periodic(6, 3.0).unwrap(),
                3,
                Statistics::Boson,
                StencilOrder::Second,
            )
            .unwrap()
        })
    });
    g.bench_function("axioms L=6 N=3", |b| {
        b.iter(|| check_projector_axioms(&rep))
    });
    let m = zoo_model(
        "quadratic-pair",
        &params(&[("g", -1.0), ("omega", 1.0)]),
        2,
        PhysicalConstants::default(),
    )
    .unwrap();
    let grid = grid_for(&m, 48, 6.0).unwrap();
    g.bench_function("overlap quadratic-pair L=48", |b| {
        b.iter(|| ground_state_overlap(&m, &grid, Statistics::Boson, StencilOrder::Second).unwrap())
    });
    let llc = zoo_model(
        "lieb-liniger-coulomb",
        &params(&[("g", 0.5), ("omega", 1.0)]),
        2,
        PhysicalConstants::default(),
    )
    .unwrap();
    let grid = grid_for(&llc, 64, 6.0).unwrap();
    g.bench_function("overlap llc L=64 (lanczos)", |b| {
        b.iter(|| {
            ground_state_overlap(&llc, &grid, Statistics::Boson, StencilOrder::Second).unwrap()
        })
    });
    g.finish();
}

criterion_group!(benches, lattice);
criterion_main!(benches);
