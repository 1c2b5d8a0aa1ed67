use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use singflow_bench::{boundary_layer_fixture, conical_fixture, disk_cloud, ring_pair};
use singflow_core::conical::{march_step, max_characteristic_speed};
use singflow_core::numerics::{solve_tridiagonal, TridiagonalSystem};
use singflow_core::prandtl::advance;
use singflow_core::vortex::{ring_velocity, step, velocity_field};

fn bench_blob_kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("blobs");
    for n in [100usize, 400, 1000] {
        let cloud = disk_cloud(n);
        group.bench_with_input(BenchmarkId::new("velocity_field", n), &cloud, |b, cloud| {
            b.iter(|| velocity_field(cloud, &cloud.positions));
        });
        group.bench_with_input(BenchmarkId::new("rk4_step", n), &cloud, |b, cloud| {
            b.iter(|| step(cloud, 1e-3).unwrap());
        });
    }
    group.finish();
}

fn bench_ring_kernels(c: &mut Criterion) {
    let cloud = ring_pair();
    c.bench_function("ring_velocity", |b| {
        b.iter(|| ring_velocity(&cloud, [0.7, 0.2]));
    });
}

fn bench_tridiagonal(c: &mut Criterion) {
    let n = 4096;
    let sys = TridiagonalSystem::new(
        vec![-1.0; n - 1],
        vec![2.5; n],
        vec![-1.0; n - 1],
        (0..n).map(|i| (i as f64).sin()).collect(),
    )
    .unwrap();
    c.bench_function("thomas_solve_4096", |b| {
        b.iter(|| solve_tridiagonal(&sys).unwrap());
    });
}

fn bench_conical_march(c: &mut Criterion) {
    let (background, geometry, state) = conical_fixture();
    let speed = max_characteristic_speed(&state, &background, &geometry).unwrap();
    let dz = 0.8 / 127.0 / speed;
    c.bench_function("march_step_128", |b| {
        b.iter(|| march_step(&state, &background, &geometry, dz).unwrap());
    });
}

fn bench_boundary_layer(c: &mut Criterion) {
    let (cfg, state) = boundary_layer_fixture();
    c.bench_function("bl_advance_64x128", |b| {
        b.iter(|| advance(&state, &cfg, cfg.dt).unwrap());
    });
}

criterion_group!(
    benches,
    bench_blob_kernels,
    bench_ring_kernels,
    bench_tridiagonal,
    bench_conical_march,
    bench_boundary_layer
);
criterion_main!(benches);
