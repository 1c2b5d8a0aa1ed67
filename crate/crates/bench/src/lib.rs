//! Shared fixtures for the kernel benchmarks.

use singflow_core::conical::{
    solve_self_similar_with, ConeGeometry, Freestream, GasModel, MarchState, SelfSimilarSolution,
};
use singflow_core::prandtl::{
    blasius_profile, BLConfig, BLState, EulerTrace, InflowData, InitialData, WallTranspiration,
};
use singflow_core::vortex::{BlobCloud2D, RingCloudAxi};

/// One-signed blob disk of `n` atoms.
pub fn disk_cloud(n: usize) -> BlobCloud2D {
    let positions: Vec<[f64; 2]> = (0..n)
        .map(|k| {
            // Sunflower layout: deterministic, roughly uniform.
            let r = ((k as f64 + 0.5) / n as f64).sqrt();
            let phi = 2.399_963_229_728_653 * k as f64;
            [r * phi.cos(), r * phi.sin()]
        })
        .collect();
    BlobCloud2D::new(positions, vec![1.0 / n as f64; n], 0.1)
}

pub fn ring_pair() -> RingCloudAxi {
    RingCloudAxi::new(vec![[1.0, 0.0], [1.0, 0.4]], vec![1.0, 1.0], 0.1)
}

pub fn conical_fixture() -> (SelfSimilarSolution, ConeGeometry, MarchState) {
    let (fs, gas): (Freestream, GasModel) = Freestream::with_unit_sound_speed(1.4, 3.0);
    let b0 = 10.0f64.to_radians().tan();
    let background = solve_self_similar_with(&fs, &gas, b0, 1e-10, 1024).expect("attached");
    let geometry = ConeGeometry::exact_cone(b0);
    let state = MarchState::from_background(&background, &geometry, 1.0, 128);
    (background, geometry, state)
}

pub fn boundary_layer_fixture() -> (BLConfig, BLState) {
    let cfg = BLConfig {
        nu: 0.01,
        length: 1.0,
        t_final: 1.0,
        y_max: 0.85,
        nx: 64,
        ny: 128,
        dt: 0.008,
        trace: EulerTrace::Uniform(1.0),
        initial: InitialData::BlasiusFamily {
            virtual_origin: 1.0,
            profile: blasius_profile(800).expect("profile"),
        },
        inflow: InflowData::FrozenInitial,
        wall: WallTranspiration::Constant(0.0),
    };
    let state = BLState::init(&cfg);
    (cfg, state)
}
