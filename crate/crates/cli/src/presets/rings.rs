use crate::config::ExperimentConfig;
use crate::error::HarnessError;
use crate::record::{Assertions, RunRecord, RunWriter};
use singflow_core::vortex::{
    axis_energy_probe, axisym_invariants, ring_velocity, step_axisym, RingCloudAxi,
};
use singflow_core::DiagnosticSeries;

fn numerical(e: impl std::fmt::Display) -> HarnessError {
    HarnessError::Numerical(e.to_string())
}

fn snapshot(cloud: &RingCloudAxi) -> DiagnosticSeries {
    let mut s = DiagnosticSeries::new("snapshot", &["r", "z", "gamma"]);
    for (p, g) in cloud.positions.iter().zip(&cloud.circulations) {
        s.push_row(vec![p[0], p[1], *g]);
    }
    s
}

/// One ring: fixed radius and impulse under self-induction, the filament
/// limit of the center velocity as the smoothing shrinks, and no energy
/// pile-up against the symmetry axis.
pub fn single(cfg: &ExperimentConfig) -> Result<RunRecord, HarnessError> {
    let a = cfg.f64("radius", 1.0)?;
    let gamma = cfg.f64("circulation", 1.0)?;
    let delta = cfg.f64("delta", 0.05)?;
    let dt = cfg.f64("dt", 0.01)?;
    let steps = cfg.usize("steps", 1000)?;
    let out_every = cfg.usize("out_every", 100)?;
    let quad = cfg.usize("energy_quadrature", 48)?;
    let mut writer = RunWriter::new(cfg)?;
    let mut asserts = Assertions::new();

    let mut cloud = RingCloudAxi::new(vec![[a, 0.0]], vec![gamma], delta);
    let start = axisym_invariants(&cloud);

    let mut trajectory = DiagnosticSeries::new("trajectory", &["t", "r", "z"]);
    let mut inv_series = DiagnosticSeries::new("invariants", &["t", "circulation", "impulse"]);
    let mut history = vec![(0.0, cloud.clone())];
    trajectory.push_row(vec![0.0, cloud.positions[0][0], cloud.positions[0][1]]);
    inv_series.push_row(vec![0.0, start.circulation, start.impulse]);

    for k in 1..=steps {
        cloud = step_axisym(&cloud, dt).map_err(numerical)?;
        if k % out_every == 0 || k == steps {
            let t = k as f64 * dt;
            let inv = axisym_invariants(&cloud);
            trajectory.push_row(vec![t, cloud.positions[0][0], cloud.positions[0][1]]);
            inv_series.push_row(vec![t, inv.circulation, inv.impulse]);
            history.push((t, cloud.clone()));
        }
    }

    let end = axisym_invariants(&cloud);
    asserts.le(
        "impulse_rel_drift",
        (end.impulse - start.impulse).abs() / start.impulse.abs(),
        1e-8,
    );
    asserts.le(
        "radius_rel_drift",
        (cloud.positions[0][0] - a).abs() / a,
        1e-8,
    );

    // Filament limit of the center velocity: monotone approach in delta.
    let exact = gamma / (2.0 * a);
    let mut errors = Vec::new();
    for d in [2.0 * delta, delta] {
        let probe = RingCloudAxi::new(vec![[a, 0.0]], vec![gamma], d);
        let u = ring_velocity(&probe, [0.0, 0.0]);
        errors.push((u[1] - exact).abs() / exact);
    }
    asserts.is_true(
        "center_velocity_monotone_in_delta",
        errors[1] < errors[0],
        "error shrinks as the smoothing shrinks",
        errors[1] / errors[0],
    );
    asserts.le("center_velocity_rel_error", errors[1], 0.01);

    let probe_radii = [2.5 * a, 0.5 * a, 0.1 * a];
    let table = axis_energy_probe(&history, &probe_radii, quad);
    asserts.le(
        "axis_energy_fraction",
        *table.max_fraction.last().unwrap(),
        0.05,
    );

    let mut energy = DiagnosticSeries::new("axis_energy", &["t", "radius", "energy", "fraction"]);
    for row in &table.rows {
        energy.push_row(row.to_vec());
    }
    writer.write_series(&trajectory, "trajectory.csv", "ring position over time")?;
    writer.write_series(&inv_series, "invariants.csv", "circulation and impulse")?;
    writer.write_series(&energy, "axis_energy.csv", "near-axis kinetic energy")?;
    writer.write_series(&snapshot(&cloud), "snapshot_final.csv", "rings at the end")?;
    writer.finish(cfg, asserts.into_vec(), 0.0)
}

/// Two coaxial same-signed rings exchanging the lead (leapfrogging) while
/// the shared invariants hold.
pub fn leapfrog(cfg: &ExperimentConfig) -> Result<RunRecord, HarnessError> {
    let a = cfg.f64("radius", 1.0)?;
    let gamma = cfg.f64("circulation", 1.0)?;
    let separation = cfg.f64("separation", 0.4)?;
    let delta = cfg.f64("delta", 0.1)?;
    let dt = cfg.f64("dt", 0.01)?;
    let steps = cfg.usize("steps", 3000)?;
    let out_every = cfg.usize("out_every", 50)?;
    let mut writer = RunWriter::new(cfg)?;
    let mut asserts = Assertions::new();

    let mut cloud = RingCloudAxi::new(vec![[a, 0.0], [a, separation]], vec![gamma, gamma], delta);
    let start = axisym_invariants(&cloud);

    let mut trajectory = DiagnosticSeries::new("trajectory", &["t", "r1", "z1", "r2", "z2"]);
    let mut inv_series = DiagnosticSeries::new("invariants", &["t", "circulation", "impulse"]);
    let mut overtakes = 0usize;
    let mut lead = (cloud.positions[1][1] - cloud.positions[0][1]).signum();

    for k in 0..=steps {
        if k > 0 {
            cloud = step_axisym(&cloud, dt).map_err(numerical)?;
            let gap = cloud.positions[1][1] - cloud.positions[0][1];
            if gap.signum() != lead && gap != 0.0 {
                overtakes += 1;
                lead = gap.signum();
            }
        }
        if k % out_every == 0 || k == steps {
            let t = k as f64 * dt;
            let inv = axisym_invariants(&cloud);
            trajectory.push_row(vec![
                t,
                cloud.positions[0][0],
                cloud.positions[0][1],
                cloud.positions[1][0],
                cloud.positions[1][1],
            ]);
            inv_series.push_row(vec![t, inv.circulation, inv.impulse]);
        }
    }

    let end = axisym_invariants(&cloud);
    asserts.le(
        "impulse_rel_drift",
        (end.impulse - start.impulse).abs() / start.impulse.abs(),
        1e-6,
    );
    asserts.ge("lead_exchanges", overtakes as f64, 1.0);
    asserts.is_true(
        "rings_stayed_off_axis",
        cloud.positions.iter().all(|p| p[0] > 0.0),
        "no axis collision during the run",
        cloud
            .positions
            .iter()
            .map(|p| p[0])
            .fold(f64::INFINITY, f64::min),
    );

    writer.write_series(&trajectory, "trajectory.csv", "ring positions over time")?;
    writer.write_series(&inv_series, "invariants.csv", "circulation and impulse")?;
    writer.write_series(&snapshot(&cloud), "snapshot_final.csv", "rings at the end")?;
    writer.finish(cfg, asserts.into_vec(), 0.0)
}
