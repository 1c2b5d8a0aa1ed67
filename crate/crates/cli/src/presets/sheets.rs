use crate::config::ExperimentConfig;
use crate::error::HarnessError;
use crate::record::{Assertions, RunRecord, RunWriter};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use singflow_core::vortex::{
    build_sheet, check_mirror_symmetry, concentration_sup, invariants2d, local_energy, step,
    BlobCloud2D, CurveSpec, SheetSpec, SignPattern, StrengthSpec,
};
use singflow_core::DiagnosticSeries;

fn numerical(e: impl std::fmt::Display) -> HarnessError {
    HarnessError::Numerical(e.to_string())
}

fn snapshot(cloud: &BlobCloud2D) -> DiagnosticSeries {
    let mut s = DiagnosticSeries::new("snapshot", &["x1", "x2", "gamma"]);
    for (p, g) in cloud.positions.iter().zip(&cloud.circulations) {
        s.push_row(vec![p[0], p[1], *g]);
    }
    s
}

fn invariant_series() -> DiagnosticSeries {
    DiagnosticSeries::new(
        "invariants",
        &[
            "t",
            "circulation",
            "impulse_x",
            "impulse_y",
            "angular_impulse",
            "hamiltonian",
        ],
    )
}

fn push_invariants(series: &mut DiagnosticSeries, t: f64, cloud: &BlobCloud2D) {
    let inv = invariants2d(cloud);
    series.push_row(vec![
        t,
        inv.circulation,
        inv.impulse[0],
        inv.impulse[1],
        inv.angular_impulse,
        inv.hamiltonian,
    ]);
}

/// Flat one-signed sheet rolling up at its edges; conservation of the
/// smoothed dynamics is the registered assertion set. A seeded field of
/// weak same-signed atoms models an integrable perturbation of the sheet
/// when `perturbation_atoms > 0`.
pub fn one_sign(cfg: &ExperimentConfig) -> Result<RunRecord, HarnessError> {
    let n = cfg.usize("atoms", 100)?;
    let delta = cfg.f64("delta", 0.1)?;
    let dt = cfg.f64("dt", 0.005)?;
    let steps = cfg.usize("steps", 2000)?;
    let out_every = cfg.usize("out_every", 100)?;
    let extra = cfg.usize("perturbation_atoms", 0)?;
    let mut writer = RunWriter::new(cfg)?;
    let mut asserts = Assertions::new();

    let mut cloud = build_sheet(
        &SheetSpec {
            curve: CurveSpec::Segment {
                from: [-1.0, 0.0],
                to: [1.0, 0.0],
            },
            strength: StrengthSpec::Constant(1.0),
            sign_pattern: SignPattern::OneSign,
        },
        n,
        delta,
    )
    .map_err(numerical)?;

    if extra > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let weak = 0.01 * cloud.total_absolute_circulation() / extra as f64;
        for _ in 0..extra {
            let r: f64 = rng.gen_range(0.0f64..1.5);
            let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            cloud.positions.push([r * phi.cos(), r * phi.sin()]);
            cloud.circulations.push(weak);
        }
    }

    let energy_radius = cfg.f64("energy_radius", 1.5)?;
    let start = invariants2d(&cloud);
    let mut inv_series = invariant_series();
    let mut conc_series =
        DiagnosticSeries::new("concentration", &["t", "radius", "sup_mass", "cx", "cy"]);
    let mut energy_series = DiagnosticSeries::new("local_energy", &["t", "radius", "energy"]);
    push_invariants(&mut inv_series, 0.0, &cloud);
    energy_series.push_row(vec![
        0.0,
        energy_radius,
        local_energy(&cloud, energy_radius, 48),
    ]);
    writer.write_series(&snapshot(&cloud), "snapshot_initial.csv", "atoms at t = 0")?;

    let mut mid_written = false;
    for k in 1..=steps {
        cloud = step(&cloud, dt).map_err(numerical)?;
        if k % out_every == 0 || k == steps {
            let t = k as f64 * dt;
            push_invariants(&mut inv_series, t, &cloud);
            energy_series.push_row(vec![
                t,
                energy_radius,
                local_energy(&cloud, energy_radius, 48),
            ]);
            for radius in [0.2, 0.1] {
                let rep = concentration_sup(&cloud, radius, radius / 4.0);
                conc_series.push_row(vec![
                    t,
                    radius,
                    rep.sup_mass,
                    rep.arg_center[0],
                    rep.arg_center[1],
                ]);
            }
            if !mid_written && k >= steps / 2 {
                writer.write_series(&snapshot(&cloud), "snapshot_mid.csv", "atoms at mid run")?;
                mid_written = true;
            }
        }
    }
    writer.write_series(&snapshot(&cloud), "snapshot_final.csv", "atoms at the end")?;

    // Local kinetic energy stays bounded over the run (finite for any
    // positive smoothing; a growth trend would flag an energy defect).
    let energies: Vec<f64> = energy_series.rows.iter().map(|r| r[2]).collect();
    let max_energy = energies.iter().fold(0.0f64, |m, v| m.max(*v));
    asserts.le(
        "local_energy_growth",
        max_energy / energies[0].max(1e-300),
        1.5,
    );

    let end = invariants2d(&cloud);
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1e-300);
    asserts.le(
        "circulation_change",
        (end.circulation - start.circulation).abs(),
        0.0,
    );
    // The sheet is centered, so the impulse starts near zero; its drift is
    // normalized by the circulation scale instead of the initial value.
    let scale = cloud.total_absolute_circulation();
    let impulse_drift = ((end.impulse[0] - start.impulse[0]).powi(2)
        + (end.impulse[1] - start.impulse[1]).powi(2))
    .sqrt()
        / scale;
    asserts.le("impulse_drift_per_unit_circulation", impulse_drift, 1e-8);
    asserts.le(
        "angular_impulse_rel_drift",
        rel(end.angular_impulse, start.angular_impulse),
        1e-8,
    );
    asserts.le(
        "hamiltonian_rel_drift",
        rel(end.hamiltonian, start.hamiltonian),
        1e-6,
    );
    let final_conc = concentration_sup(&cloud, 0.1, 0.025);
    asserts.le(
        "concentration_bounded_by_total",
        final_conc.sup_mass,
        cloud.total_absolute_circulation(),
    );

    writer.write_series(
        &inv_series,
        "invariants.csv",
        "conserved quantities over time",
    )?;
    writer.write_series(
        &conc_series,
        "concentration.csv",
        "ball-mass suprema over time",
    )?;
    writer.write_series(
        &energy_series,
        "local_energy.csv",
        "kinetic energy in a fixed disk",
    )?;
    writer.finish(cfg, asserts.into_vec(), 0.0)
}

/// Mirror-symmetric pair of sheets: the symmetry class is preserved to
/// round-off, total circulation cancels exactly, and the captured ball mass
/// decreases with radius without piling onto shrinking balls.
pub fn mirror(cfg: &ExperimentConfig) -> Result<RunRecord, HarnessError> {
    let n_half = cfg.usize("atoms_half", 64)?;
    let delta = cfg.f64("delta", 0.1)?;
    let dt = cfg.f64("dt", 0.005)?;
    let steps = cfg.usize("steps", 200)?;
    let out_every = cfg.usize("out_every", 20)?;
    let threshold = cfg.f64("concentration_threshold", 0.25)?;
    let mut writer = RunWriter::new(cfg)?;
    let mut asserts = Assertions::new();

    // Unit strength over unit length with a power-of-two element count keeps
    // every circulation binary-representable, so the block-ordered total
    // cancels exactly.
    let mut cloud = build_sheet(
        &SheetSpec {
            curve: CurveSpec::Segment {
                from: [0.2, 0.0],
                to: [1.2, 0.0],
            },
            strength: StrengthSpec::Constant(1.0),
            sign_pattern: SignPattern::NmsPair,
        },
        n_half,
        delta,
    )
    .map_err(numerical)?;

    let mut inv_series = invariant_series();
    let mut sym_series = DiagnosticSeries::new("symmetry", &["t", "symmetric", "circulation"]);
    push_invariants(&mut inv_series, 0.0, &cloud);
    writer.write_series(&snapshot(&cloud), "snapshot_initial.csv", "atoms at t = 0")?;

    let mut worst_circ = cloud.total_circulation().abs();
    let mut always_symmetric = check_mirror_symmetry(&cloud, 1e-12);
    for k in 1..=steps {
        cloud = step(&cloud, dt).map_err(numerical)?;
        if k % out_every == 0 || k == steps {
            let t = k as f64 * dt;
            let sym = check_mirror_symmetry(&cloud, 1e-12);
            always_symmetric &= sym;
            worst_circ = worst_circ.max(cloud.total_circulation().abs());
            push_invariants(&mut inv_series, t, &cloud);
            sym_series.push_row(vec![t, sym as u8 as f64, cloud.total_circulation()]);
        }
    }
    writer.write_series(&snapshot(&cloud), "snapshot_final.csv", "atoms at t = T")?;

    asserts.is_true(
        "mirror_symmetry_preserved",
        always_symmetric,
        "pairing within 1e-12 at every output",
        always_symmetric as u8 as f64,
    );
    asserts.le("total_circulation_abs", worst_circ, 0.0);

    let mut conc_series =
        DiagnosticSeries::new("concentration", &["t", "radius", "sup_mass", "fraction"]);
    let total_abs = cloud.total_absolute_circulation();
    let mut prev = f64::INFINITY;
    let mut monotone = true;
    let mut smallest_fraction = f64::NAN;
    for radius in [0.2, 0.1, 0.05] {
        let rep = concentration_sup(&cloud, radius, radius / 4.0);
        monotone &= rep.sup_mass <= prev + 1e-15;
        prev = rep.sup_mass;
        smallest_fraction = rep.sup_mass / total_abs;
        conc_series.push_row(vec![
            steps as f64 * dt,
            radius,
            rep.sup_mass,
            smallest_fraction,
        ]);
    }
    asserts.is_true(
        "concentration_monotone_in_radius",
        monotone,
        "nested balls capture nested mass",
        prev,
    );
    asserts.le(
        "concentration_fraction_smallest_ball",
        smallest_fraction,
        threshold,
    );

    writer.write_series(
        &inv_series,
        "invariants.csv",
        "conserved quantities over time",
    )?;
    writer.write_series(&sym_series, "symmetry.csv", "symmetry flag and circulation")?;
    writer.write_series(
        &conc_series,
        "concentration.csv",
        "ball-mass suprema at t = T",
    )?;
    writer.finish(cfg, asserts.into_vec(), 0.0)
}
