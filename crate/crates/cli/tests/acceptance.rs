//! Acceptance suite: one test per release criterion, each printing a
//! pass/fail line. Run with `cargo test -p singflow-cli --test acceptance`
//! (the lines are visible with `-- --nocapture`).

use singflow_cli::config::ExperimentConfig;
use singflow_cli::presets::run_preset;
use singflow_cli::record::RunRecord;
use singflow_core::conical::{
    conical_shock_angle_spherical, run_marching, solve_self_similar_with, ConeGeometry, Freestream,
    MarchParams,
};
use singflow_core::vortex::{invariants2d, step, BlobCloud2D};
use std::f64::consts::PI;
use std::path::Path;

fn report(id: u32, passed: bool, detail: &str) {
    println!(
        "criterion {id:02} {} — {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "criterion {id:02} failed: {detail}");
}

fn preset_record(
    name: &str,
    out: &Path,
    resolution: u32,
    params: &[(&str, toml::Value)],
) -> RunRecord {
    let mut cfg = ExperimentConfig::new(name);
    cfg.out_dir = out.to_path_buf();
    cfg.resolution = resolution;
    for (k, v) in params {
        cfg.params.insert(k.to_string(), v.clone());
    }
    run_preset(&cfg).expect("preset must run")
}

fn observed(record: &RunRecord, assertion: &str) -> f64 {
    let a = record
        .assertions
        .iter()
        .find(|a| a.name == assertion)
        .unwrap_or_else(|| panic!("assertion `{assertion}` not registered"));
    assert!(
        a.passed,
        "registered assertion `{assertion}` failed: observed {}",
        a.observed
    );
    a.observed
}

#[test]
fn criterion_01_conical_background_matches_the_independent_solver() {
    let (fs, gas) = Freestream::with_unit_sound_speed(1.4, 3.0);
    let half_angle = 10.0f64.to_radians();
    let solution =
        solve_self_similar_with(&fs, &gas, half_angle.tan(), 1e-10, 1024).expect("attached");
    let oracle =
        conical_shock_angle_spherical(&fs, &gas, half_angle, 3e-11).expect("oracle attached");
    let angle_diff = (solution.shock_angle() - oracle).to_degrees().abs();

    let coarse = solve_self_similar_with(&fs, &gas, half_angle.tan(), 1e-10, 512).unwrap();
    let ratio = coarse.residual_max() / solution.residual_max();

    report(
        1,
        angle_diff <= 0.1 && ratio >= 3.0,
        &format!(
            "shock angle differs by {angle_diff:.2e} deg (<= 0.1), residual refinement ratio {ratio:.2} (>= 3)"
        ),
    );
}

#[test]
fn criterion_02_shock_angle_approaches_the_mach_angle() {
    let (fs, gas) = Freestream::with_unit_sound_speed(1.4, 3.0);
    let mach_angle_deg = (1.0f64 / 3.0).asin().to_degrees();
    let mut gaps = Vec::new();
    for half_deg in [2.0, 1.0, 0.5] {
        let sol =
            solve_self_similar_with(&fs, &gas, (half_deg as f64).to_radians().tan(), 1e-10, 1024)
                .expect("attached");
        gaps.push(sol.shock_angle().to_degrees() - mach_angle_deg);
    }
    let monotone = gaps[0] > gaps[1] && gaps[1] > gaps[2] && gaps.iter().all(|g| *g > 0.0);
    report(
        2,
        monotone && gaps[2] <= 0.05,
        &format!(
            "gap to the Mach angle over shrinking cones: {:.2e}, {:.2e}, {:.2e} deg (final <= 0.05, monotone)",
            gaps[0], gaps[1], gaps[2]
        ),
    );
}

#[test]
fn criterion_03_self_similar_state_persists_under_the_march() {
    let (fs, gas) = Freestream::with_unit_sound_speed(1.4, 3.0);
    let geom = ConeGeometry::exact_cone(10.0f64.to_radians().tan());
    let params = MarchParams::default();
    let run = run_marching(&fs, &gas, &geom, 1.0, 100.0, &params).expect("march");
    assert!(run.failure.is_none(), "march failed: {:?}", run.failure);

    let max_dev = run.series.rows.iter().map(|r| r[1]).fold(0.0f64, f64::max);
    let persistence = max_dev / run.init_error;

    // Scale invariance: profiles at a station and at twice that station.
    let near = |target: f64| {
        run.profiles
            .iter()
            .min_by(|a, b| (a.z - target).abs().total_cmp(&(b.z - target).abs()))
            .unwrap()
    };
    let (p1, p2) = (near(25.0), near(50.0));
    let mut diff = (p1.shock_radius / p1.z - p2.shock_radius / p2.z).abs();
    for j in 0..p1.dphi_dr.len() {
        diff =
            diff.max((p1.dphi_dr[j] - p2.dphi_dr[j]).abs() + (p1.dphi_dz[j] - p2.dphi_dz[j]).abs());
    }
    let invariance = diff / run.init_error;

    report(
        3,
        persistence <= 10.0 && invariance <= 2.0,
        &format!(
            "deviation stayed within {persistence:.2}x the settled discretization error (<= 10), \
             profiles at z and 2z differ by {invariance:.2}x it (<= 2)"
        ),
    );
}

#[test]
fn criterion_04_perturbation_decay_rate_is_grid_stable() {
    let dir = tempfile::tempdir().unwrap();
    let coarse = preset_record("conical-perturbed", &dir.path().join("r1"), 1, &[]);
    let fine = preset_record("conical-perturbed", &dir.path().join("r2"), 2, &[]);
    let s1 = observed(&coarse, "decay_slope");
    let s2 = observed(&fine, "decay_slope");
    observed(&coarse, "perturbation_admissible");
    let stable = (s1 - s2).abs() <= 0.2 * s1.abs().max(s2.abs());
    report(
        4,
        s1 <= -0.2 && s2 <= -0.2 && stable,
        &format!("decay slopes {s1:.3} and {s2:.3} (both <= -0.2, within 20%)"),
    );
}

#[test]
fn criterion_05_favorable_layer_keeps_monotonicity_and_matches_the_similarity_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let record = preset_record("prandtl-favorable", dir.path(), 1, &[]);
    let min_shear = observed(&record, "min_shear_over_run");
    let growth = observed(&record, "lipschitz_growth_factor");
    let displacement = observed(&record, "displacement_vs_similarity_rel_error");
    report(
        5,
        record.all_passed(),
        &format!(
            "min shear {min_shear:.2e} > 0 at every output, Lipschitz growth {growth:.2} (<= 1.5), \
             displacement thickness off by {:.2}% (<= 2%)",
            100.0 * displacement
        ),
    );
}

#[test]
fn criterion_06_adverse_pressure_collapses_the_wall_shear() {
    let dir = tempfile::tempdir().unwrap();
    let adverse = preset_record("prandtl-adverse", &dir.path().join("adv"), 1, &[]);
    let favorable = preset_record("prandtl-favorable", &dir.path().join("fav"), 1, &[]);
    let adverse_ratio = observed(&adverse, "trailing_wall_shear_ratio");
    let favorable_ratio = observed(&favorable, "trailing_wall_shear_ratio");
    observed(&adverse, "pressure_gradient_flagged_adverse");
    report(
        6,
        adverse_ratio < 0.5 && favorable_ratio > 0.9,
        &format!(
            "trailing wall shear dropped to {:.0}% under the adverse gradient vs {:.1}% kept in the \
             favorable run",
            100.0 * adverse_ratio,
            100.0 * favorable_ratio
        ),
    );
}

#[test]
fn criterion_07_two_body_dynamics_match_the_closed_forms() {
    // Co-rotating pair: one revolution of the separation vector.
    let (d, delta, gamma) = (1.0, 0.1, 1.0);
    let omega = gamma / (PI * (d * d + delta * delta));
    let period_expected = 2.0 * PI / omega;
    let dt = period_expected / 4000.0;
    let mut cloud = BlobCloud2D::new(
        vec![[-0.5 * d, 0.0], [0.5 * d, 0.0]],
        vec![gamma, gamma],
        delta,
    );
    let mut angle_prev = 0.0f64;
    let mut total = 0.0;
    let mut t = 0.0;
    let period_measured = loop {
        cloud = step(&cloud, dt).unwrap();
        t += dt;
        let sep = [
            cloud.positions[1][0] - cloud.positions[0][0],
            cloud.positions[1][1] - cloud.positions[0][1],
        ];
        let angle = sep[1].atan2(sep[0]);
        let mut da = angle - angle_prev;
        if da < -PI {
            da += 2.0 * PI;
        }
        total += da;
        angle_prev = angle;
        if total >= 2.0 * PI {
            break t - dt * (total - 2.0 * PI) / da;
        }
    };
    let period_err = ((period_measured - period_expected) / period_expected).abs();

    // Opposite pair: translation speed, Richardson-extrapolated in delta^2.
    let speed_at = |delta: f64| -> f64 {
        let mut cloud = BlobCloud2D::new(
            vec![[-0.5 * d, 0.0], [0.5 * d, 0.0]],
            vec![gamma, -gamma],
            delta,
        );
        let y0 = cloud.positions[0][1];
        let steps = 400;
        let dt = 2.0 / steps as f64;
        for _ in 0..steps {
            cloud = step(&cloud, dt).unwrap();
        }
        (cloud.positions[0][1] - y0) / 2.0
    };
    let (d1, d2) = (0.05f64, 0.025f64);
    let (v1, v2) = (speed_at(d1), speed_at(d2));
    let (x1, x2) = (d1 * d1, d2 * d2);
    let v_extrapolated = v1 - x1 * (v2 - v1) / (x2 - x1);
    let v_expected = gamma / (2.0 * PI * d);
    let speed_err = ((v_extrapolated - v_expected) / v_expected).abs();

    report(
        7,
        period_err < 1e-3 && speed_err < 5e-3,
        &format!(
            "co-rotation period off by {:.4}% (< 0.1%), pair speed off by {:.4}% (< 0.5%)",
            100.0 * period_err,
            100.0 * speed_err
        ),
    );
}

#[test]
fn criterion_08_conservation_suite_over_ten_thousand_steps() {
    // One-signed disk of 100 atoms, centered off the origin so the impulse
    // and angular impulse are nonzero.
    let mut positions = Vec::new();
    let rings = [
        (1usize, 0.0f64),
        (6, 0.35),
        (12, 0.65),
        (18, 0.85),
        (63, 1.0),
    ];
    for (count, radius) in rings {
        for k in 0..count {
            let phi = 2.0 * PI * k as f64 / count as f64;
            positions.push([2.0 + radius * phi.cos(), radius * phi.sin()]);
        }
    }
    assert_eq!(positions.len(), 100);
    let n = positions.len();
    let mut cloud = BlobCloud2D::new(positions, vec![1.0 / n as f64; n], 0.2);

    let start = invariants2d(&cloud);
    let steps = 10_000;
    let dt = 0.01;
    for _ in 0..steps {
        cloud = step(&cloud, dt).unwrap();
    }
    let end = invariants2d(&cloud);

    let circulation_exact = end.circulation == start.circulation;
    let rel = |a: f64, b: f64| ((a - b) / b).abs();
    let impulse_per_step = rel(end.impulse[0], start.impulse[0]).max(
        (end.impulse[1] - start.impulse[1]).abs() / start.impulse[0].abs(), // impulse_y starts at 0; scale by the nonzero component
    ) / steps as f64;
    let angular_per_step = rel(end.angular_impulse, start.angular_impulse) / steps as f64;
    let hamiltonian_total = rel(end.hamiltonian, start.hamiltonian);

    report(
        8,
        circulation_exact
            && impulse_per_step < 1e-10
            && angular_per_step < 1e-10
            && hamiltonian_total < 1e-6,
        &format!(
            "circulation bit-exact, impulse drift {impulse_per_step:.1e}/step and angular drift \
             {angular_per_step:.1e}/step (< 1e-10), Hamiltonian drift {hamiltonian_total:.1e} (< 1e-6)"
        ),
    );
}

#[test]
fn criterion_09_mirror_sheets_stay_symmetric_without_concentration() {
    let dir = tempfile::tempdir().unwrap();
    let record = preset_record("sheet-mirror", dir.path(), 1, &[]);
    observed(&record, "mirror_symmetry_preserved");
    let circulation = observed(&record, "total_circulation_abs");
    let fraction = observed(&record, "concentration_fraction_smallest_ball");
    report(
        9,
        record.all_passed(),
        &format!(
            "symmetry within 1e-12 and total circulation {circulation:.1e} for the full run; \
             smallest-ball mass fraction {:.3} (<= 0.25), monotone over radii",
            fraction
        ),
    );
}

#[test]
fn criterion_10_axisymmetric_ring_suite() {
    let dir = tempfile::tempdir().unwrap();
    let record = preset_record("ring-single", dir.path(), 1, &[]);
    let impulse = observed(&record, "impulse_rel_drift");
    let center = observed(&record, "center_velocity_rel_error");
    observed(&record, "center_velocity_monotone_in_delta");
    let energy = observed(&record, "axis_energy_fraction");
    report(
        10,
        record.all_passed(),
        &format!(
            "impulse drift {impulse:.1e} per 1e3 steps (< 1e-8), center velocity within \
             {:.2}% of the filament value (< 1%, monotone in delta), near-axis energy fraction \
             {:.2}% (< 5%)",
            100.0 * center,
            100.0 * energy
        ),
    );
}

#[test]
fn criterion_11_reruns_reproduce_byte_identical_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let overrides: Vec<(&str, toml::Value)> = vec![
        ("steps", toml::Value::Integer(300)),
        ("out_every", toml::Value::Integer(50)),
        ("perturbation_atoms", toml::Value::Integer(20)),
    ];
    let (out_a, out_b) = (dir.path().join("a"), dir.path().join("b"));
    preset_record("sheet-one-sign", &out_a, 1, &overrides);
    preset_record("sheet-one-sign", &out_b, 1, &overrides);
    let mut checked = 0;
    for entry in std::fs::read_dir(&out_a).unwrap() {
        let name = entry.unwrap().file_name();
        if name.to_string_lossy().ends_with(".csv") {
            let a = std::fs::read(out_a.join(&name)).unwrap();
            let b = std::fs::read(out_b.join(&name)).unwrap();
            assert_eq!(a, b, "{name:?} differs between identical seeded runs");
            checked += 1;
        }
    }
    report(
        11,
        checked >= 4,
        &format!("{checked} CSV artifacts byte-identical across seeded reruns"),
    );
}
