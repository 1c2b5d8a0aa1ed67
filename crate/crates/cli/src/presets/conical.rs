use crate::config::ExperimentConfig;
use crate::error::HarnessError;
use crate::record::{Assertions, RunRecord, RunWriter};
use singflow_core::conical::{
    check_cone_admissibility, conical_shock_angle_spherical, run_decay_study, run_marching,
    solve_self_similar_with, ConeGeometry, Freestream, MarchParams,
};
use singflow_core::DiagnosticSeries;

fn march_params(cfg: &ExperimentConfig) -> Result<MarchParams, HarnessError> {
    Ok(MarchParams {
        n_xi: cfg.scaled(cfg.usize("n_xi", 64)?),
        n_background: cfg.scaled(cfg.usize("n_background", 1024)?),
        cfl_safety: cfg.f64("cfl_safety", 0.8)?,
        tol_sigma: cfg.f64("tol_sigma", 1e-10)?,
        settle_factor: cfg.f64("settle_factor", 0.5)?,
        stations_per_decade: cfg.usize("stations_per_decade", 16)?,
    })
}

fn stream(
    cfg: &ExperimentConfig,
) -> Result<(Freestream, singflow_core::conical::GasModel, f64), HarnessError> {
    let gamma = cfg.f64("gamma", 1.4)?;
    let mach = cfg.f64("mach", 3.0)?;
    let cone_deg = cfg.f64("cone_deg", 10.0)?;
    let (fs, gas) = Freestream::with_unit_sound_speed(gamma, mach);
    Ok((fs, gas, cone_deg.to_radians()))
}

fn numerical(e: impl std::fmt::Display) -> HarnessError {
    HarnessError::Numerical(e.to_string())
}

/// Background conical flow: shock angle vs the spherical-formulation check
/// solver, residual convergence, and persistence of the self-similar state
/// under the axial march.
pub fn self_similar(cfg: &ExperimentConfig) -> Result<RunRecord, HarnessError> {
    let (fs, gas, half_angle) = stream(cfg)?;
    let b0 = half_angle.tan();
    let params = march_params(cfg)?;
    let z_start = cfg.f64("z_start", 1.0)?;
    let z_end = cfg.f64("z_end", 100.0)?;
    let mut writer = RunWriter::new(cfg)?;
    let mut asserts = Assertions::new();

    let background = solve_self_similar_with(&fs, &gas, b0, params.tol_sigma, params.n_background)
        .map_err(numerical)?;
    // A different tolerance decorrelates the two bisection paths, so the
    // agreement reflects the physics rather than shared iteration counts.
    let oracle_angle = conical_shock_angle_spherical(&fs, &gas, half_angle, 0.3 * params.tol_sigma)
        .map_err(numerical)?;
    let angle_diff_deg = (background.shock_angle() - oracle_angle).to_degrees().abs();
    asserts.le("shock_angle_vs_spherical_solver_deg", angle_diff_deg, 0.1);

    let coarse = solve_self_similar_with(&fs, &gas, b0, params.tol_sigma, params.n_background / 2)
        .map_err(numerical)?;
    let residual_ratio = coarse.residual_max() / background.residual_max();
    asserts.ge("interior_residual_refinement_ratio", residual_ratio, 3.0);

    let geom = ConeGeometry::exact_cone(b0);
    let run = run_marching(&fs, &gas, &geom, z_start, z_end, &params).map_err(numerical)?;
    if let Some(f) = &run.failure {
        return Err(HarnessError::Numerical(format!(
            "march failed at z = {}: {}",
            f.z, f.error
        )));
    }
    let max_dev = run.series.rows.iter().map(|r| r[1]).fold(0.0f64, f64::max);
    asserts.le(
        "self_similar_deviation_over_init_error",
        max_dev / run.init_error,
        10.0,
    );

    // Scale invariance: normalized profiles at a station and its double.
    let z_mid = (z_start * z_end).sqrt() / 2.0f64.sqrt();
    let near = |target: f64| {
        run.profiles
            .iter()
            .min_by(|a, b| (a.z - target).abs().total_cmp(&(b.z - target).abs()))
            .expect("profiles recorded")
    };
    let (p1, p2) = (near(z_mid), near(2.0 * z_mid));
    let mut profile_diff = (p1.shock_radius / p1.z - p2.shock_radius / p2.z).abs();
    for j in 0..p1.dphi_dr.len() {
        profile_diff = profile_diff
            .max((p1.dphi_dr[j] - p2.dphi_dr[j]).abs() + (p1.dphi_dz[j] - p2.dphi_dz[j]).abs());
    }
    asserts.le(
        "scale_invariance_over_init_error",
        profile_diff / run.init_error,
        2.0,
    );

    writer.write_series(
        &run.series,
        "series.csv",
        "deviation from the self-similar background along the march",
    )?;
    let mut bg_series = DiagnosticSeries::new("background", &["s", "u", "w", "rho"]);
    for (((s, u), w), rho) in background
        .grid()
        .iter()
        .zip(background.u_profile())
        .zip(background.w_profile())
        .zip(background.rho_profile())
    {
        bg_series.push_row(vec![*s, *u, *w, *rho]);
    }
    writer.write_series(&bg_series, "background.csv", "self-similar profiles")?;

    writer.finish(cfg, asserts.into_vec(), 0.0)
}

/// Compactly supported body perturbation: admissibility of the scaled
/// derivatives, then the decay rate of the response measured against an
/// exact-cone twin march on the same grid.
pub fn perturbed(cfg: &ExperimentConfig) -> Result<RunRecord, HarnessError> {
    let (fs, gas, half_angle) = stream(cfg)?;
    let b0 = half_angle.tan();
    let params = march_params(cfg)?;
    let z_start = cfg.f64("z_start", 1.0)?;
    let z_end = cfg.f64("z_end", 1000.0)?;
    let fit_lo = cfg.f64("fit_lo", 10.0)?;
    let fit_hi = cfg.f64("fit_hi", 1000.0)?;
    let eps0 = cfg.f64("eps0", 1.0)?;
    let k1 = cfg.usize("k1", 2)?;
    let k2 = cfg.usize("k2", 2)?;
    let mut writer = RunWriter::new(cfg)?;
    let mut asserts = Assertions::new();

    let samples: Vec<(f64, f64)> = match cfg.string("perturbation_csv")? {
        Some(path) => {
            let series = DiagnosticSeries::read_csv(std::path::Path::new(&path))
                .map_err(|e| HarnessError::Usage(format!("perturbation CSV: {e}")))?;
            series.rows.iter().map(|r| (r[0], r[1])).collect()
        }
        None => {
            // Smooth bump supported on [support_lo, support_hi].
            let eps = cfg.f64("eps", 0.01)?;
            let lo = cfg.f64("support_lo", 1.0)?;
            let hi = cfg.f64("support_hi", 2.0)?;
            let n = cfg.usize("n_samples", 401)?;
            (0..n)
                .map(|i| {
                    let z = lo + (hi - lo) * i as f64 / (n - 1) as f64;
                    let t = 2.0 * (z - lo) / (hi - lo) - 1.0;
                    (z, eps * (1.0 - t * t).powi(3))
                })
                .collect()
        }
    };
    let geom = ConeGeometry::from_samples(b0, &samples, eps0, k1, k2).map_err(numerical)?;

    let report = check_cone_admissibility(&geom).map_err(numerical)?;
    let worst = report
        .per_order
        .iter()
        .map(|b| b.max_value)
        .fold(0.0f64, f64::max);
    asserts.is_true(
        "perturbation_admissible",
        report.passed,
        &format!("scaled derivatives <= {eps0}"),
        worst,
    );

    let study = run_decay_study(&fs, &gas, &geom, z_start, z_end, (fit_lo, fit_hi), &params)
        .map_err(numerical)?;
    for (name, run) in [
        ("perturbed", &study.perturbed),
        ("baseline", &study.baseline),
    ] {
        if let Some(f) = &run.failure {
            return Err(HarnessError::Numerical(format!(
                "{name} march failed at z = {}: {}",
                f.z, f.error
            )));
        }
    }
    let slope = study
        .slope
        .ok_or_else(|| HarnessError::Numerical("decay slope could not be fit".into()))?;
    asserts.le("decay_slope", slope, -0.2);

    writer.write_series(
        &study.series,
        "series.csv",
        "perturbation response (twin distance) and background deviation",
    )?;
    let mut pert = DiagnosticSeries::new("perturbation", &["z", "p"]);
    for (z, p) in geom.samples() {
        pert.push_row(vec![z, p]);
    }
    writer.write_series(&pert, "perturbation.csv", "body perturbation samples")?;
    let mut adm = DiagnosticSeries::new("admissibility", &["order", "max_value", "at_z"]);
    for b in &report.per_order {
        adm.push_row(vec![b.order as f64, b.max_value, b.at_z]);
    }
    writer.write_series(&adm, "admissibility.csv", "scaled-derivative bounds")?;

    writer.finish(cfg, asserts.into_vec(), 0.0)
}
