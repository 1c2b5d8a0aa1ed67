use crate::config::ExperimentConfig;
use crate::error::HarnessError;
use crate::record::{Assertions, RunRecord, RunWriter};
use singflow_core::numerics::{trapezoid, Grid1D};
use singflow_core::prandtl::{
    advance, blasius_profile, lipschitz_diagnostics, min_shear, validate_data, wall_shear,
    BLConfig, BLState, EulerTrace, InflowData, InitialData, PrandtlError, WallTranspiration,
};
use singflow_core::DiagnosticSeries;

fn numerical(e: impl std::fmt::Display) -> HarnessError {
    HarnessError::Numerical(e.to_string())
}

fn build_config(
    cfg: &ExperimentConfig,
    trace: EulerTrace,
    virtual_origin: f64,
    y_max: f64,
    dt_default: f64,
) -> Result<BLConfig, HarnessError> {
    let profile = blasius_profile(800).map_err(numerical)?;
    Ok(BLConfig {
        nu: cfg.f64("nu", 0.01)?,
        length: cfg.f64("length", 1.0)?,
        t_final: cfg.f64("t_final", 4.0)?,
        y_max: cfg.f64("y_max", y_max)?,
        nx: cfg.scaled(cfg.usize("nx", 64)?),
        ny: cfg.scaled(cfg.usize("ny", 128)?),
        dt: cfg.f64("dt", dt_default)? / cfg.resolution as f64,
        trace,
        initial: InitialData::BlasiusFamily {
            virtual_origin: cfg.f64("virtual_origin", virtual_origin)?,
            profile,
        },
        inflow: InflowData::FrozenInitial,
        wall: WallTranspiration::Constant(cfg.f64("wall_transpiration", 0.0)?),
    })
}

fn displacement_thickness(state: &BLState, bl: &BLConfig, i: usize) -> f64 {
    let u_edge = bl.trace.value(bl.x(i), state.t);
    let grid = Grid1D::uniform(0.0, bl.y_max, bl.ny).expect("grid");
    let vals: Vec<f64> = (0..bl.ny)
        .map(|j| 1.0 - state.u.at(i, j) / u_edge)
        .collect();
    trapezoid(&vals, &grid).expect("aligned")
}

struct BlRun {
    states: Vec<BLState>,
    series: DiagnosticSeries,
    shear_series: DiagnosticSeries,
    initial_shear: Vec<f64>,
    /// Minimum over the run of trailing-station wall shear over its initial
    /// value.
    min_trailing_ratio: f64,
    min_shear_over_run: f64,
    separation: Option<(f64, f64)>,
}

/// Time marches the configuration, recording outputs every `out_every`
/// steps. A transport breakdown freezes the run and is reported as a
/// separation event (position, time) instead of an error.
fn march(bl: &BLConfig, out_every: usize, trailing_frac: f64) -> Result<BlRun, HarnessError> {
    let mut state = BLState::init(bl);
    let initial_shear = wall_shear(&state, bl);
    let i_trail = ((bl.nx - 1) as f64 * trailing_frac).round() as usize;

    let mut states = vec![state.clone()];
    let mut series = DiagnosticSeries::new(
        "series",
        &["t", "min_shear", "sup_dudx", "sup_dudy", "sup_dudt"],
    );
    let mut shear_series = DiagnosticSeries::new("wall_shear", &["t", "x", "tau"]);
    let mut min_trailing_ratio = 1.0f64;
    let mut min_shear_over_run = f64::INFINITY;
    let mut separation = None;

    let mut record = |state: &BLState, states: &[BLState]| {
        let ms = min_shear(state, bl);
        let lip = if states.len() >= 2 {
            lipschitz_diagnostics(states, bl)
        } else {
            lipschitz_diagnostics(&[state.clone(), state.clone()], bl)
        };
        let mut row = vec![state.t, ms, lip.sup_dudx, lip.sup_dudy, lip.sup_dudt];
        if row[1].is_nan() {
            row[1] = 0.0;
        }
        series.push_row(row);
        for (i, tau) in wall_shear(state, bl).iter().enumerate() {
            shear_series.push_row(vec![state.t, bl.x(i), *tau]);
        }
    };
    record(&state, &states);

    let steps = (bl.t_final / bl.dt).round() as usize;
    for k in 1..=steps {
        match advance(&state, bl, bl.dt) {
            Ok(next) => state = next,
            Err(PrandtlError::UpwindBreakdown { x, .. }) => {
                separation = Some((state.t, x));
                break;
            }
            Err(e) => return Err(numerical(e)),
        }
        let shear_now = wall_shear(&state, bl);
        min_trailing_ratio = min_trailing_ratio.min(shear_now[i_trail] / initial_shear[i_trail]);
        min_shear_over_run = min_shear_over_run.min(min_shear(&state, bl));
        if k % out_every == 0 || k == steps {
            states.push(state.clone());
            record(&state, &states);
        }
    }

    Ok(BlRun {
        states,
        series,
        shear_series,
        initial_shear,
        min_trailing_ratio,
        min_shear_over_run,
        separation,
    })
}

/// Uniform edge speed with monotone similarity data: wall-shear positivity
/// persists, the Lipschitz maxima stay flat, and the settled layer matches
/// the similarity solution's displacement thickness.
pub fn favorable(cfg: &ExperimentConfig) -> Result<RunRecord, HarnessError> {
    let bl = build_config(cfg, EulerTrace::Uniform(1.0), 1.0, 0.85, 0.008)?;
    let out_every = cfg.usize("out_every", 50)?;
    let mut writer = RunWriter::new(cfg)?;
    let mut asserts = Assertions::new();

    let report = validate_data(&bl);
    asserts.is_true(
        "data_hypotheses_hold",
        report.all_passed(),
        "all sign/monotonicity checks pass",
        report.checks.iter().filter(|c| !c.passed).count() as f64,
    );

    let run = march(&bl, out_every, 0.9)?;
    if let Some((t, x)) = run.separation {
        return Err(HarnessError::Numerical(format!(
            "favorable run separated at t = {t}, x = {x}"
        )));
    }
    asserts.ge(
        "min_shear_over_run",
        run.min_shear_over_run,
        f64::MIN_POSITIVE,
    );

    // No-growth check on the running Lipschitz maxima: final vs first
    // quarter of the horizon (at least the first two stored states).
    let mut quarter: Vec<BLState> = run
        .states
        .iter()
        .filter(|s| s.t <= bl.t_final / 4.0)
        .cloned()
        .collect();
    if quarter.len() < 2 {
        quarter = run.states[..2].to_vec();
    }
    let early = lipschitz_diagnostics(&quarter, &bl);
    let full = lipschitz_diagnostics(&run.states, &bl);
    let growth = (full.sup_dudx / early.sup_dudx)
        .max(full.sup_dudy / early.sup_dudy)
        .max(if early.sup_dudt > 0.0 {
            full.sup_dudt / early.sup_dudt
        } else {
            1.0
        });
    asserts.le("lipschitz_growth_factor", growth, 1.5);

    // Displacement thickness vs the similarity oracle at interior stations.
    let profile = blasius_profile(800).map_err(numerical)?;
    let x0 = cfg.f64("virtual_origin", 1.0)?;
    let final_state = run.states.last().expect("states recorded");
    let mut displacement = DiagnosticSeries::new("displacement", &["x", "measured", "oracle"]);
    let mut worst_rel = 0.0f64;
    for frac in [0.5, 0.75, 0.9] {
        let i = ((bl.nx - 1) as f64 * frac).round() as usize;
        let x = bl.x(i);
        let measured = displacement_thickness(final_state, &bl, i);
        let oracle = profile.displacement * (bl.nu * (x + x0)).sqrt();
        worst_rel = worst_rel.max((measured - oracle).abs() / oracle);
        displacement.push_row(vec![x, measured, oracle]);
    }
    asserts.le("displacement_vs_similarity_rel_error", worst_rel, 0.02);
    asserts.ge("trailing_wall_shear_ratio", run.min_trailing_ratio, 0.9);

    writer.write_series(
        &run.series,
        "series.csv",
        "shear minimum and Lipschitz maxima",
    )?;
    writer.write_series(
        &run.shear_series,
        "wall_shear.csv",
        "wall shear per station",
    )?;
    writer.write_series(
        &displacement,
        "displacement.csv",
        "displacement thickness vs oracle",
    )?;
    writer.finish(cfg, asserts.into_vec(), 0.0)
}

/// Favorable configuration marched to a discrete steady state, then compared
/// in detail against the flat-plate similarity solution: displacement
/// thickness and wall shear at interior stations.
pub fn blasius_steady(cfg: &ExperimentConfig) -> Result<RunRecord, HarnessError> {
    let bl = build_config(cfg, EulerTrace::Uniform(1.0), 1.0, 0.85, 0.008)?;
    let t_max = cfg.f64("t_max", 8.0)?;
    let steady_tol = cfg.f64("steady_tol", 1e-6)?;
    let mut writer = RunWriter::new(cfg)?;
    let mut asserts = Assertions::new();

    let mut state = BLState::init(&bl);
    let mut rate = f64::INFINITY;
    while state.t < t_max && rate > steady_tol {
        let next = advance(&state, &bl, bl.dt).map_err(numerical)?;
        rate = (0..bl.nx)
            .flat_map(|i| (0..bl.ny).map(move |j| (i, j)))
            .map(|(i, j)| (next.u.at(i, j) - state.u.at(i, j)).abs() / bl.dt)
            .fold(0.0f64, f64::max);
        state = next;
    }
    asserts.le("steady_residual", rate, steady_tol);

    let profile = blasius_profile(800).map_err(numerical)?;
    let x0 = cfg.f64("virtual_origin", 1.0)?;
    let mut displacement = DiagnosticSeries::new("displacement", &["x", "measured", "oracle"]);
    let mut worst_disp = 0.0f64;
    let mut worst_shear = 0.0f64;
    let shear = wall_shear(&state, &bl);
    for frac in [0.5, 0.75, 0.9] {
        let i = ((bl.nx - 1) as f64 * frac).round() as usize;
        let x = bl.x(i);
        let measured = displacement_thickness(&state, &bl, i);
        let oracle = profile.displacement * (bl.nu * (x + x0)).sqrt();
        worst_disp = worst_disp.max((measured - oracle).abs() / oracle);
        displacement.push_row(vec![x, measured, oracle]);

        let tau_oracle = profile.wall_curvature / (bl.nu * (x + x0)).sqrt();
        worst_shear = worst_shear.max((shear[i] - tau_oracle).abs() / tau_oracle);
    }
    asserts.le("displacement_vs_similarity_rel_error", worst_disp, 0.02);
    asserts.le("wall_shear_vs_similarity_rel_error", worst_shear, 0.02);

    // Normalized profile at the mid station against the similarity shape.
    let i_mid = (bl.nx - 1) / 2;
    let x_mid = bl.x(i_mid);
    let mut shape =
        DiagnosticSeries::new("profile", &["eta", "u_over_u_measured", "u_over_u_oracle"]);
    let mut worst_shape = 0.0f64;
    for j in 0..bl.ny {
        let eta = bl.y(j) * (1.0 / (bl.nu * (x_mid + x0))).sqrt();
        let measured = state.u.at(i_mid, j);
        let oracle = profile.velocity_ratio(eta);
        worst_shape = worst_shape.max((measured - oracle).abs());
        shape.push_row(vec![eta, measured, oracle]);
    }
    asserts.le("profile_shape_sup_error", worst_shape, 0.02);

    writer.write_series(
        &displacement,
        "displacement.csv",
        "displacement thickness vs oracle",
    )?;
    writer.write_series(
        &shape,
        "profile_final.csv",
        "settled profile vs similarity shape",
    )?;
    writer.finish(cfg, asserts.into_vec(), 0.0)
}

/// Decelerating edge speed: the favorable-pressure hypothesis fails by
/// construction and the trailing-station wall shear collapses (or the run
/// separates outright), the qualitative contrast to the favorable preset.
pub fn adverse(cfg: &ExperimentConfig) -> Result<RunRecord, HarnessError> {
    let slope = cfg.f64("edge_slope", -0.3)?;
    let bl = build_config(
        cfg,
        EulerTrace::LinearInX {
            at_inlet: 1.0,
            slope,
        },
        0.25,
        1.25,
        0.006,
    )?;
    let out_every = cfg.usize("out_every", 50)?;
    let mut writer = RunWriter::new(cfg)?;
    let mut asserts = Assertions::new();

    let report = validate_data(&bl);
    let pressure_check = report
        .check("pressure_favorable")
        .expect("check registered");
    asserts.is_true(
        "pressure_gradient_flagged_adverse",
        !pressure_check.passed,
        "favorable-pressure hypothesis must fail",
        pressure_check.worst.map(|w| w.2).unwrap_or(0.0),
    );
    let others_ok = report
        .checks
        .iter()
        .filter(|c| c.name != "pressure_favorable")
        .all(|c| c.passed);
    asserts.is_true(
        "remaining_data_hypotheses_hold",
        others_ok,
        "sign/monotonicity checks besides the pressure pass",
        0.0,
    );

    let run = march(&bl, out_every, 0.9)?;
    // Separation (upwind breakdown) is tolerated here: the run freezes and
    // the shear ratio keeps its last value, which only strengthens the drop.
    let observed_ratio = if run.separation.is_some() {
        0.0
    } else {
        run.min_trailing_ratio
    };
    asserts.le("trailing_wall_shear_ratio", observed_ratio, 0.5);

    writer.write_series(
        &run.series,
        "series.csv",
        "shear minimum and Lipschitz maxima",
    )?;
    writer.write_series(
        &run.shear_series,
        "wall_shear.csv",
        "wall shear per station",
    )?;
    if let Some((t, x)) = run.separation {
        let mut sep = DiagnosticSeries::new("separation", &["t", "x"]);
        sep.push_row(vec![t, x]);
        writer.write_series(&sep, "separation.csv", "first transport breakdown event")?;
    }
    let _ = run.initial_shear;
    writer.finish(cfg, asserts.into_vec(), 0.0)
}
