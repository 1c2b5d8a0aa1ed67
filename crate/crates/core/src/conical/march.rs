//! Shock-fitted space marching for the perturbed-cone free-boundary problem.
//!
//! The interior first-order system in `(d(phi)/dr, d(phi)/dz)` is advanced in
//! `z` with a characteristic upwind (CIR) scheme on the normalized coordinate
//! `xi = (r - b(z)) / (S(z) - b(z))`. The body condition closes the lower
//! boundary; at the upper boundary the shock slope is solved each step so the
//! jump state matches the characteristic reaching the front from inside, and
//! the front is moved with the resulting slope.

use super::gas::bernoulli_density;
use super::geometry::ConeGeometry;
use super::self_similar::{solve_self_similar_with, SelfSimilarSolution};
use super::shock::rh_downstream;
use super::ConicalError;
use crate::series::DiagnosticSeries;

/// Fields of the marched solution at one axial station.
#[derive(Debug, Clone)]
pub struct MarchState {
    pub z: f64,
    /// Shock radius `S(z)`.
    pub shock_radius: f64,
    /// Shock slope `S'(z)` used for the next step.
    pub shock_slope: f64,
    pub xi: Vec<f64>,
    /// Radial velocity perturbation `d(phi)/dr` on the `xi` grid.
    pub dphi_dr: Vec<f64>,
    /// Axial velocity perturbation `d(phi)/dz` on the `xi` grid.
    pub dphi_dz: Vec<f64>,
    /// Potential perturbation, reconstructed with `phi = 0` on the shock.
    pub phi: Vec<f64>,
}

impl MarchState {
    /// Samples the background onto the normalized grid at station `z`.
    pub fn from_background(
        bg: &SelfSimilarSolution,
        geom: &ConeGeometry,
        z: f64,
        n: usize,
    ) -> Self {
        assert!(n >= 8, "marching grid too coarse");
        let shock_radius = z * bg.shock_slope;
        let b = geom.b(z);
        let span = shock_radius - b;
        let xi: Vec<f64> = (0..n).map(|j| j as f64 / (n - 1) as f64).collect();
        let mut dphi_dr = Vec::with_capacity(n);
        let mut dphi_dz = Vec::with_capacity(n);
        for &x in &xi {
            let s = (b + x * span) / z;
            dphi_dr.push(bg.eval_u(s));
            dphi_dz.push(bg.eval_w(s) - bg.fs.q0);
        }
        let mut state = Self {
            z,
            shock_radius,
            shock_slope: bg.shock_slope,
            xi,
            dphi_dr,
            dphi_dz,
            phi: vec![0.0; n],
        };
        state.reconstruct_phi(geom);
        state
    }

    pub fn n(&self) -> usize {
        self.xi.len()
    }

    fn dxi(&self) -> f64 {
        1.0 / (self.n() - 1) as f64
    }

    fn span(&self, geom: &ConeGeometry) -> f64 {
        self.shock_radius - geom.b(self.z)
    }

    fn reconstruct_phi(&mut self, geom: &ConeGeometry) {
        let n = self.n();
        let dr = self.dxi() * self.span(geom);
        self.phi[n - 1] = 0.0;
        for j in (0..n - 1).rev() {
            self.phi[j] = self.phi[j + 1] - 0.5 * (self.dphi_dr[j] + self.dphi_dr[j + 1]) * dr;
        }
    }

    /// Discrete mass-flux jump residual at the shock node.
    pub fn rh_flux_residual(&self, bg: &SelfSimilarSolution) -> f64 {
        let n = self.n();
        let p = self.dphi_dr[n - 1];
        let w = bg.fs.q0 + self.dphi_dz[n - 1];
        let rho = match bernoulli_density(p * p + w * w, &bg.fs, &bg.gas) {
            Ok(r) => r,
            Err(_) => return f64::INFINITY,
        };
        (rho * p - self.shock_slope * (rho * w - bg.fs.rho0 * bg.fs.q0)).abs()
    }

    /// Discrete normal mass flux through the body surface.
    pub fn body_flux_residual(&self, bg: &SelfSimilarSolution, geom: &ConeGeometry) -> f64 {
        let bp = geom.b_prime(self.z);
        (self.dphi_dr[0] - bp * (bg.fs.q0 + self.dphi_dz[0])).abs()
    }
}

/// Sup-norm distance of the marched fields from the self-similar background
/// (interpolated to the same normalized grid) plus the shock-slope deviation.
pub fn deviation_norm(state: &MarchState, bg: &SelfSimilarSolution) -> f64 {
    let (u_bg, w_bg) = bg.profiles_at_xi(&state.xi);
    let mut worst = 0.0f64;
    for j in 0..state.n() {
        let dp = (state.dphi_dr[j] - u_bg[j]).abs();
        let dq = (state.dphi_dz[j] - (w_bg[j] - bg.fs.q0)).abs();
        worst = worst.max(dp + dq);
    }
    worst + (state.shock_radius / state.z - bg.shock_slope).abs()
}

struct NodeCoeffs {
    /// Characteristic slopes dr/dz, fast and slow family.
    lam_plus: f64,
    lam_minus: f64,
    /// Rows `l A` of the characteristic projections.
    row_plus: [f64; 2],
    row_minus: [f64; 2],
    /// Projected source `l . S = c^2 p / r`.
    source: f64,
}

fn node_coeffs(
    p: f64,
    q: f64,
    r: f64,
    bg: &SelfSimilarSolution,
    z: f64,
) -> Result<NodeCoeffs, ConicalError> {
    let w = bg.fs.q0 + q;
    let rho = bernoulli_density(p * p + w * w, &bg.fs, &bg.gas)?;
    let c2 = bg.gas.pressure_coeff * bg.gas.gamma * rho.powf(bg.gas.gamma - 1.0);
    let axial = w * w - c2;
    if axial <= 0.0 || w <= 0.0 {
        return Err(ConicalError::HyperbolicityLost { z });
    }
    let disc = (p * p + w * w - c2).sqrt() * c2.sqrt();
    let lam_plus = (p * w + disc) / axial;
    let lam_minus = (p * w - disc) / axial;
    let row = |lam: f64| [2.0 * p * w - lam * axial, axial];
    Ok(NodeCoeffs {
        lam_plus,
        lam_minus,
        row_plus: row(lam_plus),
        row_minus: row(lam_minus),
        source: c2 * p / r,
    })
}

fn solve2(m0: [f64; 2], m1: [f64; 2], rhs: [f64; 2]) -> Option<[f64; 2]> {
    let det = m0[0] * m1[1] - m0[1] * m1[0];
    if det == 0.0 || !det.is_finite() {
        return None;
    }
    Some([
        (rhs[0] * m1[1] - m0[1] * rhs[1]) / det,
        (m0[0] * rhs[1] - rhs[0] * m1[0]) / det,
    ])
}

/// Largest grid-relative characteristic speed `|lambda - grid| / span`, used
/// for the CFL bound `dz <= safety * dxi / speed`.
pub fn max_characteristic_speed(
    state: &MarchState,
    bg: &SelfSimilarSolution,
    geom: &ConeGeometry,
) -> Result<f64, ConicalError> {
    let span = state.span(geom);
    let bp = geom.b_prime(state.z);
    let b = geom.b(state.z);
    let mut worst = 0.0f64;
    for j in 0..state.n() {
        let r = b + state.xi[j] * span;
        let co = node_coeffs(state.dphi_dr[j], state.dphi_dz[j], r, bg, state.z)?;
        let grid = bp + state.xi[j] * (state.shock_slope - bp);
        worst = worst
            .max((co.lam_plus - grid).abs() / span)
            .max((co.lam_minus - grid).abs() / span);
    }
    Ok(worst)
}

/// One marching step `z -> z + dz`.
pub fn march_step(
    state: &MarchState,
    bg: &SelfSimilarSolution,
    geom: &ConeGeometry,
    dz: f64,
) -> Result<MarchState, ConicalError> {
    assert!(dz > 0.0, "march_step requires dz > 0");
    let n = state.n();
    let dxi = state.dxi();
    let z = state.z;
    let z_new = z + dz;
    let span = state.span(geom);
    if span <= 0.0 {
        return Err(ConicalError::GeometryCollapse { z });
    }
    let b = geom.b(z);
    let bp = geom.b_prime(z);

    // Pack fields as V = (p, q) per node and precompute coefficients.
    let coeffs: Vec<NodeCoeffs> = (0..n)
        .map(|j| {
            let r = b + state.xi[j] * span;
            node_coeffs(state.dphi_dr[j], state.dphi_dz[j], r, bg, z)
        })
        .collect::<Result<_, _>>()?;
    let grid_speed = |j: usize| bp + state.xi[j] * (state.shock_slope - bp);

    let mut worst_speed = 0.0f64;
    for j in 0..n {
        let g = grid_speed(j);
        worst_speed = worst_speed
            .max((coeffs[j].lam_plus - g).abs() / span)
            .max((coeffs[j].lam_minus - g).abs() / span);
    }
    if dz * worst_speed > dxi * (1.0 + 1e-9) {
        return Err(ConicalError::StepTooLarge);
    }

    let v = |j: usize| [state.dphi_dr[j], state.dphi_dz[j]];
    let diff = |hi: usize, lo: usize| {
        let (a, b) = (v(hi), v(lo));
        [(a[0] - b[0]) / dxi, (a[1] - b[1]) / dxi]
    };
    let dot = |row: [f64; 2], vec: [f64; 2]| row[0] * vec[0] + row[1] * vec[1];

    // Characteristic update rhs for one family at node j.
    let char_rhs = |j: usize, row: [f64; 2], lam: f64, upwind: [f64; 2], source: f64| {
        let lam_rel = (lam - grid_speed(j)) / span;
        dot(row, v(j)) - dz * lam_rel * dot(row, upwind) + dz * source
    };

    let mut p_new = vec![0.0; n];
    let mut q_new = vec![0.0; n];

    // Interior nodes: both families, upwinded by the sign of the
    // grid-relative slope.
    for j in 1..n - 1 {
        let co = &coeffs[j];
        let up = |lam: f64| {
            if lam - grid_speed(j) >= 0.0 {
                diff(j, j - 1)
            } else {
                diff(j + 1, j)
            }
        };
        let rhs = [
            char_rhs(j, co.row_plus, co.lam_plus, up(co.lam_plus), co.source),
            char_rhs(j, co.row_minus, co.lam_minus, up(co.lam_minus), co.source),
        ];
        let sol =
            solve2(co.row_plus, co.row_minus, rhs).ok_or(ConicalError::HyperbolicityLost { z })?;
        p_new[j] = sol[0];
        q_new[j] = sol[1];
    }

    // Body node: the slow family reaches the wall from above; combine its
    // characteristic relation with the tangency condition at z + dz.
    {
        let co = &coeffs[0];
        let rhs_char = char_rhs(0, co.row_minus, co.lam_minus, diff(1, 0), co.source);
        let bp_new = geom.b_prime(z_new);
        let sol = solve2(co.row_minus, [1.0, -bp_new], [rhs_char, bg.fs.q0 * bp_new])
            .ok_or(ConicalError::HyperbolicityLost { z })?;
        p_new[0] = sol[0];
        q_new[0] = sol[1];
    }

    // Shock node: the fast family arrives from inside; pick the new slope so
    // the jump state matches its characteristic relation, then move the
    // front with the trapezoidal slope average.
    let (shock_slope_new, shock_state) = {
        let co = &coeffs[n - 1];
        let rhs_char = char_rhs(
            n - 1,
            co.row_plus,
            co.lam_plus,
            diff(n - 1, n - 2),
            co.source,
        );
        let jump_fields = |slope: f64| -> Option<[f64; 2]> {
            let jump = rh_downstream(&bg.fs, &bg.gas, slope).ok()?;
            let (vr, vz) = jump.velocity_rz(slope);
            Some([vr, vz - bg.fs.q0])
        };
        let mismatch = |slope: f64| -> Option<f64> {
            jump_fields(slope).map(|f| dot(co.row_plus, f) - rhs_char)
        };

        let mach_floor = {
            let mach_angle = (1.0 / bg.fs.mach(&bg.gas)).asin();
            mach_angle.tan() * (1.0 + 1e-9)
        };
        let s0 = state.shock_slope;
        let mut width = 1e-3 * (1.0 + s0.abs());
        let mut bracket = None;
        for _ in 0..24 {
            let lo = (s0 - width).max(mach_floor);
            let hi = s0 + width;
            if let (Some(flo), Some(fhi)) = (mismatch(lo), mismatch(hi)) {
                if flo.signum() != fhi.signum() || flo == 0.0 || fhi == 0.0 {
                    bracket = Some((lo, hi, flo));
                    break;
                }
            }
            width *= 2.0;
        }
        let (mut lo, mut hi, mut flo) = bracket.ok_or_else(|| ConicalError::ShockJumpFailure {
            z,
            reason: "no bracket for the front-slope equation".into(),
        })?;
        for _ in 0..200 {
            if 0.5 * (hi - lo) <= 1e-14 * (1.0 + s0.abs()) {
                break;
            }
            let mid = 0.5 * (lo + hi);
            let fm = mismatch(mid).ok_or_else(|| ConicalError::ShockJumpFailure {
                z,
                reason: "front-slope equation left the admissible range".into(),
            })?;
            if fm == 0.0 {
                lo = mid;
                hi = mid;
                break;
            }
            if fm.signum() == flo.signum() {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        let slope = 0.5 * (lo + hi);
        let fields = jump_fields(slope).ok_or_else(|| ConicalError::ShockJumpFailure {
            z,
            reason: "jump state undefined at the converged slope".into(),
        })?;
        (slope, fields)
    };
    p_new[n - 1] = shock_state[0];
    q_new[n - 1] = shock_state[1];

    let shock_radius_new = state.shock_radius + 0.5 * dz * (state.shock_slope + shock_slope_new);
    if shock_radius_new <= geom.b(z_new) {
        return Err(ConicalError::GeometryCollapse { z: z_new });
    }

    let mut next = MarchState {
        z: z_new,
        shock_radius: shock_radius_new,
        shock_slope: shock_slope_new,
        xi: state.xi.clone(),
        dphi_dr: p_new,
        dphi_dz: q_new,
        phi: vec![0.0; n],
    };
    next.reconstruct_phi(geom);
    Ok(next)
}

#[derive(Debug, Clone, Copy)]
pub struct MarchParams {
    /// Nodes across the shock layer.
    pub n_xi: usize,
    /// Background profile resolution.
    pub n_background: usize,
    /// CFL safety factor for the adaptive marching step.
    pub cfl_safety: f64,
    /// Shock-angle bisection tolerance for the background solve.
    pub tol_sigma: f64,
    /// Start the march at `settle_factor * z_start` and let the state relax
    /// onto the discrete steady flow before diagnostics begin (the tip
    /// itself is excluded; the domain degenerates at z = 0).
    pub settle_factor: f64,
    /// Logarithmic sampling density of the deviation series.
    pub stations_per_decade: usize,
}

impl Default for MarchParams {
    fn default() -> Self {
        Self {
            n_xi: 64,
            n_background: 1024,
            cfl_safety: 0.8,
            tol_sigma: 1e-10,
            settle_factor: 0.5,
            stations_per_decade: 16,
        }
    }
}

#[derive(Debug)]
pub struct MarchFailure {
    pub z: f64,
    pub error: ConicalError,
}

/// Field profiles stored at a sampling station.
#[derive(Debug, Clone)]
pub struct StationProfile {
    pub z: f64,
    pub dphi_dr: Vec<f64>,
    pub dphi_dz: Vec<f64>,
    pub shock_radius: f64,
}

#[derive(Debug)]
pub struct MarchingRun {
    /// Columns: `z, deviation, s_over_z`.
    pub series: DiagnosticSeries,
    pub profiles: Vec<StationProfile>,
    /// Deviation from the background after the settle phase; the
    /// discretization-error scale of the run.
    pub init_error: f64,
    /// Log-log slope of the recorded deviation series.
    pub slope: Option<f64>,
    pub failure: Option<MarchFailure>,
    pub background: SelfSimilarSolution,
}

/// Marches the geometry from `z_start` to `z_end`, recording the deviation
/// from the self-similar background at logarithmically spaced stations.
pub fn run_marching(
    fs: &super::Freestream,
    gas: &super::GasModel,
    geom: &ConeGeometry,
    z_start: f64,
    z_end: f64,
    params: &MarchParams,
) -> Result<MarchingRun, ConicalError> {
    assert!(z_start > 0.0 && z_end > z_start);
    let bg = solve_self_similar_with(
        fs,
        gas,
        geom.body_slope,
        params.tol_sigma,
        params.n_background,
    )?;

    let z_pre = (params.settle_factor.clamp(0.05, 1.0)) * z_start;
    let mut state = MarchState::from_background(&bg, geom, z_pre, params.n_xi);

    // Station list: z_start * ratio^k up to and including z_end.
    let ratio = 10f64.powf(1.0 / params.stations_per_decade as f64);
    let mut stations = vec![z_start];
    while *stations.last().unwrap() < z_end {
        let next = (stations.last().unwrap() * ratio).min(z_end);
        stations.push(next);
    }

    let mut series = DiagnosticSeries::new("conical_march", &["z", "deviation", "s_over_z"]);
    let mut profiles = Vec::with_capacity(stations.len());
    let mut failure = None;
    let mut init_error = f64::NAN;

    let dxi = 1.0 / (params.n_xi - 1) as f64;
    let mut station_idx = 0;
    'march: while station_idx < stations.len() {
        let target = stations[station_idx];
        // Advance to the station, CFL-limited.
        while state.z < target * (1.0 - 1e-12) {
            let speed = match max_characteristic_speed(&state, &bg, geom) {
                Ok(s) => s,
                Err(e) => {
                    failure = Some(MarchFailure {
                        z: state.z,
                        error: e,
                    });
                    break 'march;
                }
            };
            let dz_cfl = params.cfl_safety * dxi / speed.max(1e-300);
            let dz = dz_cfl.min(target - state.z);
            match march_step(&state, &bg, geom, dz) {
                Ok(next) => state = next,
                Err(e) => {
                    failure = Some(MarchFailure {
                        z: state.z,
                        error: e,
                    });
                    break 'march;
                }
            }
        }
        let dev = deviation_norm(&state, &bg);
        if station_idx == 0 {
            init_error = dev;
        }
        series.push_row(vec![state.z, dev, state.shock_radius / state.z]);
        profiles.push(StationProfile {
            z: state.z,
            dphi_dr: state.dphi_dr.clone(),
            dphi_dz: state.dphi_dz.clone(),
            shock_radius: state.shock_radius,
        });
        station_idx += 1;
    }

    let samples: Vec<(f64, f64)> = series
        .rows
        .iter()
        .filter(|r| r[1] > 0.0)
        .map(|r| (r[0], r[1]))
        .collect();
    let slope = if samples.len() >= 2 {
        crate::numerics::fit_loglog_slope(&samples).ok()
    } else {
        None
    };

    Ok(MarchingRun {
        series,
        profiles,
        init_error,
        slope,
        failure,
        background: bg,
    })
}

#[derive(Debug)]
pub struct DecayStudy {
    /// Columns: `z, deviation, deviation_vs_background, s_over_z`.
    pub series: DiagnosticSeries,
    /// Slope of the perturbed-minus-baseline deviation over the fit window.
    pub slope: Option<f64>,
    pub perturbed: MarchingRun,
    pub baseline: MarchingRun,
}

/// Marches the perturbed geometry and an exact-cone twin on the same grid,
/// measuring the perturbation response as the distance between the two
/// discrete solutions (this cancels the scheme's own self-similar offset).
pub fn run_decay_study(
    fs: &super::Freestream,
    gas: &super::GasModel,
    geom: &ConeGeometry,
    z_start: f64,
    z_end: f64,
    fit_window: (f64, f64),
    params: &MarchParams,
) -> Result<DecayStudy, ConicalError> {
    let perturbed = run_marching(fs, gas, geom, z_start, z_end, params)?;
    let baseline = run_marching(
        fs,
        gas,
        &ConeGeometry::exact_cone(geom.body_slope),
        z_start,
        z_end,
        params,
    )?;

    let mut series = DiagnosticSeries::new(
        "conical_decay",
        &["z", "deviation", "deviation_vs_background", "s_over_z"],
    );
    let n_common = perturbed.profiles.len().min(baseline.profiles.len());
    for k in 0..n_common {
        let (p, b) = (&perturbed.profiles[k], &baseline.profiles[k]);
        debug_assert!((p.z - b.z).abs() < 1e-9 * p.z);
        let mut worst = 0.0f64;
        for j in 0..p.dphi_dr.len() {
            worst = worst
                .max((p.dphi_dr[j] - b.dphi_dr[j]).abs() + (p.dphi_dz[j] - b.dphi_dz[j]).abs());
        }
        let twin = worst + (p.shock_radius - b.shock_radius).abs() / p.z;
        let row_bg = perturbed.series.rows[k][1];
        series.push_row(vec![p.z, twin, row_bg, p.shock_radius / p.z]);
    }

    let samples: Vec<(f64, f64)> = series
        .rows
        .iter()
        .filter(|r| r[0] >= fit_window.0 && r[0] <= fit_window.1 && r[1] > 0.0)
        .map(|r| (r[0], r[1]))
        .collect();
    let slope = if samples.len() >= 2 {
        crate::numerics::fit_loglog_slope(&samples).ok()
    } else {
        None
    };

    Ok(DecayStudy {
        series,
        slope,
        perturbed,
        baseline,
    })
}
