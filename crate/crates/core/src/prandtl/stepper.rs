use super::config::BLConfig;
use super::state::{reconstruct_v, BLState};
use super::PrandtlError;
use crate::numerics::{solve_tridiagonal, TridiagonalSystem};

/// Inviscid half step: first-order upwind transport of `u` by `(u, v)` with
/// the pressure-gradient source. Requires `u > 0` in the interior so the
/// streamwise upwind direction is well defined; the inflow column and the
/// no-slip/far-field rows are reimposed at the new time.
pub fn transport_substep(
    state: &BLState,
    cfg: &BLConfig,
    dt: f64,
) -> Result<BLState, PrandtlError> {
    let (nx, ny) = (cfg.nx, cfg.ny);
    let (dx, dy) = (cfg.dx(), cfg.dy());
    let t_new = state.t + dt;

    let cfl = dt * (state.u.max_abs() / dx + state.v.max_abs() / dy);
    if cfl > 1.0 + 1e-12 {
        return Err(PrandtlError::StepTooLarge { cfl });
    }

    let mut u_new = state.u.clone();
    for i in 1..nx {
        for j in 1..ny - 1 {
            let u_c = state.u.at(i, j);
            if u_c <= 0.0 {
                return Err(PrandtlError::UpwindBreakdown {
                    x: cfg.x(i),
                    y: cfg.y(j),
                });
            }
            let dudx = (u_c - state.u.at(i - 1, j)) / dx;
            let v_c = state.v.at(i, j);
            let dudy = if v_c >= 0.0 {
                (u_c - state.u.at(i, j - 1)) / dy
            } else {
                (state.u.at(i, j + 1) - u_c) / dy
            };
            let next = u_c - dt * (u_c * dudx + v_c * dudy + state.px[i]);
            if next <= 0.0 {
                return Err(PrandtlError::UpwindBreakdown {
                    x: cfg.x(i),
                    y: cfg.y(j),
                });
            }
            u_new.set(i, j, next);
        }
    }
    for j in 1..ny - 1 {
        u_new.set(0, j, cfg.u1(cfg.y(j), t_new));
    }
    for i in 0..nx {
        u_new.set(i, 0, 0.0);
        u_new.set(i, ny - 1, cfg.trace.value(cfg.x(i), t_new));
    }

    Ok(BLState {
        t: state.t,
        u: u_new,
        v: state.v.clone(),
        px: state.px.clone(),
    })
}

/// Viscous half step: backward-Euler solve of `u_t = nu u_yy` per column,
/// holding the no-slip and far-field rows fixed.
pub fn diffusion_substep(
    state: &BLState,
    cfg: &BLConfig,
    dt: f64,
) -> Result<BLState, PrandtlError> {
    assert!(dt > 0.0);
    if cfg.nu == 0.0 {
        return Ok(state.clone());
    }
    let (nx, ny) = (cfg.nx, cfg.ny);
    let dy = cfg.dy();
    let a = cfg.nu * dt / (dy * dy);
    let m = ny - 2;

    let mut u_new = state.u.clone();
    for i in 0..nx {
        let mut rhs: Vec<f64> = (1..ny - 1).map(|j| state.u.at(i, j)).collect();
        rhs[0] += a * state.u.at(i, 0);
        rhs[m - 1] += a * state.u.at(i, ny - 1);
        let sys = TridiagonalSystem::new(
            vec![-a; m - 1],
            vec![1.0 + 2.0 * a; m],
            vec![-a; m - 1],
            rhs,
        )?;
        let col = solve_tridiagonal(&sys)?;
        for (j, value) in col.into_iter().enumerate() {
            u_new.set(i, j + 1, value);
        }
    }

    Ok(BLState {
        t: state.t,
        u: u_new,
        v: state.v.clone(),
        px: state.px.clone(),
    })
}

/// One full Lie-split step: transport, then diffusion, then reconstruction of
/// the wall-normal velocity and the pressure-gradient row at the new time.
pub fn advance(state: &BLState, cfg: &BLConfig, dt: f64) -> Result<BLState, PrandtlError> {
    let t_new = state.t + dt;
    let transported = transport_substep(state, cfg, dt)?;
    let diffused = diffusion_substep(&transported, cfg, dt)?;
    let v = reconstruct_v(&diffused.u, cfg, t_new);
    let px = (0..cfg.nx)
        .map(|i| cfg.trace.pressure_gradient(cfg.x(i), t_new))
        .collect();
    Ok(BLState {
        t: t_new,
        u: diffused.u,
        v,
        px,
    })
}
