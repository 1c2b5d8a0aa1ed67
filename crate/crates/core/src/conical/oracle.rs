//! Cross-check solver for the conical background in spherical-polar form.
//!
//! Works with the velocity components along and normal to rays through the
//! tip (functions of the polar angle only), integrates the classical conical
//! ODE in the polar angle, and carries its own jump and Bernoulli algebra —
//! an independent route to the shock angle used to validate
//! [`super::solve_self_similar`].

use super::gas::{Freestream, GasModel};
use super::ConicalError;

const OMEGA_STEPS: usize = 1024;
const SCAN_POINTS: usize = 192;

/// Density from the Bernoulli head, written out locally so this path shares
/// no code with the primary solver's inversion.
fn density_from_speed_sq(fs: &Freestream, gas: &GasModel, speed_sq: f64) -> Option<f64> {
    let g = gas.gamma;
    let h0 = gas.pressure_coeff * g / (g - 1.0) * fs.rho0.powf(g - 1.0);
    let head = 0.5 * fs.q0 * fs.q0 + h0 - 0.5 * speed_sq;
    if head <= 0.0 {
        return None;
    }
    Some(((g - 1.0) * head / (gas.pressure_coeff * g)).powf(1.0 / (g - 1.0)))
}

/// Normal jump by direct scan of the mass-flux equation; returns the
/// downstream normal speed for a front at angle `sigma`.
fn jump_normal_speed(fs: &Freestream, gas: &GasModel, sigma: f64) -> Option<f64> {
    let u_n0 = fs.q0 * sigma.sin();
    let u_t = fs.q0 * sigma.cos();
    let c0_sq = gas.pressure_coeff * gas.gamma * fs.rho0.powf(gas.gamma - 1.0);
    if u_n0 * u_n0 < c0_sq {
        return None;
    }
    if (u_n0 * u_n0 / c0_sq - 1.0).abs() < 1e-9 {
        return Some(u_n0);
    }
    let m0 = fs.rho0 * u_n0;
    let f = |u: f64| -> Option<f64> {
        density_from_speed_sq(fs, gas, u * u + u_t * u_t).map(|rho| rho * u - m0)
    };
    // Dense scan below the upstream normal speed, then refine.
    let n = 4000;
    let mut lo = None;
    for k in 1..n {
        let a = u_n0 * k as f64 / n as f64;
        let b = u_n0 * (k + 1) as f64 / n as f64;
        if b >= u_n0 * (1.0 - 1e-9) {
            break;
        }
        let (fa, fb) = (f(a)?, f(b)?);
        if fa * fb <= 0.0 {
            lo = Some((a, b));
            break;
        }
    }
    let (mut a, mut b) = lo?;
    for _ in 0..100 {
        let mid = 0.5 * (a + b);
        if f(a)? * f(mid)? <= 0.0 {
            b = mid;
        } else {
            a = mid;
        }
    }
    Some(0.5 * (a + b))
}

/// Polar-angle sweep from the shock to the cone; returns the ray-normal
/// velocity component at the cone surface (zero at an attached solution).
fn surface_normal_velocity(
    fs: &Freestream,
    gas: &GasModel,
    sigma: f64,
    cone_half_angle: f64,
) -> Option<f64> {
    let u_n = jump_normal_speed(fs, gas, sigma)?;
    let u_t = fs.q0 * sigma.cos();
    if u_n == fs.q0 * sigma.sin() {
        // Zero-strength front: uniform flow down to the cone surface.
        return Some(-fs.q0 * cone_half_angle.sin());
    }
    // Along-ray and polar components at the shock.
    let mut v_r = u_t;
    let mut v_o = -u_n;

    let h = -(sigma - cone_half_angle) / OMEGA_STEPS as f64;
    let deriv = |omega: f64, v_r: f64, v_o: f64| -> Option<(f64, f64)> {
        let c_sq = {
            let rho = density_from_speed_sq(fs, gas, v_r * v_r + v_o * v_o)?;
            gas.pressure_coeff * gas.gamma * rho.powf(gas.gamma - 1.0)
        };
        let denom = 1.0 - v_o * v_o / c_sq;
        if denom <= 1e-10 {
            return None;
        }
        let dv_o = (v_r * v_o * v_o / c_sq - 2.0 * v_r - v_o / omega.tan()) / denom;
        Some((v_o, dv_o))
    };

    let mut omega = sigma;
    for _ in 0..OMEGA_STEPS {
        let (k1r, k1o) = deriv(omega, v_r, v_o)?;
        let (k2r, k2o) = deriv(omega + 0.5 * h, v_r + 0.5 * h * k1r, v_o + 0.5 * h * k1o)?;
        let (k3r, k3o) = deriv(omega + 0.5 * h, v_r + 0.5 * h * k2r, v_o + 0.5 * h * k2o)?;
        let (k4r, k4o) = deriv(omega + h, v_r + h * k3r, v_o + h * k3o)?;
        v_r += h / 6.0 * (k1r + 2.0 * k2r + 2.0 * k3r + k4r);
        v_o += h / 6.0 * (k1o + 2.0 * k2o + 2.0 * k3o + k4o);
        omega += h;
        if !(v_r.is_finite() && v_o.is_finite()) {
            return None;
        }
    }
    Some(v_o)
}

/// Shock angle (radians) for supersonic flow past a circular cone of the
/// given half-angle, via the spherical-polar formulation.
pub fn conical_shock_angle_spherical(
    fs: &Freestream,
    gas: &GasModel,
    cone_half_angle: f64,
    tol: f64,
) -> Result<f64, ConicalError> {
    assert!(cone_half_angle > 0.0 && cone_half_angle < std::f64::consts::FRAC_PI_2);
    assert!(tol > 0.0);
    let mach = fs.mach(gas);
    if mach <= 1.0 {
        return Err(ConicalError::NotSupersonic);
    }
    let mach_angle = (1.0 / mach).asin();
    let lo = mach_angle * (1.0 + 1e-9) + 1e-12;
    let hi = 1.45f64.min(std::f64::consts::FRAC_PI_2 - 0.02);

    let mut bracket = None;
    let mut prev: Option<(f64, f64)> = None;
    for k in 0..=SCAN_POINTS {
        let sigma = lo + (hi - lo) * k as f64 / SCAN_POINTS as f64;
        if sigma <= cone_half_angle {
            continue;
        }
        match surface_normal_velocity(fs, gas, sigma, cone_half_angle) {
            Some(g) => {
                if let Some((ps, pg)) = prev {
                    if pg.signum() != g.signum() {
                        bracket = Some((ps, sigma));
                        break;
                    }
                }
                prev = Some((sigma, g));
            }
            None => prev = None,
        }
    }
    let (mut a, mut b) = bracket.ok_or(ConicalError::DetachedShock)?;
    let eval = |sig: f64| surface_normal_velocity(fs, gas, sig, cone_half_angle);
    let mut ga = eval(a).ok_or(ConicalError::DetachedShock)?;
    for _ in 0..200 {
        if 0.5 * (b - a) <= tol {
            break;
        }
        let mid = 0.5 * (a + b);
        let gm = match eval(mid) {
            Some(g) => g,
            None => {
                return Err(ConicalError::SolverFailure(
                    "oracle integration failed inside the bracket".into(),
                ))
            }
        };
        if ga.signum() == gm.signum() {
            a = mid;
            ga = gm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}
