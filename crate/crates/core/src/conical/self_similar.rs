use super::gas::{bernoulli_density, Freestream, GasModel};
use super::shock::rh_downstream;
use super::ConicalError;

/// Conical background flow: fields depend on the similarity variable
/// `s = r/z` alone, on `s` in `[body_slope, shock_slope]`.
///
/// With the potential written as `q0 z + z g(s)`, the radial and axial
/// velocities are `u = g'(s)` and `w = q0 + g - s g'`, and the interior
/// equation reduces to the similarity ODE
///
/// ```text
/// g'' [ (u - s w)^2 - c^2 (1 + s^2) ] = c^2 u / s,   w' = -s g''.
/// ```
///
/// The shock slope is found by shooting: start from the jump state at a
/// candidate slope, integrate inward, and bisect until the body tangency
/// condition `u = b0 w` holds at `s = b0`.
#[derive(Debug, Clone)]
pub struct SelfSimilarSolution {
    pub gas: GasModel,
    pub fs: Freestream,
    /// Tangent-cone slope `b0` of the body.
    pub body_slope: f64,
    /// `tan(sigma)` of the attached shock.
    pub shock_slope: f64,
    s: Vec<f64>,
    u: Vec<f64>,
    w: Vec<f64>,
    rho: Vec<f64>,
}

const DEFAULT_GRID: usize = 1024;
const SCAN_POINTS: usize = 192;

impl SelfSimilarSolution {
    pub fn shock_angle(&self) -> f64 {
        self.shock_slope.atan()
    }

    pub fn grid(&self) -> &[f64] {
        &self.s
    }

    pub fn u_profile(&self) -> &[f64] {
        &self.u
    }

    pub fn w_profile(&self) -> &[f64] {
        &self.w
    }

    pub fn rho_profile(&self) -> &[f64] {
        &self.rho
    }

    /// Radial velocity `u = d(phi)/dr` at similarity coordinate `s`
    /// (clamped to the profile range, linear interpolation).
    pub fn eval_u(&self, s: f64) -> f64 {
        interp(&self.s, &self.u, s)
    }

    /// Axial velocity `w = q0 + d(phi)/dz` at `s`.
    pub fn eval_w(&self, s: f64) -> f64 {
        interp(&self.s, &self.w, s)
    }

    /// Background profiles sampled on a normalized grid `xi` in `[0, 1]`
    /// mapped affinely onto `[body_slope, shock_slope]`.
    pub fn profiles_at_xi(&self, xi: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let span = self.shock_slope - self.body_slope;
        let u = xi
            .iter()
            .map(|&x| self.eval_u(self.body_slope + x * span))
            .collect();
        let w = xi
            .iter()
            .map(|&x| self.eval_w(self.body_slope + x * span))
            .collect();
        (u, w)
    }

    /// Max interior residual of the similarity ODE with the stored profiles
    /// and centered differences; second-order small under grid refinement.
    pub fn residual_max(&self) -> f64 {
        let mut worst = 0.0f64;
        for j in 1..self.s.len() - 1 {
            let ds = self.s[j + 1] - self.s[j - 1];
            let du_ds = (self.u[j + 1] - self.u[j - 1]) / ds;
            let s = self.s[j];
            let (u, w) = (self.u[j], self.w[j]);
            let c2 = self
                .gas
                .sound_speed(self.rho[j])
                .expect("positive density")
                .powi(2);
            let rel = u - s * w;
            let coeff = rel * rel - c2 * (1.0 + s * s);
            let res = coeff * du_ds - c2 * u / s;
            worst = worst.max(res.abs());
        }
        worst
    }
}

fn interp(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let n = xs.len();
    if x <= xs[0] {
        return ys[0];
    }
    if x >= xs[n - 1] {
        return ys[n - 1];
    }
    let mut lo = 0;
    let mut hi = n - 1;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if xs[mid] <= x {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    ys[lo] + t * (ys[hi] - ys[lo])
}

/// Where a shooting candidate left the admissible region.
#[derive(Debug, Clone, Copy, PartialEq)]
enum ShootFail {
    /// Invalid right at the front (the candidate grazes the Mach cone of its
    /// own downstream state); lies below the weak-branch root.
    AtStart,
    /// Vacuum or the characteristic limit surface reached while integrating
    /// inward; lies above the weak-branch root.
    Inside,
}

/// Integrates the similarity ODE inward from the shock.
fn integrate_inward(
    fs: &Freestream,
    gas: &GasModel,
    shock_slope: f64,
    b0: f64,
    n: usize,
    mut record: Option<&mut Vec<(f64, f64, f64)>>,
) -> Result<(f64, f64), ShootFail> {
    let jump = rh_downstream(fs, gas, shock_slope).map_err(|_| ShootFail::AtStart)?;
    if jump.density == fs.rho0 {
        // Zero-strength front: the flow is exactly uniform all the way to
        // the body. The generic path cannot start here (the front coincides
        // with the Mach cone of the downstream state).
        if let Some(rec) = record.as_deref_mut() {
            for k in 0..n {
                let s = shock_slope + (b0 - shock_slope) * k as f64 / (n - 1) as f64;
                rec.push((s, 0.0, fs.q0));
            }
        }
        return Ok((0.0, fs.q0));
    }
    let (mut u, mut w) = {
        let (vr, vz) = jump.velocity_rz(shock_slope);
        (vr, vz)
    };
    let ds = (shock_slope - b0) / (n - 1) as f64;

    let deriv = |s: f64, u: f64, w: f64| -> Option<(f64, f64)> {
        let rho = bernoulli_density(u * u + w * w, fs, gas).ok()?;
        let c2 = gas.pressure_coeff * gas.gamma * rho.powf(gas.gamma - 1.0);
        let rel = u - s * w;
        let coeff = rel * rel - c2 * (1.0 + s * s);
        // The conical problem is well posed only while the ray-normal
        // component stays subsonic; treat the limit surface as failure.
        if coeff >= -1e-10 * c2 {
            return None;
        }
        let du = c2 * u / (s * coeff);
        Some((du, -s * du))
    };

    if deriv(shock_slope, u, w).is_none() {
        return Err(ShootFail::AtStart);
    }

    let mut s = shock_slope;
    if let Some(rec) = record.as_deref_mut() {
        rec.push((s, u, w));
    }
    for _ in 0..n - 1 {
        // RK4 with step -ds.
        let h = -ds;
        let step = (|| {
            let (k1u, k1w) = deriv(s, u, w)?;
            let (k2u, k2w) = deriv(s + 0.5 * h, u + 0.5 * h * k1u, w + 0.5 * h * k1w)?;
            let (k3u, k3w) = deriv(s + 0.5 * h, u + 0.5 * h * k2u, w + 0.5 * h * k2w)?;
            let (k4u, k4w) = deriv(s + h, u + h * k3u, w + h * k3w)?;
            Some((
                h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u),
                h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w),
            ))
        })();
        let (du, dw) = step.ok_or(ShootFail::Inside)?;
        u += du;
        w += dw;
        s += h;
        if !(u.is_finite() && w.is_finite()) {
            return Err(ShootFail::Inside);
        }
        if let Some(rec) = record.as_deref_mut() {
            rec.push((s, u, w));
        }
    }
    Ok((u, w))
}

/// Body tangency defect `u - b0 w` at `s = b0` for a candidate shock slope.
fn tangency_defect(
    fs: &Freestream,
    gas: &GasModel,
    shock_slope: f64,
    b0: f64,
    n: usize,
) -> Result<f64, ShootFail> {
    integrate_inward(fs, gas, shock_slope, b0, n, None).map(|(u, w)| u - b0 * w)
}

pub fn solve_self_similar(
    fs: &Freestream,
    gas: &GasModel,
    b0: f64,
    tol: f64,
) -> Result<SelfSimilarSolution, ConicalError> {
    solve_self_similar_with(fs, gas, b0, tol, DEFAULT_GRID)
}

/// As [`solve_self_similar`] with an explicit profile resolution.
pub fn solve_self_similar_with(
    fs: &Freestream,
    gas: &GasModel,
    b0: f64,
    tol: f64,
    n_grid: usize,
) -> Result<SelfSimilarSolution, ConicalError> {
    assert!(b0 > 0.0, "body slope must be positive");
    assert!(tol > 0.0, "tolerance must be positive");
    assert!(n_grid >= 8, "profile grid too coarse");
    let mach = fs.mach(gas);
    if mach <= 1.0 {
        return Err(ConicalError::NotSupersonic);
    }

    let mach_angle = (1.0 / mach).asin();
    let sigma_lo = mach_angle * (1.0 + 1e-9) + 1e-12;
    let sigma_hi = 1.45f64.min(std::f64::consts::FRAC_PI_2 - 0.02);
    let defect = |sigma: f64| tangency_defect(fs, gas, sigma.tan(), b0, n_grid);

    // Scan for a sign change of the tangency defect (weak branch). For
    // slender cones the valid window above the root can be narrower than the
    // scan pitch — the inward integration amplifies the front perturbation
    // toward the axis — so a valid-to-invalid transition is refined to the
    // validity edge before being judged.
    let mut bracket = None;
    let mut prev: Option<(f64, f64)> = None;
    for k in 0..=SCAN_POINTS {
        let sigma = sigma_lo + (sigma_hi - sigma_lo) * k as f64 / SCAN_POINTS as f64;
        if sigma.tan() <= b0 * (1.0 + 1e-9) {
            continue;
        }
        match defect(sigma) {
            Ok(f) => {
                if let Some((ps, pf)) = prev {
                    if pf.signum() != f.signum() {
                        bracket = Some((ps, sigma));
                        break;
                    }
                }
                if f == 0.0 {
                    bracket = Some((sigma, sigma));
                    break;
                }
                prev = Some((sigma, f));
            }
            Err(_) => {
                if let Some((ps, pf)) = prev {
                    let (mut vlo, mut vhi) = (ps, sigma);
                    let mut edge = None;
                    for _ in 0..80 {
                        let mid = 0.5 * (vlo + vhi);
                        match defect(mid) {
                            Ok(fm) => {
                                edge = Some((mid, fm));
                                vlo = mid;
                            }
                            Err(_) => vhi = mid,
                        }
                    }
                    if let Some((es, ef)) = edge {
                        if ef.signum() != pf.signum() {
                            bracket = Some((ps, es));
                            break;
                        }
                    }
                }
                prev = None;
            }
        }
    }
    let (mut lo, mut hi) = bracket.ok_or(ConicalError::DetachedShock)?;

    // Inline bisection; failed candidates move toward the root from the side
    // their failure mode indicates.
    let mut flo = defect(lo)
        .map_err(|_| ConicalError::SolverFailure("bracket end failed to integrate".into()))?;
    for _ in 0..200 {
        if 0.5 * (hi - lo) <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        match defect(mid) {
            Ok(fm) if fm == 0.0 => {
                lo = mid;
                hi = mid;
                break;
            }
            Ok(fm) if fm.signum() == flo.signum() => {
                lo = mid;
                flo = fm;
            }
            Ok(_) => hi = mid,
            Err(ShootFail::AtStart) => lo = mid,
            Err(ShootFail::Inside) => hi = mid,
        }
    }
    let sigma = 0.5 * (lo + hi);

    // Final integration at the converged angle, recording the profiles; fall
    // back to a valid bracket end if the midpoint itself fails.
    let mut rec = Vec::with_capacity(n_grid);
    let sigma = if integrate_inward(fs, gas, sigma.tan(), b0, n_grid, Some(&mut rec)).is_ok() {
        sigma
    } else {
        let side = [lo, hi]
            .into_iter()
            .find(|&s| {
                rec.clear();
                integrate_inward(fs, gas, s.tan(), b0, n_grid, Some(&mut rec)).is_ok()
            })
            .ok_or_else(|| {
                ConicalError::SolverFailure("converged shock angle failed to integrate".into())
            })?;
        side
    };
    rec.reverse(); // ascending in s
    let s: Vec<f64> = rec.iter().map(|r| r.0).collect();
    let u: Vec<f64> = rec.iter().map(|r| r.1).collect();
    let w: Vec<f64> = rec.iter().map(|r| r.2).collect();
    let rho: Vec<f64> = u
        .iter()
        .zip(&w)
        .map(|(&u, &w)| bernoulli_density(u * u + w * w, fs, gas))
        .collect::<Result<_, _>>()?;

    // The march treats z as the time-like direction; the background must be
    // axially supersonic throughout.
    for (w, rho) in w.iter().zip(&rho) {
        let c = gas.sound_speed(*rho)?;
        if *w <= c {
            return Err(ConicalError::SolverFailure(
                "background flow is not axially supersonic".into(),
            ));
        }
    }

    Ok(SelfSimilarSolution {
        gas: *gas,
        fs: *fs,
        body_slope: b0,
        shock_slope: sigma.tan(),
        s,
        u,
        w,
        rho,
    })
}
