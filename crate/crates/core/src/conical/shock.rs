use super::gas::{bernoulli_density, Freestream, GasModel};
use super::ConicalError;
use crate::numerics::{bisect_root, NumericsError};

/// Post-shock state in shock-aligned coordinates.
#[derive(Debug, Clone, Copy)]
pub struct DownstreamState {
    /// Velocity component normal to the front (positive, directed downstream).
    pub normal_speed: f64,
    /// Tangential component; continuous across the front.
    pub tangential_speed: f64,
    pub density: f64,
}

impl DownstreamState {
    /// Downstream velocity in `(r, z)` components for a front of slope
    /// `tan(sigma)` through the origin, upstream flow along `+z`.
    pub fn velocity_rz(&self, shock_slope: f64) -> (f64, f64) {
        let (sin_s, cos_s) = sincos_from_slope(shock_slope);
        let vr = self.tangential_speed * sin_s - self.normal_speed * cos_s;
        let vz = self.tangential_speed * cos_s + self.normal_speed * sin_s;
        (vr, vz)
    }
}

pub(super) fn sincos_from_slope(slope: f64) -> (f64, f64) {
    let hyp = (1.0 + slope * slope).sqrt();
    (slope / hyp, 1.0 / hyp)
}

/// Jump across a straight shock front of slope `tan(sigma)` for the potential
/// model: the tangential velocity is continuous and the normal mass flux is
/// conserved with density tied to speed by the Bernoulli law. The compressive
/// (subsonic-normal) root is selected, so genuine shocks return
/// `density > rho0`.
pub fn rh_downstream(
    fs: &Freestream,
    gas: &GasModel,
    shock_slope: f64,
) -> Result<DownstreamState, ConicalError> {
    assert!(shock_slope > 0.0, "shock slope must be positive");
    let (sin_s, cos_s) = sincos_from_slope(shock_slope);
    let u_n0 = fs.q0 * sin_s;
    let u_t = fs.q0 * cos_s;
    let c0 = fs.sound_speed(gas);
    let normal_mach = u_n0 / c0;

    if normal_mach < 1.0 - 1e-12 {
        return Err(ConicalError::NoShockSolution);
    }
    if (normal_mach - 1.0).abs() <= 1e-9 {
        // Sonic normal component: zero-strength front.
        return Ok(DownstreamState {
            normal_speed: u_n0,
            tangential_speed: u_t,
            density: fs.rho0,
        });
    }

    // Mass flux m(u) = H(u^2 + u_t^2) u peaks where the normal speed equals
    // the local sound speed; the compressive root lies on the rising branch.
    let head = fs.bernoulli_constant(gas);
    let u_sonic_sq = (gas.gamma - 1.0) * (2.0 * head - u_t * u_t) / (gas.gamma + 1.0);
    let u_sonic = u_sonic_sq.sqrt();
    let m0 = fs.rho0 * u_n0;
    let flux = |u: f64| -> f64 {
        match bernoulli_density(u * u + u_t * u_t, fs, gas) {
            Ok(rho) => rho * u - m0,
            Err(_) => f64::NAN,
        }
    };

    if flux(u_sonic) < 0.0 {
        // Round-off just below sonic; treat as zero-strength.
        return Ok(DownstreamState {
            normal_speed: u_n0,
            tangential_speed: u_t,
            density: fs.rho0,
        });
    }
    let lo = 1e-6 * u_n0;
    let u_n = bisect_root(flux, lo, u_sonic, 1e-14 * u_sonic.max(1.0)).map_err(|e| match e {
        NumericsError::NoBracket => {
            ConicalError::SolverFailure("mass-flux equation lost its bracket".into())
        }
        other => ConicalError::Numerics(other),
    })?;
    let density = bernoulli_density(u_n * u_n + u_t * u_t, fs, gas)?;
    Ok(DownstreamState {
        normal_speed: u_n,
        tangential_speed: u_t,
        density,
    })
}
