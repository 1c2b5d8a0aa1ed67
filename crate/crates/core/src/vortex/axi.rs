use super::elliptic::complete_elliptic_pair;
use super::VortexError;
use crate::numerics::rk4_step;
use std::f64::consts::PI;

/// Coaxial circular vortex rings for the no-swirl axisymmetric flow; each
/// atom is a ring at meridional position `(r, z)` with `r > 0`.
#[derive(Debug, Clone)]
pub struct RingCloudAxi {
    /// `(r, z)` per ring.
    pub positions: Vec<[f64; 2]>,
    pub circulations: Vec<f64>,
    pub delta: f64,
}

impl RingCloudAxi {
    pub fn new(positions: Vec<[f64; 2]>, circulations: Vec<f64>, delta: f64) -> Self {
        assert_eq!(positions.len(), circulations.len());
        assert!(delta > 0.0 && delta.is_finite());
        assert!(
            positions.iter().all(|p| p[0] > 0.0),
            "rings must sit strictly off the axis"
        );
        Self {
            positions,
            circulations,
            delta,
        }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// Meridional velocity `(u_r, u_z)` of one ring of radius `a` and unit
/// circulation, evaluated at `(rho, z_rel)`; the smoothing width enters the
/// distance terms, which closes the elliptic parameter away from 1.
fn unit_ring_velocity(a: f64, rho: f64, z_rel: f64, delta: f64) -> [f64; 2] {
    let d2 = delta * delta;
    if rho <= 1e-12 * (a + z_rel.abs() + delta) {
        // On the axis the radial component vanishes by symmetry and the
        // axial one has a closed form.
        let uz = a * a / (2.0 * (a * a + z_rel * z_rel + d2).powf(1.5));
        return [0.0, uz];
    }
    let big_a = rho * rho + a * a + z_rel * z_rel + d2;
    let big_b = 2.0 * a * rho;
    let apb = big_a + big_b;
    let m = 2.0 * big_b / apb;
    let (k, e) = complete_elliptic_pair(m);
    // Angular integrals of 1/dist and cos/dist^3 over the ring.
    let i0 = 4.0 * k / apb.sqrt();
    let i1 = 4.0 * e / (apb.powf(1.5) * (1.0 - m));
    let i2 = (big_a * i1 - i0) / big_b;
    let scale = a / (4.0 * PI);
    [scale * z_rel * i2, scale * (a * i1 - rho * i2)]
}

/// Induced meridional velocity of the whole cloud at `(r, z)`, summed in
/// index order; on-axis targets get an exactly zero radial component.
pub fn ring_velocity(cloud: &RingCloudAxi, target: [f64; 2]) -> [f64; 2] {
    assert!(target[0] >= 0.0, "target radius must be nonnegative");
    let mut u = [0.0, 0.0];
    for (p, gamma) in cloud.positions.iter().zip(&cloud.circulations) {
        let v = unit_ring_velocity(p[0], target[0], target[1] - p[1], cloud.delta);
        u[0] += gamma * v[0];
        u[1] += gamma * v[1];
    }
    u
}

/// RK4 advection of the rings by the induced field; circulations are frozen
/// (ring vorticity is materially conserved). Errors if any ring reaches the
/// axis.
pub fn step_axisym(cloud: &RingCloudAxi, dt: f64) -> Result<RingCloudAxi, VortexError> {
    assert!(dt > 0.0);
    let n = cloud.len();
    let mut flat = Vec::with_capacity(2 * n);
    for p in &cloud.positions {
        flat.extend_from_slice(p);
    }
    let circulations = cloud.circulations.clone();
    let delta = cloud.delta;
    let deriv = move |_t: f64, y: &[f64]| -> Vec<f64> {
        let m = y.len() / 2;
        // A ring on or beyond the axis invalidates the whole stage.
        if (0..m).any(|i| !(y[2 * i] > 0.0)) {
            return vec![f64::NAN; y.len()];
        }
        let mut out = vec![0.0; y.len()];
        for i in 0..m {
            let (r, z) = (y[2 * i], y[2 * i + 1]);
            let mut u = [0.0, 0.0];
            for j in 0..m {
                let v = unit_ring_velocity(y[2 * j], r, z - y[2 * j + 1], delta);
                u[0] += circulations[j] * v[0];
                u[1] += circulations[j] * v[1];
            }
            out[2 * i] = u[0];
            out[2 * i + 1] = u[1];
        }
        out
    };
    let next = match rk4_step(deriv, &flat, 0.0, dt) {
        Ok(v) => v,
        Err(_) => {
            return Err(VortexError::AxisCollision {
                index: first_on_axis(&flat).unwrap_or(0),
            })
        }
    };
    if let Some(index) = first_on_axis(&next) {
        return Err(VortexError::AxisCollision { index });
    }
    let positions = next.chunks_exact(2).map(|c| [c[0], c[1]]).collect();
    Ok(RingCloudAxi {
        positions,
        circulations: cloud.circulations.clone(),
        delta: cloud.delta,
    })
}

fn first_on_axis(flat: &[f64]) -> Option<usize> {
    flat.chunks_exact(2)
        .position(|c| !(c[0] > 0.0) || !c[1].is_finite())
}

/// Conserved quantities of the no-swirl ring system: total circulation and
/// the axisymmetric impulse `pi sum G_i r_i^2`.
#[derive(Debug, Clone, Copy)]
pub struct AxiInvariantRecord {
    pub circulation: f64,
    pub impulse: f64,
}

pub fn axisym_invariants(cloud: &RingCloudAxi) -> AxiInvariantRecord {
    let circulation = cloud.circulations.iter().sum();
    let impulse = PI
        * cloud
            .positions
            .iter()
            .zip(&cloud.circulations)
            .map(|(p, g)| g * p[0] * p[0])
            .sum::<f64>();
    AxiInvariantRecord {
        circulation,
        impulse,
    }
}

/// Kinetic energy near the axis per probe radius and stored time.
#[derive(Debug, Clone)]
pub struct AxisEnergyTable {
    /// Rows `(t, radius, energy, fraction_of_windowed_total)`.
    pub rows: Vec<[f64; 4]>,
    /// Max fraction over time, in the order of the probe radii.
    pub max_fraction: Vec<f64>,
    /// Radial extent of the energy window used as the total.
    pub window_radius: f64,
}

/// Energy captured inside `{r < radius}` for each stored cloud against the
/// total over a fixed cylindrical window around the history. The quadrature
/// grid is shared by every radius, so nesting is exact: a probe radius at or
/// beyond the window reproduces the windowed total.
pub fn axis_energy_probe(
    history: &[(f64, RingCloudAxi)],
    radii: &[f64],
    quad_resolution: usize,
) -> AxisEnergyTable {
    assert!(
        radii.windows(2).all(|w| w[1] < w[0]) && radii.iter().all(|&r| r > 0.0),
        "probe radii must be positive and decreasing"
    );
    assert!(quad_resolution >= 8);
    if history.is_empty() || history.iter().all(|(_, c)| c.is_empty()) {
        return AxisEnergyTable {
            rows: history
                .iter()
                .flat_map(|(t, _)| radii.iter().map(move |&r| [*t, r, 0.0, 0.0]))
                .collect(),
            max_fraction: vec![0.0; radii.len()],
            window_radius: 0.0,
        };
    }

    let mut r_max = 0.0f64;
    let (mut z_lo, mut z_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for (_, cloud) in history {
        for p in &cloud.positions {
            r_max = r_max.max(p[0]);
            z_lo = z_lo.min(p[1]);
            z_hi = z_hi.max(p[1]);
        }
    }
    let window_radius = 2.5 * r_max;
    let z_margin = 2.0 * r_max;
    let (z_lo, z_hi) = (z_lo - z_margin, z_hi + z_margin);

    let nr = quad_resolution;
    let nz = 2 * quad_resolution;
    let dr = window_radius / nr as f64;
    let dz = (z_hi - z_lo) / nz as f64;

    let mut rows = Vec::with_capacity(history.len() * radii.len());
    let mut max_fraction = vec![0.0f64; radii.len()];
    for (t, cloud) in history {
        // Energy per radial shell, then cumulative sums give every probe.
        let mut shell = vec![0.0f64; nr];
        for ir in 0..nr {
            let r = (ir as f64 + 0.5) * dr;
            for iz in 0..nz {
                let z = z_lo + (iz as f64 + 0.5) * dz;
                let u = ring_velocity(cloud, [r, z]);
                shell[ir] += (u[0] * u[0] + u[1] * u[1]) * 2.0 * PI * r * dr * dz;
            }
        }
        let total: f64 = shell.iter().sum();
        for (k, &radius) in radii.iter().enumerate() {
            let cells = ((radius / dr).floor() as usize).min(nr);
            let energy: f64 = shell[..cells].iter().sum();
            let fraction = if total > 0.0 { energy / total } else { 0.0 };
            max_fraction[k] = max_fraction[k].max(fraction);
            rows.push([*t, radius, energy, fraction]);
        }
    }
    AxisEnergyTable {
        rows,
        max_fraction,
        window_radius,
    }
}
