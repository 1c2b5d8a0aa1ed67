use super::kernel::kernel2d;
use super::VortexError;
use crate::numerics::rk4_step;
use std::f64::consts::PI;

/// Planar vortex-blob cloud: atom positions, frozen circulations, and one
/// smoothing width shared by the whole cloud.
#[derive(Debug, Clone)]
pub struct BlobCloud2D {
    pub positions: Vec<[f64; 2]>,
    pub circulations: Vec<f64>,
    pub delta: f64,
}

impl BlobCloud2D {
    pub fn new(positions: Vec<[f64; 2]>, circulations: Vec<f64>, delta: f64) -> Self {
        assert_eq!(positions.len(), circulations.len());
        assert!(delta >= 0.0 && delta.is_finite());
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

    pub fn total_circulation(&self) -> f64 {
        self.circulations.iter().sum()
    }

    pub fn total_absolute_circulation(&self) -> f64 {
        self.circulations.iter().map(|g| g.abs()).sum()
    }
}

/// Induced velocity at each target: the exact atom sum in index order
/// (deterministic, superposition-linear in the circulations).
pub fn velocity_field(cloud: &BlobCloud2D, targets: &[[f64; 2]]) -> Vec<[f64; 2]> {
    targets
        .iter()
        .map(|&p| {
            let mut u = [0.0, 0.0];
            for (x, gamma) in cloud.positions.iter().zip(&cloud.circulations) {
                let k = kernel2d([p[0] - x[0], p[1] - x[1]], cloud.delta);
                u[0] += gamma * k[0];
                u[1] += gamma * k[1];
            }
            u
        })
        .collect()
}

/// One RK4 step of the atom positions under the self-induced field;
/// circulations are material constants and never change.
pub fn step(cloud: &BlobCloud2D, dt: f64) -> Result<BlobCloud2D, VortexError> {
    let n = cloud.len();
    let mut flat = Vec::with_capacity(2 * n);
    for p in &cloud.positions {
        flat.extend_from_slice(p);
    }
    let circulations = cloud.circulations.clone();
    let delta = cloud.delta;
    let deriv = move |_t: f64, y: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; y.len()];
        let m = y.len() / 2;
        for i in 0..m {
            let (px, py) = (y[2 * i], y[2 * i + 1]);
            let mut u = [0.0, 0.0];
            for j in 0..m {
                let k = kernel2d([px - y[2 * j], py - y[2 * j + 1]], delta);
                u[0] += circulations[j] * k[0];
                u[1] += circulations[j] * k[1];
            }
            out[2 * i] = u[0];
            out[2 * i + 1] = u[1];
        }
        out
    };
    let next = rk4_step(deriv, &flat, 0.0, dt)?;
    let positions = next.chunks_exact(2).map(|c| [c[0], c[1]]).collect();
    Ok(BlobCloud2D {
        positions,
        circulations: cloud.circulations.clone(),
        delta: cloud.delta,
    })
}

/// Conserved quantities of the smoothed planar dynamics.
#[derive(Debug, Clone, Copy)]
pub struct InvariantRecord {
    pub circulation: f64,
    pub impulse: [f64; 2],
    pub angular_impulse: f64,
    /// Smoothed interaction Hamiltonian
    /// `-(1/4pi) sum_{i<j} G_i G_j ln(|x_i - x_j|^2 + delta^2)`.
    pub hamiltonian: f64,
}

pub fn invariants2d(cloud: &BlobCloud2D) -> InvariantRecord {
    let mut impulse = [0.0, 0.0];
    let mut angular = 0.0;
    for (x, g) in cloud.positions.iter().zip(&cloud.circulations) {
        impulse[0] += g * x[0];
        impulse[1] += g * x[1];
        angular += g * (x[0] * x[0] + x[1] * x[1]);
    }
    let d2 = cloud.delta * cloud.delta;
    let mut hamiltonian = 0.0;
    for i in 0..cloud.len() {
        for j in i + 1..cloud.len() {
            let dx = cloud.positions[i][0] - cloud.positions[j][0];
            let dy = cloud.positions[i][1] - cloud.positions[j][1];
            hamiltonian -=
                cloud.circulations[i] * cloud.circulations[j] * (dx * dx + dy * dy + d2).ln();
        }
    }
    hamiltonian /= 4.0 * PI;
    InvariantRecord {
        circulation: cloud.total_circulation(),
        impulse,
        angular_impulse: angular,
        hamiltonian,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Two equal blobs rotate about their midpoint with angular speed
    /// `G / (pi (d^2 + delta^2))`.
    fn co_rotating_pair(d: f64, delta: f64, gamma: f64) -> BlobCloud2D {
        BlobCloud2D::new(
            vec![[-0.5 * d, 0.0], [0.5 * d, 0.0]],
            vec![gamma, gamma],
            delta,
        )
    }

    #[test]
    fn single_blob_is_stationary() {
        let cloud = BlobCloud2D::new(vec![[0.3, -0.7]], vec![2.0], 0.1);
        let u = velocity_field(&cloud, &cloud.positions);
        assert_eq!(u[0], [0.0, 0.0]);
        let next = step(&cloud, 0.5).unwrap();
        assert_eq!(next.positions, cloud.positions);
    }

    #[test]
    fn co_rotation_speed_matches_the_two_body_closed_form() {
        let (d, delta, gamma) = (1.0, 0.1, 1.0);
        let cloud = co_rotating_pair(d, delta, gamma);
        let u = velocity_field(&cloud, &cloud.positions);
        let speed = (u[1][0] * u[1][0] + u[1][1] * u[1][1]).sqrt();
        let omega_expected = gamma / (PI * (d * d + delta * delta));
        assert!(
            (speed - omega_expected * 0.5 * d).abs() < 1e-14,
            "tangential speed {speed}"
        );
    }

    #[test]
    fn opposite_pair_translates_at_the_classical_speed() {
        let (d, gamma) = (1.0, 1.0);
        let cloud = BlobCloud2D::new(
            vec![[-0.5 * d, 0.0], [0.5 * d, 0.0]],
            vec![gamma, -gamma],
            0.0,
        );
        let u = velocity_field(&cloud, &cloud.positions);
        let expected = gamma / (2.0 * PI * d);
        for v in u {
            assert!((v[0] - 0.0).abs() < 1e-15);
            assert!((v[1] - expected).abs() < 1e-15, "v = {v:?}");
        }
    }

    #[test]
    fn co_rotating_period_is_reproduced_by_the_integrator() {
        let (d, delta, gamma) = (1.0, 0.1, 1.0);
        let omega = gamma / (PI * (d * d + delta * delta));
        let period = 2.0 * PI / omega;
        let dt = period / 4000.0;
        let mut cloud = co_rotating_pair(d, delta, gamma);
        // Track the separation angle until it wraps past 2 pi.
        let mut angle_prev = 0.0f64;
        let mut total = 0.0f64;
        let mut t = 0.0;
        let measured = loop {
            cloud = step(&cloud, dt).unwrap();
            t += dt;
            let sep = [
                cloud.positions[1][0] - cloud.positions[0][0],
                cloud.positions[1][1] - cloud.positions[0][1],
            ];
            let angle = sep[1].atan2(sep[0]);
            let mut delta_angle = angle - angle_prev;
            if delta_angle < -PI {
                delta_angle += 2.0 * PI;
            }
            total += delta_angle;
            angle_prev = angle;
            if total >= 2.0 * PI {
                // Linear interpolation inside the final step.
                break t - dt * (total - 2.0 * PI) / delta_angle;
            }
        };
        assert!(
            ((measured - period) / period).abs() < 1e-3,
            "period {measured} vs {period}"
        );
    }

    #[test]
    fn step_is_time_reversible_to_integrator_order() {
        let cloud = co_rotating_pair(1.0, 0.2, 1.3);
        let dt = 0.05;
        let forward = step(&cloud, dt).unwrap();
        // Reverse by flipping circulations (the field negates).
        let mut back_cloud = forward.clone();
        back_cloud.circulations.iter_mut().for_each(|g| *g = -*g);
        let back = step(&back_cloud, dt).unwrap();
        for (a, b) in back.positions.iter().zip(&cloud.positions) {
            assert!((a[0] - b[0]).abs() < 1e-9);
            assert!((a[1] - b[1]).abs() < 1e-9);
        }
    }

    #[test]
    fn invariants_of_simple_configurations() {
        let pair = BlobCloud2D::new(vec![[0.0, 0.0], [1.0, 0.0]], vec![1.0, -1.0], 0.1);
        let inv = invariants2d(&pair);
        assert_eq!(inv.circulation, 0.0);
        assert!((inv.impulse[0] + 1.0).abs() < 1e-15);
        assert_eq!(inv.impulse[1], 0.0);

        let single = BlobCloud2D::new(vec![[2.0, 3.0]], vec![1.5], 0.1);
        assert_eq!(invariants2d(&single).hamiltonian, 0.0);
    }

    #[test]
    fn invariants_drift_little_over_a_period() {
        let (d, delta, gamma) = (1.0, 0.15, 1.0);
        let omega = gamma / (PI * (d * d + delta * delta));
        let period = 2.0 * PI / omega;
        let steps = 2000;
        let dt = period / steps as f64;
        let mut cloud = co_rotating_pair(d, delta, gamma);
        // Shift off-center so the impulse is nonzero.
        for p in &mut cloud.positions {
            p[0] += 2.0;
        }
        let start = invariants2d(&cloud);
        for _ in 0..steps {
            cloud = step(&cloud, dt).unwrap();
        }
        let end = invariants2d(&cloud);
        assert_eq!(end.circulation, start.circulation);
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1e-300);
        assert!(rel(end.impulse[0], start.impulse[0]) < 1e-8);
        assert!(rel(end.angular_impulse, start.angular_impulse) < 1e-8);
        assert!(rel(end.hamiltonian, start.hamiltonian) < 1e-8);
    }

    #[test]
    fn superposition_is_exact() {
        let a = BlobCloud2D::new(vec![[0.0, 0.0], [1.0, 1.0]], vec![1.0, 0.5], 0.1);
        let b = BlobCloud2D::new(vec![[-1.0, 0.5]], vec![-0.7], 0.1);
        let mut union_pos = a.positions.clone();
        union_pos.extend_from_slice(&b.positions);
        let mut union_circ = a.circulations.clone();
        union_circ.extend_from_slice(&b.circulations);
        let union = BlobCloud2D::new(union_pos, union_circ, 0.1);

        let targets = [[0.3, 0.3], [-2.0, 1.0]];
        let ua = velocity_field(&a, &targets);
        let ub = velocity_field(&b, &targets);
        let uu = velocity_field(&union, &targets);
        for k in 0..targets.len() {
            assert_eq!(uu[k][0], ua[k][0] + ub[k][0]);
            assert_eq!(uu[k][1], ua[k][1] + ub[k][1]);
        }
    }
}
