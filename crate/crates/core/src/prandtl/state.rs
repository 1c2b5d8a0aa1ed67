use super::config::BLConfig;

/// Dense `(nx, ny)` scalar field, row-major in `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Field2 {
    pub nx: usize,
    pub ny: usize,
    data: Vec<f64>,
}

impl Field2 {
    pub fn zeros(nx: usize, ny: usize) -> Self {
        Self {
            nx,
            ny,
            data: vec![0.0; nx * ny],
        }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.ny + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.ny + j] = v;
    }

    pub fn values(&self) -> &[f64] {
        &self.data
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Boundary-layer state: streamwise velocity on the tensor grid, the derived
/// wall-normal velocity, and the pressure-gradient row at the current time.
#[derive(Debug, Clone)]
pub struct BLState {
    pub t: f64,
    pub u: Field2,
    pub v: Field2,
    pub px: Vec<f64>,
}

impl BLState {
    /// Initial state from the configured data, with `v` reconstructed and
    /// the no-slip/far-field rows imposed exactly.
    pub fn init(cfg: &BLConfig) -> Self {
        let mut u = Field2::zeros(cfg.nx, cfg.ny);
        for i in 0..cfg.nx {
            let x = cfg.x(i);
            for j in 1..cfg.ny - 1 {
                u.set(i, j, cfg.u0(x, cfg.y(j)));
            }
            u.set(i, 0, 0.0);
            u.set(i, cfg.ny - 1, cfg.trace.value(x, 0.0));
        }
        let v = reconstruct_v(&u, cfg, 0.0);
        let px = (0..cfg.nx)
            .map(|i| cfg.trace.pressure_gradient(cfg.x(i), 0.0))
            .collect();
        Self { t: 0.0, u, v, px }
    }
}

/// Wall-normal velocity from continuity:
/// `v(x, y) = v0(x, t) - integral_0^y du/dx dy'` by cumulative trapezoid,
/// with one-sided `du/dx` at the streamwise ends.
pub fn reconstruct_v(u: &Field2, cfg: &BLConfig, t: f64) -> Field2 {
    let (nx, ny) = (u.nx, u.ny);
    let dx = cfg.dx();
    let dy = cfg.dy();
    let mut v = Field2::zeros(nx, ny);
    for i in 0..nx {
        let dudx = |j: usize| -> f64 {
            if i == 0 {
                (u.at(1, j) - u.at(0, j)) / dx
            } else if i == nx - 1 {
                (u.at(nx - 1, j) - u.at(nx - 2, j)) / dx
            } else {
                (u.at(i + 1, j) - u.at(i - 1, j)) / (2.0 * dx)
            }
        };
        let mut acc = cfg.v0(cfg.x(i), t);
        v.set(i, 0, acc);
        for j in 1..ny {
            acc -= 0.5 * (dudx(j - 1) + dudx(j)) * dy;
            v.set(i, j, acc);
        }
    }
    v
}

/// Minimum of the discrete wall-normal shear over the grid; one-sided at the
/// walls, centered inside.
pub fn min_shear(state: &BLState, cfg: &BLConfig) -> f64 {
    let dy = cfg.dy();
    let (nx, ny) = (state.u.nx, state.u.ny);
    let mut worst = f64::INFINITY;
    for i in 0..nx {
        for j in 0..ny {
            let d = if j == 0 {
                (state.u.at(i, 1) - state.u.at(i, 0)) / dy
            } else if j == ny - 1 {
                (state.u.at(i, ny - 1) - state.u.at(i, ny - 2)) / dy
            } else {
                (state.u.at(i, j + 1) - state.u.at(i, j - 1)) / (2.0 * dy)
            };
            worst = worst.min(d);
        }
    }
    worst
}

/// Wall shear `du/dy` at `y = 0` per streamwise station.
pub fn wall_shear(state: &BLState, cfg: &BLConfig) -> Vec<f64> {
    let dy = cfg.dy();
    (0..state.u.nx)
        .map(|i| (state.u.at(i, 1) - state.u.at(i, 0)) / dy)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prandtl::config::{EulerTrace, InflowData, InitialData, WallTranspiration};

    fn cfg(nx: usize, ny: usize, v0: f64) -> BLConfig {
        BLConfig {
            nu: 0.01,
            length: 1.0,
            t_final: 1.0,
            y_max: 1.0,
            nx,
            ny,
            dt: 0.01,
            trace: EulerTrace::Uniform(1.0),
            initial: InitialData::LinearShear,
            inflow: InflowData::FrozenInitial,
            wall: WallTranspiration::Constant(v0),
        }
    }

    #[test]
    fn x_independent_u_gives_constant_v() {
        let cfg = cfg(9, 17, -0.05);
        let mut u = Field2::zeros(9, 17);
        for i in 0..9 {
            for j in 0..17 {
                u.set(i, j, (j as f64 / 16.0).powi(2));
            }
        }
        let v = reconstruct_v(&u, &cfg, 0.0);
        for i in 0..9 {
            for j in 0..17 {
                assert!((v.at(i, j) + 0.05).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn separable_u_matches_closed_form() {
        // u = y g(x) with g linear: v = v0 - y^2 g'(x) / 2, exactly
        // reproduced because the trapezoid is exact for linear integrands.
        let cfg = cfg(11, 21, 0.0);
        let g = |x: f64| 1.0 + 0.5 * x;
        let mut u = Field2::zeros(11, 21);
        for i in 0..11 {
            for j in 0..21 {
                u.set(i, j, cfg.y(j) * g(cfg.x(i)));
            }
        }
        let v = reconstruct_v(&u, &cfg, 0.0);
        for i in 1..10 {
            for j in 0..21 {
                let y = cfg.y(j);
                let expected = -0.5 * y * y * 0.5;
                assert!(
                    (v.at(i, j) - expected).abs() < 1e-12,
                    "v({i},{j}) = {} vs {}",
                    v.at(i, j),
                    expected
                );
            }
        }
    }

    #[test]
    fn discrete_continuity_residual_vanishes() {
        let cfg = cfg(12, 18, -0.01);
        let mut u = Field2::zeros(12, 18);
        for i in 0..12 {
            for j in 0..18 {
                let (x, y) = (cfg.x(i), cfg.y(j));
                u.set(
                    i,
                    j,
                    (1.0 + x * x) * y.sqrt().min(1.0) + 0.1 * (3.0 * x).sin() * y,
                );
            }
        }
        let v = reconstruct_v(&u, &cfg, 0.0);
        let (dx, dy) = (cfg.dx(), cfg.dy());
        for i in 1..11 {
            for j in 0..17 {
                let dudx = |jj: usize| (u.at(i + 1, jj) - u.at(i - 1, jj)) / (2.0 * dx);
                let resid = (v.at(i, j + 1) - v.at(i, j)) / dy + 0.5 * (dudx(j) + dudx(j + 1));
                assert!(resid.abs() < 1e-10, "residual {resid} at ({i},{j})");
            }
        }
    }

    #[test]
    fn reconstruction_converges_under_refinement() {
        // Smooth u with known dv: compare against a fine-grid quadrature.
        let residual = |ny: usize| -> f64 {
            let cfg = cfg(6, ny, 0.0);
            let mut u = Field2::zeros(6, ny);
            for i in 0..6 {
                for j in 0..ny {
                    let (x, y) = (cfg.x(i), cfg.y(j));
                    u.set(i, j, (1.0 + x) * (std::f64::consts::PI * y / 2.0).sin());
                }
            }
            let v = reconstruct_v(&u, &cfg, 0.0);
            // Exact: v = -(2/pi)(1 - cos(pi y / 2)) * du/dx with du/dx = 1.
            let mut worst = 0.0f64;
            for j in 0..ny {
                let y = cfg.y(j);
                let exact =
                    -(2.0 / std::f64::consts::PI) * (1.0 - (std::f64::consts::PI * y / 2.0).cos());
                worst = worst.max((v.at(3, j) - exact).abs());
            }
            worst
        };
        let coarse = residual(33);
        let fine = residual(65);
        assert!(
            coarse / fine > 3.0,
            "expected O(dy^2): coarse {coarse}, fine {fine}"
        );
    }

    #[test]
    fn min_shear_reads_profiles() {
        let cfg = cfg(5, 11, 0.0);
        let mut state = BLState::init(&cfg);
        // Linear profile: shear = U / y_max everywhere.
        assert!((min_shear(&state, &cfg) - 1.0).abs() < 1e-12);

        // Locally separated synthetic profile: negative shear near the wall.
        state.u.set(2, 1, -0.05);
        assert!(min_shear(&state, &cfg) < 0.0);
    }
}
