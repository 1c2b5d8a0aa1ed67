use super::blasius::BlasiusProfile;

/// Outer Euler trace `U(x, t)` with analytic derivatives; the pressure
/// gradient follows from the Bernoulli relation
/// `p_x = -(U_t + U U_x)`.
#[derive(Debug, Clone)]
pub enum EulerTrace {
    Uniform(f64),
    /// `U = at_inlet + slope * x`.
    LinearInX {
        at_inlet: f64,
        slope: f64,
    },
    /// `U = initial * exp(rate * t)`.
    TimeExponential {
        initial: f64,
        rate: f64,
    },
}

impl EulerTrace {
    pub fn value(&self, x: f64, t: f64) -> f64 {
        match *self {
            EulerTrace::Uniform(u) => u,
            EulerTrace::LinearInX { at_inlet, slope } => at_inlet + slope * x,
            EulerTrace::TimeExponential { initial, rate } => initial * (rate * t).exp(),
        }
    }

    pub fn ddx(&self, _x: f64, _t: f64) -> f64 {
        match *self {
            EulerTrace::LinearInX { slope, .. } => slope,
            _ => 0.0,
        }
    }

    pub fn ddt(&self, x: f64, t: f64) -> f64 {
        match *self {
            EulerTrace::TimeExponential { rate, .. } => rate * self.value(x, t),
            _ => 0.0,
        }
    }

    /// `p_x = -(U_t + U U_x)`.
    pub fn pressure_gradient(&self, x: f64, t: f64) -> f64 {
        -(self.ddt(x, t) + self.value(x, t) * self.ddx(x, t))
    }
}

/// Initial interior data `u0(x, y)`.
#[derive(Debug, Clone)]
pub enum InitialData {
    /// Similarity profile of the local edge speed with a virtual origin:
    /// `u0 = U(x, 0) f'(y sqrt(U / (nu (x + x0))))`.
    BlasiusFamily {
        virtual_origin: f64,
        profile: BlasiusProfile,
    },
    /// Linear shear `u0 = U(x, 0) y / y_max`.
    LinearShear,
    /// Edge speed everywhere above the wall; a test vehicle, not a
    /// physically monotone profile.
    UniformStream,
}

/// Inflow data `u1(y, t)` at `x = 0`.
#[derive(Debug, Clone)]
pub enum InflowData {
    /// Hold the initial profile of the inflow column for all times.
    FrozenInitial,
}

/// Wall transpiration `v0(x, t)`.
#[derive(Debug, Clone)]
pub enum WallTranspiration {
    Constant(f64),
}

impl WallTranspiration {
    pub fn value(&self, _x: f64, _t: f64) -> f64 {
        match *self {
            WallTranspiration::Constant(v) => v,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BLConfig {
    pub nu: f64,
    /// Streamwise extent.
    pub length: f64,
    /// Time horizon.
    pub t_final: f64,
    /// Wall-normal truncation of the half-line.
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
    pub dt: f64,
    pub trace: EulerTrace,
    pub initial: InitialData,
    pub inflow: InflowData,
    pub wall: WallTranspiration,
}

impl BLConfig {
    pub fn dx(&self) -> f64 {
        self.length / (self.nx - 1) as f64
    }

    pub fn dy(&self) -> f64 {
        self.y_max / (self.ny - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        i as f64 * self.dx()
    }

    pub fn y(&self, j: usize) -> f64 {
        j as f64 * self.dy()
    }

    pub fn u0(&self, x: f64, y: f64) -> f64 {
        let u_edge = self.trace.value(x, 0.0);
        match &self.initial {
            InitialData::BlasiusFamily {
                virtual_origin,
                profile,
            } => {
                let eta = y * (u_edge / (self.nu * (x + virtual_origin))).sqrt();
                u_edge * profile.velocity_ratio(eta)
            }
            InitialData::LinearShear => u_edge * (y / self.y_max).min(1.0),
            InitialData::UniformStream => {
                if y > 0.0 {
                    u_edge
                } else {
                    0.0
                }
            }
        }
    }

    pub fn u1(&self, y: f64, _t: f64) -> f64 {
        match self.inflow {
            InflowData::FrozenInitial => self.u0(0.0, y),
        }
    }

    pub fn v0(&self, x: f64, t: f64) -> f64 {
        self.wall.value(x, t)
    }
}

#[derive(Debug, Clone)]
pub struct DataCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Worst offending location and value, when the check fails.
    pub worst: Option<(f64, f64, f64)>,
}

#[derive(Debug, Clone)]
pub struct DataReport {
    pub checks: Vec<DataCheck>,
}

impl DataReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&DataCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Itemized verification of the sign and monotonicity hypotheses on the data:
/// positive edge speed, positive interior data, suction-or-zero wall
/// transpiration, wall-monotone profiles, and a favorable pressure gradient.
pub fn validate_data(cfg: &BLConfig) -> DataReport {
    let mut checks = Vec::new();
    let nt = 9;
    let dy = cfg.dy();

    let mut push = |name: &'static str, worst: Option<(f64, f64, f64)>| {
        checks.push(DataCheck {
            name,
            passed: worst.is_none(),
            worst,
        });
    };

    // U(x, t) > 0.
    let mut worst = None;
    for i in 0..cfg.nx {
        for k in 0..=nt {
            let t = cfg.t_final * k as f64 / nt as f64;
            let u = cfg.trace.value(cfg.x(i), t);
            if u <= 0.0 && worst.is_none() {
                worst = Some((cfg.x(i), t, u));
            }
        }
    }
    push("edge_speed_positive", worst);

    // u0(x, y) > 0 for y > 0.
    let mut worst = None;
    for i in 0..cfg.nx {
        for j in 1..cfg.ny {
            let u = cfg.u0(cfg.x(i), cfg.y(j));
            if u <= 0.0 && worst.is_none() {
                worst = Some((cfg.x(i), cfg.y(j), u));
            }
        }
    }
    push("initial_positive", worst);

    // u1(y, t) > 0 for y > 0.
    let mut worst = None;
    for j in 1..cfg.ny {
        for k in 0..=nt {
            let t = cfg.t_final * k as f64 / nt as f64;
            let u = cfg.u1(cfg.y(j), t);
            if u <= 0.0 && worst.is_none() {
                worst = Some((cfg.y(j), t, u));
            }
        }
    }
    push("inflow_positive", worst);

    // v0(x, t) <= 0 (no injection).
    let mut worst = None;
    for i in 0..cfg.nx {
        for k in 0..=nt {
            let t = cfg.t_final * k as f64 / nt as f64;
            let v = cfg.v0(cfg.x(i), t);
            if v > 0.0 && worst.is_none() {
                worst = Some((cfg.x(i), t, v));
            }
        }
    }
    push("wall_suction_or_zero", worst);

    // d(u0)/dy > 0, checked as non-decreasing within rounding: profiles
    // that reach the edge speed saturate exactly on the truncated grid.
    let mut worst = None;
    for i in 0..cfg.nx {
        for j in 0..cfg.ny - 1 {
            let x = cfg.x(i);
            let d = (cfg.u0(x, cfg.y(j + 1)) - cfg.u0(x, cfg.y(j))) / dy;
            if d < -1e-12 && worst.is_none() {
                worst = Some((x, cfg.y(j), d));
            }
        }
    }
    push("initial_monotone", worst);

    // d(u1)/dy > 0, same convention.
    let mut worst = None;
    for j in 0..cfg.ny - 1 {
        for k in 0..=nt {
            let t = cfg.t_final * k as f64 / nt as f64;
            let d = (cfg.u1(cfg.y(j + 1), t) - cfg.u1(cfg.y(j), t)) / dy;
            if d < -1e-12 && worst.is_none() {
                worst = Some((cfg.y(j), t, d));
            }
        }
    }
    push("inflow_monotone", worst);

    // p_x <= 0 (favorable).
    let mut worst = None;
    for i in 0..cfg.nx {
        for k in 0..=nt {
            let t = cfg.t_final * k as f64 / nt as f64;
            let px = cfg.trace.pressure_gradient(cfg.x(i), t);
            if px > 0.0 && worst.is_none() {
                worst = Some((cfg.x(i), t, px));
            }
        }
    }
    push("pressure_favorable", worst);

    DataReport { checks }
}
