use super::config::BLConfig;
use super::state::BLState;

/// Running maxima of the discrete difference quotients of `u` in space and
/// time over a stored state history.
#[derive(Debug, Clone, Copy, Default)]
pub struct LipschitzRecord {
    pub sup_dudx: f64,
    pub sup_dudy: f64,
    pub sup_dudt: f64,
}

pub fn lipschitz_diagnostics(history: &[BLState], cfg: &BLConfig) -> LipschitzRecord {
    assert!(history.len() >= 2, "need at least two stored states");
    let (dx, dy) = (cfg.dx(), cfg.dy());
    let mut rec = LipschitzRecord::default();
    for state in history {
        for i in 0..cfg.nx {
            for j in 0..cfg.ny {
                if i + 1 < cfg.nx {
                    rec.sup_dudx = rec
                        .sup_dudx
                        .max(((state.u.at(i + 1, j) - state.u.at(i, j)) / dx).abs());
                }
                if j + 1 < cfg.ny {
                    rec.sup_dudy = rec
                        .sup_dudy
                        .max(((state.u.at(i, j + 1) - state.u.at(i, j)) / dy).abs());
                }
            }
        }
    }
    for pair in history.windows(2) {
        let dt = pair[1].t - pair[0].t;
        if dt <= 0.0 {
            continue;
        }
        for i in 0..cfg.nx {
            for j in 0..cfg.ny {
                rec.sup_dudt = rec
                    .sup_dudt
                    .max(((pair[1].u.at(i, j) - pair[0].u.at(i, j)) / dt).abs());
            }
        }
    }
    rec
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prandtl::config::{EulerTrace, InflowData, InitialData, WallTranspiration};
    use crate::prandtl::stepper::advance;

    #[test]
    fn steady_state_has_vanishing_time_quotient() {
        let cfg = BLConfig {
            nu: 0.01,
            length: 1.0,
            t_final: 1.0,
            y_max: 1.0,
            nx: 9,
            ny: 17,
            dt: 0.005,
            trace: EulerTrace::Uniform(1.0),
            initial: InitialData::LinearShear,
            inflow: InflowData::FrozenInitial,
            wall: WallTranspiration::Constant(0.0),
        };
        let s0 = BLState::init(&cfg);
        let s1 = advance(&s0, &cfg, cfg.dt).unwrap();
        let rec = lipschitz_diagnostics(&[s0, s1], &cfg);
        assert!(rec.sup_dudt < 1e-10, "steady run drifts: {}", rec.sup_dudt);
        assert!((rec.sup_dudy - 1.0).abs() < 1e-12);
    }
}
