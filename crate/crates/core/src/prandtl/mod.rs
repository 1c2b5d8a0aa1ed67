//! Unsteady two-dimensional boundary layer, time marched by viscous
//! splitting.
//!
//! Each step is a Lie split: an upwind transport substep for
//! `u_t + u u_x + v u_y + p_x = 0`, then an implicit wall-normal diffusion
//! solve for `u_t = nu u_yy`, then reconstruction of `v` from the continuity
//! equation. The favorable regime (positive, wall-monotone data and
//! non-positive pressure gradient) keeps the transport upwinding well defined;
//! losing `u > 0` in the interior is reported as a separation event rather
//! than silently worked around.

mod blasius;
mod config;
mod diagnostics;
mod state;
mod stepper;

pub use blasius::{blasius_profile, BlasiusProfile};
pub use config::{
    validate_data, BLConfig, DataCheck, DataReport, EulerTrace, InflowData, InitialData,
    WallTranspiration,
};
pub use diagnostics::{lipschitz_diagnostics, LipschitzRecord};
pub use state::{min_shear, reconstruct_v, wall_shear, BLState, Field2};
pub use stepper::{advance, diffusion_substep, transport_substep};

use crate::numerics::NumericsError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum PrandtlError {
    #[error("transport step violates the CFL bound (dt*(u/dx + v/dy) = {cfl:.3})")]
    StepTooLarge { cfl: f64 },
    #[error("streamwise velocity lost positivity at x = {x:.4}, y = {y:.4}")]
    UpwindBreakdown { x: f64, y: f64 },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
