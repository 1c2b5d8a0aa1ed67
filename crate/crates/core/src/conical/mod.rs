//! Supersonic potential flow past a slender curved cone with an attached
//! shock.
//!
//! The background state is the self-similar conical flow (fields depending on
//! `s = r/z` alone) obtained by shooting over the shock angle; perturbed
//! geometries are handled by a shock-fitted characteristic march in the axial
//! coordinate `z` on the body/shock normalized domain. Diagnostics measure
//! the deviation from the background and its decay rate in `z`.

mod gas;
mod geometry;
mod march;
mod oracle;
mod self_similar;
mod shock;

pub use gas::{bernoulli_density, Freestream, GasModel};
pub use geometry::{check_cone_admissibility, AdmissibilityReport, ConeGeometry, OrderBound};
pub use march::{
    deviation_norm, march_step, max_characteristic_speed, run_decay_study, run_marching,
    DecayStudy, MarchFailure, MarchParams, MarchState, MarchingRun, StationProfile,
};
pub use oracle::conical_shock_angle_spherical;
pub use self_similar::{solve_self_similar, solve_self_similar_with, SelfSimilarSolution};
pub use shock::{rh_downstream, DownstreamState};

use crate::numerics::NumericsError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConicalError {
    #[error("density must be positive")]
    NonPhysicalDensity,
    #[error("Bernoulli inversion left the physical branch (vacuum reached)")]
    VacuumReached,
    #[error("upstream normal Mach number below 1: no shock solution")]
    NoShockSolution,
    #[error("root finding failed while solving a jump condition: {0}")]
    SolverFailure(String),
    #[error("freestream is not supersonic")]
    NotSupersonic,
    #[error("no attached conical shock for this cone angle and Mach number")]
    DetachedShock,
    #[error("perturbation sampling too coarse: {0}")]
    ResolutionError(String),
    #[error("axial hyperbolicity lost at z = {z}")]
    HyperbolicityLost { z: f64 },
    #[error("shock front crossed the body at z = {z}")]
    GeometryCollapse { z: f64 },
    #[error("marching step exceeds the characteristic CFL bound")]
    StepTooLarge,
    #[error("shock evolution solve failed at z = {z}: {reason}")]
    ShockJumpFailure { z: f64, reason: String },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
