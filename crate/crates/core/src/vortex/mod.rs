//! Lagrangian vortex dynamics: smoothed point vortices in the plane and
//! circular vortex rings under axisymmetry (no swirl).
//!
//! Vorticity is carried as atoms with frozen circulations; the induced
//! velocity is the desingularized kernel summed in a fixed index order so
//! runs are bit-reproducible. Diagnostics cover the conserved quantities of
//! the smoothed dynamics, vorticity-concentration probes over balls, and
//! local kinetic energy windows.

mod axi;
mod cloud2d;
mod concentration;
mod elliptic;
mod kernel;
mod sheet;

pub use axi::{
    axis_energy_probe, axisym_invariants, ring_velocity, step_axisym, AxiInvariantRecord,
    AxisEnergyTable, RingCloudAxi,
};
pub use cloud2d::{invariants2d, step, velocity_field, BlobCloud2D, InvariantRecord};
pub use concentration::{concentration_sup, local_energy, ConcentrationReport};
pub use elliptic::complete_elliptic_pair;
pub use kernel::kernel2d;
pub use sheet::{
    build_sheet, check_mirror_symmetry, mirror_symmetrize, CurveSpec, SheetSpec, SignPattern,
    StrengthSpec,
};

use crate::numerics::NumericsError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VortexError {
    #[error("atom {index} is not admissible mirror-symmetric half data")]
    NotNms { index: usize },
    #[error("sheet curve has zero length")]
    DegenerateSpec,
    #[error("ring {index} reached the symmetry axis")]
    AxisCollision { index: usize },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
