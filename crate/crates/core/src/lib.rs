//! Numerical laboratory for three classes of singular flow:
//!
//! * [`conical`] — steady supersonic flow past a slender (possibly perturbed)
//!   cone with an attached shock, solved by a self-similar background plus a
//!   shock-fitted space march in the axial coordinate.
//! * [`prandtl`] — the unsteady two-dimensional boundary-layer system, time
//!   marched by viscous splitting (upwind transport, implicit diffusion).
//! * [`vortex`] — Lagrangian vortex-blob dynamics in the plane and for
//!   axisymmetric rings, with concentration and local-energy diagnostics.
//!
//! [`numerics`] holds the shared kernels (RK4, tridiagonal solves, bisection,
//! quadrature, log-log slope fits) and [`series`] the tabular output format
//! used by every experiment.

pub mod conical;
pub mod numerics;
pub mod prandtl;
pub mod series;
pub mod vortex;

pub use series::DiagnosticSeries;
