//! Shared numerical kernels: explicit time integration, tridiagonal solves,
//! bracketing root finding, composite quadrature, and power-law slope fits.
//!
//! Everything here is a pure function of its inputs and deterministic, so the
//! kernels are safe to call concurrently. All quantities are nondimensional.

mod fit;
mod grid;
mod ode;
mod roots;
mod tridiag;

pub use fit::fit_loglog_slope;
pub use grid::{trapezoid, Grid1D};
pub use ode::rk4_step;
pub use roots::bisect_root;
pub use tridiag::{solve_tridiagonal, TridiagonalSystem};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum NumericsError {
    #[error("non-finite value produced during time integration")]
    NonFiniteState,
    #[error("zero pivot at row {row} while eliminating a tridiagonal system")]
    SingularSystem { row: usize },
    #[error("no sign change over the bracketing interval")]
    NoBracket,
    #[error("{0}")]
    DomainError(String),
    #[error("expected {expected} values, got {got}")]
    ShapeError { expected: usize, got: usize },
}
