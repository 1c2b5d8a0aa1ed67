//! Experiment harness: named presets over the solver crates, configuration
//! parsing, run records with registered assertions, and resolution-study
//! comparison. One experiment per process; all randomness is seeded.

pub mod compare;
pub mod config;
pub mod error;
pub mod presets;
pub mod record;

pub use compare::{compare_runs, CompareReport};
pub use config::ExperimentConfig;
pub use error::HarnessError;
pub use record::{Artifact, AssertionOutcome, RunRecord};
