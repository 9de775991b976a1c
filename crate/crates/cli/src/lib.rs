//! Experiment registry and runner behind the `multisurf` binary.
//!
//! Each registered experiment bundles a system, default step size, horizon,
//! initial state and scheme with a list of property tags. [`run_named`]
//! simulates it with optional overrides and checks those tags.

pub mod models;
pub mod properties;
pub mod registry;
pub mod runner;

pub use properties::Property;
pub use registry::{find, registry, ExperimentSpec, Model, Scheme};
pub use runner::{convergence_sweep, run, run_named, simulate_file, Overrides, RunConfig, RunOutcome};
