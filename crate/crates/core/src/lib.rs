//! Simulation, closed-form bounds and Monte Carlo verification for
//! multiplicative up-drift processes and level-based analyses of
//! non-elitist evolutionary algorithms.

pub mod binomial;
pub mod bounds;
pub mod ea;
pub mod error;
pub mod numeric;
pub mod potential;
pub mod process;
pub mod rng;
pub mod stats;
pub mod verify;

pub use error::{Error, Result};
pub use process::{ProcessKind, ProcessSpec, Trajectory, ZeroLaw};
