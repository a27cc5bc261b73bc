//! Time-interval operators and stroboscopic quantum clocks on odd-prime
//! dimensional state spaces.
//!
//! The crate builds the clock/shift unitary pair, the discrete phase-space
//! operator basis and its Wigner-type mapping, decides whether a Hamiltonian
//! spectrum admits a clock period, constructs the time-interval operator for
//! it, and simulates the resulting dynamics with the exact propagator.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod numerics;
pub mod phase_space;
pub mod schwinger;
pub mod spectrum;
pub mod time_interval;
pub mod verify;

pub use error::{Error, Result};
