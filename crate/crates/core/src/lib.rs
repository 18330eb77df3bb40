//! Special functions and invariants of degenerating genus-two Riemann surfaces.

pub mod cli;
pub mod degeneration;
pub mod error;
pub mod invariants;
pub mod modular;
pub mod selftest;
pub mod theta;

pub use error::{Error, Result};
