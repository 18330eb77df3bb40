use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain where the routine is defined or certified.
    #[error("domain error: {0}")]
    Domain(String),

    /// The truncation cap was reached before the requested error bound was met.
    #[error("accuracy error: {reason} (radius needed: {needed}, cap: {cap})")]
    Accuracy {
        reason: String,
        /// Smallest radius that would have met the bound, or `usize::MAX` if
        /// no radius up to the absolute limit does.
        needed: usize,
        cap: usize,
    },

    /// The modular form vanishes (numerically) at the requested point.
    #[error("vanishing error: |{form}| = {magnitude:e} is below {threshold:e}")]
    Vanishing { form: &'static str, magnitude: f64, threshold: f64 },

    /// An iteration cap was hit.
    #[error("iteration did not terminate after {0} steps")]
    NonTermination(usize),

    /// The extrapolation fit is underdetermined or singular.
    #[error("fit error: {0}")]
    Fit(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
