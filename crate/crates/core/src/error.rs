//! Error type shared by every evaluation and solver path.

use thiserror::Error;

/// Failure modes of jet evaluation, circle scans and root solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A denominator came too close to zero for the quotient to be trusted.
    #[error("evaluation too close to a zero of a denominator (|den| = {modulus:.3e})")]
    NearPole { modulus: f64 },

    /// The base of a real power sits on (or within tolerance of) the
    /// principal branch cut (-inf, 0].
    #[error("base lies within {distance:.3e} of the principal branch cut")]
    BranchCut { distance: f64 },

    /// A truncated series was asked for a point beyond its validity radius.
    #[error("|z| = {radius:.6} exceeds the series validity radius {limit:.6}")]
    OutsideValidityDisk { radius: f64, limit: f64 },

    /// Argument outside the domain of a radius function.
    #[error("r = {r:.6} outside the domain [{lo:.6}, {hi:.6})")]
    OutOfDomain { r: f64, lo: f64, hi: f64 },

    /// An extrapolated limit failed to settle.
    #[error("limit extrapolation did not converge (spread {spread:.3e})")]
    NoConvergence { spread: f64 },

    /// Series composition lost more accuracy than the round-trip budget.
    #[error("series composition accuracy loss {loss:.3e} exceeds budget")]
    TruncationOverflow { loss: f64 },

    /// The circle minimum is already non-positive at the probe radius, so a
    /// concavity radius cannot be bracketed from below.
    #[error("Re T is not positive near the origin (min {min:.3e} at r = {r:.3e})")]
    NotPositiveAtOrigin { min: f64, r: f64 },

    /// A non-finite number or an out-of-range parameter was supplied.
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
