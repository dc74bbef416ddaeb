//! Error type shared by all modules.

use thiserror::Error;

/// Errors produced by the analytic and oracle paths.
///
/// Divergence at a phase transition is a structured error rather than a
/// sentinel value: scans and plots must handle critical points explicitly.
#[derive(Debug, Clone, Error)]
pub enum XyError {
    /// Parameters outside the validity domain (γ ∉ (0, 1], h < 0, ...).
    #[error("invalid parameters: {0}")]
    InvalidPoint(String),

    /// The limiting entropy diverges at (γ, h). When the point is merely
    /// near (not on) the critical field h = 2, `estimate` carries the
    /// leading logarithmic asymptote.
    #[error("entropy diverges at gamma={gamma}, h={h}: {reason}")]
    Divergent {
        gamma: f64,
        h: f64,
        reason: &'static str,
        estimate: Option<f64>,
    },

    /// Input outside an operation's domain (not a validity violation of the
    /// point itself).
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical invariant failed (non-convergence, eigen-solve failure,
    /// out-of-range singular values, ...).
    #[error("numerical failure: {0}")]
    Numerical(String),
}
