//! Error type shared by every module of the crate.

/// Errors surfaced by tuple construction, the difference calculus and the
/// spectral routines. Variants are coarse on purpose: callers dispatch on
/// the kind, the message carries the specifics.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Malformed arguments: shape mismatches, non-finite entries, empty
    /// input, exponents outside (0, inf].
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The tuple fails the commutativity gate. `i` and `j` are 1-based
    /// operator indices, `residual` is the relative Frobenius defect of
    /// the worst pair.
    #[error("operators {i} and {j} do not commute (relative residual {residual:.3e})")]
    NotCommuting { i: usize, j: usize, residual: f64 },

    /// A requested enumeration would exceed the hard multi-index cap.
    #[error("capacity exceeded: level would hold {requested} multi-indices (cap {cap})")]
    Capacity { requested: u128, cap: u64 },

    /// The computed data contradicts a structural guarantee, e.g. a
    /// verdict sequence that violates upward closure or a Newton
    /// reconstruction that misses its target.
    #[error("inconsistency: {0}")]
    Inconsistency(String),

    /// A numerical procedure failed to converge or hit a degenerate
    /// configuration (joint triangularization after all retries, QR
    /// stagnation).
    #[error("numerical degeneracy: {0}")]
    Degeneracy(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn inconsistent(msg: impl Into<String>) -> Self {
        Error::Inconsistency(msg.into())
    }

    pub fn degenerate(msg: impl Into<String>) -> Self {
        Error::Degeneracy(msg.into())
    }
}
