//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by operator algebra, model construction, sector
/// projection, diagnostics, and circuit compilation.
#[derive(Debug, Error)]
pub enum Error {
    /// Operands act on different numbers of qubits/sites.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A fermion/qubit/site index lies outside the declared range.
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// A model or configuration parameter violates its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A dense build would exceed the configured dimension budget.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// An operator-algebra precondition failed (e.g. non-commuting charges).
    #[error("algebra violation: {0}")]
    Algebra(String),

    /// A numerical routine failed its internal consistency checks.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Invalid or empty input data to a diagnostic.
    #[error("invalid input: {0}")]
    Input(String),

    /// A sector-policy step was given an incomplete set of sectors.
    #[error("sector coverage: {0}")]
    Coverage(String),

    /// The unfolding map failed (non-monotone fit on the retained range).
    #[error("unfolding failed: {0}")]
    Unfolding(String),

    /// Compiling the identity string: the exponential is a global phase.
    #[error("trivial circuit: {0}")]
    TrivialCircuit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
