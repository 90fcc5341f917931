//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Domain construction failed (degenerate shape, bad anchors, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Interface sampling hit an impossible state; indicates a construction bug.
    #[error("explorer error: {0}")]
    Explorer(String),

    /// Loop erasure received a corrupt input path.
    #[error("loop erasure error: {0}")]
    Erase(String),

    /// Conformal map construction or evaluation failed.
    #[error("conformal map error: {0}")]
    Map(String),

    /// Observable precondition violated.
    #[error("observable error: {0}")]
    Observable(String),

    /// Statistics precondition violated (empty input, grid mismatch, ...).
    #[error("stats error: {0}")]
    Stats(String),

    /// Scaling fit failed (singular design, too few observations, ...).
    #[error("fit error: {0}")]
    Fit(String),

    /// Exact enumeration precondition violated.
    #[error("oracle error: {0}")]
    Oracle(String),

    /// Configuration file or CLI argument problem.
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
