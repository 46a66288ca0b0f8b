//! Shared error type for the crate.

use thiserror::Error;

use crate::model::ValidationReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// The instance violates a structural invariant; see the report.
    #[error("instance validation failed: {0}")]
    Validation(ValidationReport),

    /// Every population-weighted baseline distance is zero, so the scale
    /// parameter alpha is undefined. Access is already perfect; treat the
    /// EDE as 0 and skip optimization.
    #[error("degenerate baseline distances: all population-weighted distances are zero")]
    DegenerateDistances,

    /// More new sites requested than candidate locations exist.
    #[error("budget k={k} exceeds the {candidates} available candidate sites")]
    BudgetExceedsCandidates { k: usize, candidates: usize },

    /// No site can be opened (no existing sites and nothing selected).
    #[error("open set would be empty: instance has no existing sites and no selection was made")]
    EmptyOpenSet,

    /// An input file could not be parsed. Location is file:line where known.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// Geometry was requested but a block or site has no coordinates.
    #[error("missing coordinates: {0}")]
    MissingCoordinates(String),

    /// Plans passed to a comparison were built against different baselines.
    #[error("mismatched baseline: {0}")]
    MismatchedBaseline(String),

    #[error("invalid synthetic-city spec: {0}")]
    InvalidSynthSpec(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
