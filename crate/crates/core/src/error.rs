//! Error types shared by all modules.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Non-finite or otherwise malformed input values.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The (M, Q, Λ) triple does not describe a black hole with three
    /// positive horizon radii.
    #[error("parameters are not admissible: {clause}")]
    Inadmissible { clause: &'static str },

    /// A quantity was requested outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative method failed to converge.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// Coincident horizon radii (extremal tuning); rejected rather than
    /// regularized.
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    /// The l = 0 (pure charge) sector is excluded from the mode analysis.
    #[error("mode l = 0 is excluded (stationary pure-charge sector)")]
    ExcludedMode,

    /// Bad run configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// Non-finite field values appeared during evolution.
    #[error("instability detected at step {step} (t = {time})")]
    Instability { step: usize, time: f64 },

    /// The monitored constraint norm exceeded its configured ceiling.
    #[error("constraint norm {norm:e} exceeded ceiling {ceiling:e} at step {step}")]
    ConstraintBlowup { step: usize, norm: f64, ceiling: f64 },

    /// An operation needs more recorded data than the trajectory holds.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A hypersurface leaves the time range covered by the stored records.
    #[error("surface leaves the stored time range: {0}")]
    Coverage(String),

    /// A fit was requested on a degenerate series.
    #[error("degenerate fit: {0}")]
    Fit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
