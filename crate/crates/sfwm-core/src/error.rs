//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors produced by the physics and sweep layers.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter set violates a structural requirement (positivity,
    /// population normalisation, transmission range, axis bounds, …).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A requested evaluation point lies outside the physical domain,
    /// e.g. an energy-conserving quad with a non-positive anti-Stokes
    /// frequency.
    #[error("domain error: {0}")]
    Domain(String),

    /// Both pair amplitudes vanish: there is no heralded state to
    /// normalise. Grid sweeps map this onto dark points instead of
    /// propagating the error.
    #[error("no heralded state: both pair amplitudes vanish")]
    NoHerald,

    /// A density matrix failed validation (Hermiticity, unit trace or
    /// positive semidefiniteness beyond tolerance).
    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
