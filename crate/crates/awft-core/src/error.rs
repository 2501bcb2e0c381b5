//! Error type shared by every layer of the crate.

use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by kernels, measure construction, and transforms.
#[derive(Debug, Clone, Error)]
pub enum AwError {
    /// The base `q` must lie strictly inside (0, 1).
    #[error("q must lie strictly inside (0,1), got {0}")]
    InvalidQ(f64),

    /// A parameter tuple failed validation; each entry names one violated condition.
    #[error("parameters outside the admissible domain: {0:?}")]
    InvalidParams(Vec<String>),

    /// A series with |z| >= 1 that does not terminate.
    #[error("series does not converge: {0}")]
    NonConvergent(String),

    /// A lower (denominator) parameter sits on the lattice q^{-N}, N >= 0,
    /// where a term denominator vanishes.
    #[error("parameter {value} is within {tol:e} of the pole lattice q^-N (offending power {power})")]
    PoleInParams {
        value: Complex64,
        power: i64,
        tol: f64,
    },

    /// Evaluation point too close to a pole in the geometric variable.
    #[error("x = {0} is within guard distance of a pole")]
    PoleAtX(Complex64),

    /// Evaluation point too close to a pole in the spectral variable.
    #[error("gamma = {0} is within guard distance of a pole")]
    PoleAtGamma(Complex64),

    /// Neither series representation of the Askey-Wilson function is usable.
    /// Unreachable for admissible parameters; reported defensively.
    #[error("no usable series representation at gamma = {gamma}, x = {x}")]
    RepresentationUnavailable { gamma: Complex64, x: Complex64 },

    /// Theta value too close to zero for a relative residual to make sense.
    #[error("theta({0}) is too close to zero for a relative comparison")]
    NearZeroTheta(Complex64),

    /// A lattice point that does not belong to the discrete support.
    #[error("lattice point {x} (index {k}) is not in the discrete support")]
    NotInSupport { k: i64, x: f64 },

    /// The radicand of the measure normalization constant came out negative.
    #[error("negative radicand {0} in the measure normalization constant")]
    NegativeRadicand(f64),

    /// A truncated sum whose tail estimate exceeds the requested accuracy.
    #[error("truncation did not converge: {0}")]
    TruncationNotConverged(String),

    /// Dual-side truncated sum whose tail estimate exceeds the requested accuracy.
    #[error("dual-side truncation did not converge: {0}")]
    DualTruncationNotConverged(String),

    /// Spectral pair with (numerically) equal operator eigenvalues.
    #[error("spectral pair is degenerate: |mu(gamma) - mu(gamma')| = {0:e}")]
    DegenerateSpectralPair(f64),

    /// Malformed input to an operation (bad test function, bad grid, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, AwError>;
