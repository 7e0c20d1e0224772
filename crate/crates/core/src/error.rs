//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Parameter fails a validity precondition (non-positive gamma0, NaN, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A state vector does not match the generator dimension.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// Slot index outside the 1..=8 block ordering.
    #[error("slot index {0} out of range 1..=8")]
    SlotOutOfRange(usize),

    /// The generator kernel is not one-dimensional, so there is no unique
    /// steady state (happens only for zero drive).
    #[error("degenerate kernel: steady state is not unique")]
    DegenerateKernel,

    /// The QR iteration did not converge.
    #[error("eigensolver failed to converge after {0} sweeps")]
    EigNonConvergence(usize),

    /// Adaptive integrator drove the step below the representable minimum.
    #[error("ODE step size underflow at t = {0}")]
    StepSizeUnderflow(f64),

    /// Delays must be non-negative.
    #[error("negative delay tau = {0}")]
    NegativeTau(f64),

    /// Normalized correlations are undefined for zero drive (zero excited
    /// population in the denominator).
    #[error("normalization undefined: zero drive gives zero excited-state population")]
    UndefinedNormalization,

    /// An internal numerical cross-check exceeded its pinned tolerance.
    #[error("numerical validation failed: {0}")]
    NumericalValidation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
