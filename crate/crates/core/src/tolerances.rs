//! Pinned numerical tolerances.
//!
//! Every threshold used by the library, the validation suite, and the CLI is
//! defined here, so nothing is calibrated after the fact.

/// Relative reconstruction residual allowed for an eigendecomposition,
/// `max|P L P^-1 - M|` over `max(1, max|M|)`.
pub const EIG_RESIDUAL_REL: f64 = 1e-10;

/// Condition number of the eigenvector matrix above which the transfer
/// matrix is evaluated by scaling-and-squaring instead of `P exp(L t) P^-1`.
pub const EIG_FALLBACK_COND: f64 = 1e8;

/// An eigenvalue with modulus below this bound counts as the stationary mode.
pub const ZERO_MODE_ABS: f64 = 1e-10;

/// Pairwise tolerance when asserting that complex eigenvalues occur in
/// conjugate pairs (real drive).
pub const CONJUGATE_PAIR: f64 = 1e-10;

/// Imaginary parts below `CLAMP_IMAG_REL * max|M|` are clamped to zero in
/// eigenvalue reports.
pub const CLAMP_IMAG_REL: f64 = 1e-9;

/// Per-value absolute error allowed against the reference eigenvalue sets.
pub const REFERENCE_EIG_ABS: f64 = 1e-5;

/// Residual allowed when checking a reference eigenvalue against its cubic.
pub const CUBIC_RESIDUAL: f64 = 1e-5;

/// Component-wise agreement between the closed-form and null-space steady
/// states.
pub const STEADY_MATCH: f64 = 1e-10;

/// Absolute residual `max|G v|` allowed for the numeric steady state.
pub const STEADY_RESIDUAL: f64 = 1e-12;

/// Steady states computed with and without the interference switch must
/// agree to this bound.
pub const STEADY_Q_INVARIANCE: f64 = 1e-12;

/// `f(0) = I` to this bound.
pub const TRANSFER_AT_ZERO: f64 = 1e-12;

/// Uniform agreement between the decomposition transfer matrix and the
/// adaptive-integrator oracle.
pub const TRANSFER_ODE_MATCH: f64 = 1e-8;

/// `f(t1) f(t2) = f(t1 + t2)` to this bound.
pub const SEMIGROUP: f64 = 1e-9;

/// Population sum conserved under evolution to this bound.
pub const TRACE_PRESERVATION: f64 = 1e-12;

/// Hermiticity of the generator image of a Hermitian state.
pub const HERMITICITY: f64 = 1e-12;

/// `g2(0) = 0` to this bound.
pub const G2_AT_ZERO: f64 = 1e-12;

/// `|g2 - 1|` and `|ratio - 2|` at the long-delay checkpoint.
pub const G2_LONG_TIME: f64 = 2e-3;

/// Delay (units of 1/gamma0) at which the long-time contracts are checked.
pub const LONG_TIME_TAU: f64 = 60.0;

/// `f12 = f56` and `F2 = F6` to this bound.
pub const CHANNEL_SYMMETRY: f64 = 1e-10;

/// Imaginary residue allowed on emitted correlation values before the
/// imaginary part is discarded.
pub const IMAG_RESIDUE: f64 = 1e-10;

/// Regression weights on coherence slots must vanish to this bound, and the
/// weight-assembled correlator must match the closed form to it as well.
pub const WEIGHT_VANISH: f64 = 1e-12;

/// Emitted correlation values may undershoot zero by at most this much.
pub const POSITIVITY_SLACK: f64 = -1e-10;

/// Absolute tolerance on the frozen transfer-element asymptote 0.153846.
pub const PATHWAY_ASYMPTOTE_ABS: f64 = 1e-5;

/// Relative tolerance between the measured dominant oscillation frequency of
/// a correlation series and the eigenfrequency predicted by the
/// decomposition.
pub const FREQUENCY_MATCH_REL: f64 = 0.02;

/// Local tolerance (absolute and relative) of the adaptive integrator.
pub const ODE_LOCAL_TOL: f64 = 1e-10;

/// Default tau step for emitted series, units of 1/gamma0.
pub const DEFAULT_TAU_STEP: f64 = 0.02;

/// Default tau span for emitted series, units of 1/gamma0.
pub const DEFAULT_TAU_MAX: f64 = 20.0;
