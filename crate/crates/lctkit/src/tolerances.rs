//! Central tolerance constants.
//!
//! Every threshold used by constructors, checks, and the verification
//! suites is named here rather than inlined at call sites.

/// Max-norm tolerance on the symplectic residual ‖SᵀJS − J‖ for a
/// matrix to be accepted as symplectic. Double precision leaves ample
/// headroom for n ≤ 4 products of well-scaled factors.
pub const TOL_SYMPL: f64 = 1e-10;

/// Tolerance on |det S − 1| for accepted symplectic matrices.
pub const TOL_DET: f64 = 1e-8;

/// A matrix counts as free when |det B| is at least this.
pub const FREE_THRESHOLD: f64 = 1e-10;

/// Block-relation and Darboux residual tolerance (consequences of the
/// symplectic identity, one matrix multiply away from `TOL_SYMPL`).
pub const TOL_BLOCK: f64 = 1e-8;

/// Relative tolerance for unitarity of the fast transform.
pub const TOL_UNITARITY: f64 = 1e-6;

/// Relative L2 tolerance between the fast path and the quadrature oracle.
pub const TOL_ORACLE_L2: f64 = 1e-5;

/// Relative L2 tolerance for transform composition and inversion.
pub const TOL_COMPOSITION: f64 = 1e-5;

/// Relative L2 tolerance of the fast transform against the Gaussian
/// closed form.
pub const TOL_GAUSSIAN_ORACLE: f64 = 1e-6;

/// Pointwise tolerance for the Heisenberg-Weyl commutation phase.
pub const TOL_HW_PHASE: f64 = 1e-8;

/// A Wigner row is rejected when max |Im| exceeds this times max |W|.
pub const TOL_IMAG_RESIDUAL: f64 = 1e-8;

/// Mass defect tolerance: |∫∫W − ‖f‖²| relative to ‖f‖².
pub const TOL_MASS: f64 = 1e-6;

/// L1 tolerance for marginal identities on smooth signals.
pub const TOL_MARGINAL_L1: f64 = 1e-3;

/// L1 tolerance for marginal identities on the rectangle signal.
pub const TOL_MARGINAL_L1_ROUGH: f64 = 5e-3;

/// L1 tolerance for Radon-vs-marginal consistency.
pub const TOL_RADON_L1: f64 = 2e-3;

/// Heisenberg slack must satisfy slack ≥ −TOL_SLACK·rhs.
pub const TOL_SLACK: f64 = 1e-9;

/// Saturators must reach slack/rhs at or below this.
pub const TOL_SATURATION: f64 = 1e-3;

/// Robertson-Schrödinger: min eigenvalue ≥ −TOL_RS·(1 + ‖Υ‖max).
pub const TOL_RS: f64 = 1e-8;

/// Entrywise tolerance between the two Υ computation routes.
pub const TOL_UPSILON_CROSS: f64 = 1e-4;

/// Relative critical band for parameter-level Hardy classification.
pub const TOL_HARDY_PARAM: f64 = 1e-6;

/// Relative critical band for fitted (regression-based) Hardy
/// classification; regression noise makes the parameter band useless.
pub const TOL_HARDY_FIT: f64 = 1e-2;

/// Minimum regression R² for a Gaussian-envelope fit to be accepted.
pub const HARDY_FIT_R2_MIN: f64 = 0.99;

/// Samples below this fraction of the peak count as noise in fits.
pub const NOISE_FLOOR: f64 = 1e-12;

/// Relative tolerance for the fitted Paley-Wiener exponential rate.
pub const TOL_PW_RATE: f64 = 5e-2;

/// Eigenvalue agreement tolerance between the SPD-similarity route and
/// the direct nonsymmetric solve.
pub const TOL_EIG_CROSS: f64 = 1e-8;

/// Relative tolerance when comparing grid spacings and alignments.
pub const TOL_GRID: f64 = 1e-9;
