//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by generators, evaluators and classification routines.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on user-supplied parameters failed.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A numerical routine produced an internally inconsistent result
    /// (e.g. analytic and finite-difference derivatives disagree).
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// A root finder could not bracket a root inside the stated interval.
    #[error("root bracketing failed on [{lo}, {hi}]: {detail}")]
    Bracketing { lo: f64, hi: f64, detail: String },

    /// A symmetric partial product kept drifting beyond the requested
    /// tolerance at the largest admissible radius. The trace carries
    /// `(radius, ln|partial|)` checkpoints for post-mortem inspection.
    #[error("product did not settle within rel_tol at r_max = {r_max}: {detail}")]
    NonConvergence {
        r_max: f64,
        trace: Vec<(f64, f64)>,
        detail: String,
    },

    /// The integrand of a weighted inner product does not decay fast
    /// enough for the integral to exist.
    #[error("divergent integral: fitted tail exponent {fitted_exponent:.3} <= 1")]
    DivergentIntegral { fitted_exponent: f64 },

    /// Two spectral sequences share an eigenvalue; extensions of one
    /// operator carry each real point in exactly one spectrum.
    #[error("shared eigenvalue between extensions: {a} vs {b}")]
    SharedEigenvalue { a: f64, b: f64 },

    /// Resolvent requested at a point where s_beta vanishes.
    #[error("pole at eigenvalue: s_beta vanishes at {re}+{im}i")]
    PoleAtEigenvalue { re: f64, im: f64 },

    /// Kernel not strictly positive where positivity is required.
    #[error("invalid kernel: {0}")]
    InvalidKernel(String),

    /// The point handed to `eigenfunction` is not a zero of s_beta.
    #[error("{x} is not an eigenvalue: |s_beta| = {s_abs:.3e} there")]
    InvalidEigenvalue { x: f64, s_abs: f64 },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
