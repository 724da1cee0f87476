//! Numerical laboratory for the critical exponent of superlinear
//! divergence-type elliptic equations on cone-like domains.
//!
//! A cone-like domain is `C_Omega = { (r, omega) : r > 0, omega in Omega }`
//! for an axisymmetric spherical domain `Omega` on the unit sphere
//! `S^{N-1}`.  The crate computes the quantities that decide existence of
//! positive supersolutions to `-div(a grad u) = u^p` on such cones:
//!
//! * Dirichlet eigenvalues and eigenfunctions of the (possibly perturbed)
//!   Laplace-Beltrami operator on `Omega` ([`angular`]),
//! * characteristic exponents and the critical exponent
//!   `p* = 1 - 2/alpha_minus` ([`exponents`]),
//! * radial profiles for a gallery of coefficient fields whose minimal
//!   solutions have prescribed decay ([`radial`]),
//! * discrete cone sections, annular eigenvalues and Harnack-type
//!   constants ([`cone`]),
//! * minimal positive harmonic functions built from boundary bump data
//!   ([`series`]),
//! * supersolution / nonexistence certificates ([`certify`]), and
//! * a monotone iteration solving the truncated nonlinear problem
//!   ([`solver`]).
//!
//! Everything is deterministic: randomized checks take explicit seeds and
//! reports serialize with a stable field order.

// Validations use `!(x > 0.0)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod angular;
pub mod certify;
pub mod cli;
pub mod cone;
pub mod exponents;
pub mod radial;
pub mod report;
pub mod series;
pub mod solver;
pub mod sphere;

mod linalg;
mod quad;
mod rk;

use thiserror::Error;

/// Crate-wide error type.
///
/// Variants mirror the failure modes of the numerical pipeline; the CLI
/// maps `NonConvergence` to exit code 3 and everything else that reaches
/// argument validation to exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    /// Domain parameters violate their defining inequalities.
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
    /// Shrinking a domain left nothing (margin too large).
    #[error("empty shrink: {0}")]
    EmptyShrink(String),
    /// A mesh was requested with too few nodes to be meaningful.
    #[error("mesh too coarse: {0}")]
    MeshTooCoarse(String),
    /// More eigenpairs requested than the mesh can resolve.
    #[error("K too large: {0}")]
    KTooLarge(String),
    /// An iterative solve failed to reach its tolerance.
    #[error("non-convergence: {0}")]
    NonConvergence(String),
    /// A function that must vanish near a Dirichlet boundary does not.
    #[error("support violation: {0}")]
    SupportViolation(String),
    /// An eigenvalue fell at or below the spectral floor -(N-2)^2/4.
    #[error("spectral floor violation: {0}")]
    SpectralFloor(String),
    /// Exponent inputs on the wrong side of criticality.
    #[error("subcritical input: {0}")]
    Subcritical(String),
    /// A coefficient field is never uniformly elliptic on the scan range.
    #[error("never elliptic: {0}")]
    NeverElliptic(String),
    /// A profile or field that must be positive is not.
    #[error("nonpositive field: {0}")]
    NonpositiveField(String),
    /// Monotone iterates left the sub/supersolution bracket.
    #[error("ordering violation: {0}")]
    OrderingViolation(String),
    /// A dyadic search hit its cap without success.
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    /// Randomized boundary data degenerated to the zero solution.
    #[error("degenerate data: {0}")]
    DegenerateData(String),
    /// The exponent gap required by a critical-case certificate is absent.
    #[error("gap failure: {0}")]
    GapFailure(String),
    /// Generic invalid argument.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
