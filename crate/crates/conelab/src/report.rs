//! Report envelopes, configuration echoing, and error serialization.
//!
//! Every command emits a single JSON document of the shape
//! `{"schema": 1, "config": {...}, "result": {...}}` so any number in the
//! result can be traced back to the resolved configuration that produced
//! it.  Field order follows struct declaration order and no maps are
//! involved, so identical inputs serialize to identical bytes.

use crate::sphere::AngularDomain;
use crate::{Error, Result};
use serde::Serialize;

/// Schema version stamped on every report.
pub const SCHEMA: u32 = 1;

/// The resolved configuration of one command invocation.
///
/// Unused parameters stay absent rather than defaulted, so the echoed
/// config never claims more than the command consumed.
#[derive(Debug, Clone, Default, Serialize)]
pub struct RunConfig {
    /// Subcommand name.
    pub subcommand: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub domain: Option<AngularDomain>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes_per_decade: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_inner: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_outer: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radii: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub range: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

impl RunConfig {
    /// Start a config for the named subcommand.
    pub fn new(subcommand: &str) -> Self {
        RunConfig {
            subcommand: subcommand.into(),
            ..Default::default()
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: u32,
    config: &'a RunConfig,
    result: &'a T,
}

/// Render a result with its configuration into the versioned envelope.
pub fn render<T: Serialize>(config: &RunConfig, result: &T) -> Result<String> {
    let doc = Envelope {
        schema: SCHEMA,
        config,
        result,
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

/// Short machine-readable tag for an error variant.
pub fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::InvalidDomain(_) => "invalid_domain",
        Error::EmptyShrink(_) => "empty_shrink",
        Error::MeshTooCoarse(_) => "mesh_too_coarse",
        Error::KTooLarge(_) => "k_too_large",
        Error::NonConvergence(_) => "non_convergence",
        Error::SupportViolation(_) => "support_violation",
        Error::SpectralFloor(_) => "spectral_floor",
        Error::Subcritical(_) => "subcritical",
        Error::NeverElliptic(_) => "never_elliptic",
        Error::NonpositiveField(_) => "nonpositive_field",
        Error::OrderingViolation(_) => "ordering_violation",
        Error::SearchExhausted(_) => "search_exhausted",
        Error::DegenerateData(_) => "degenerate_data",
        Error::GapFailure(_) => "gap_failure",
        Error::InvalidParameter(_) => "invalid_parameter",
        Error::Io(_) => "io",
        Error::Json(_) => "json",
    }
}

/// Render an error as the `{"error": ...}` object commands emit.
pub fn error_json(err: &Error) -> String {
    #[derive(Serialize)]
    struct Payload<'a> {
        kind: &'a str,
        message: String,
    }
    #[derive(Serialize)]
    struct ErrorDoc<'a> {
        schema: u32,
        error: Payload<'a>,
    }
    let doc = ErrorDoc {
        schema: SCHEMA,
        error: Payload {
            kind: error_kind(err),
            message: err.to_string(),
        },
    };
    serde_json::to_string_pretty(&doc).unwrap_or_else(|_| String::from("{\"error\":\"render\"}"))
}

/// Process exit code for a failed command: 3 for numerical failures that
/// a retry with different resolution or budget might cure, 2 for
/// everything the caller must fix.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::NonConvergence(_)
        | Error::SearchExhausted(_)
        | Error::OrderingViolation(_)
        | Error::GapFailure(_) => 3,
        _ => 2,
    }
}

/// One row of a critical-exponent sweep over cap openings.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    /// Cap opening angle in degrees.
    pub theta_deg: f64,
    /// Principal angular eigenvalue.
    pub lambda1: f64,
    /// Decay root of the eigenvalue.
    pub alpha_minus: f64,
    /// Critical exponent.
    pub p_star: f64,
}

/// Render sweep rows as CSV with a header.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("theta_deg,lambda1,alpha_minus,p_star\n");
    for row in rows {
        out.push_str(&format!(
            "{},{:.12e},{:.12e},{:.12e}\n",
            row.theta_deg, row.lambda1, row.alpha_minus, row.p_star
        ));
    }
    out
}
