//! Reconstruction reports: one serializable record per run, carrying the
//! method id, solver diagnostics, and enough provenance (seed, resolved
//! configuration) to replay the run bit for bit.

use crate::linalg::CgTrace;
use serde::{Deserialize, Serialize};

/// PRNG provenance recorded whenever an artifact involved randomness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngInfo {
    /// Generator name, always "chacha8" in this crate.
    pub name: String,
    pub seed: u64,
}

impl RngInfo {
    pub fn chacha8(seed: u64) -> Self {
        Self { name: crate::signals::RNG_NAME.to_string(), seed }
    }
}

/// Per-level record of a multilevel run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LevelRecord {
    pub level: usize,
    pub iterations: usize,
    /// Unweighted data residual Σ_j |p(t_j) − b_j|² of the accepted iterate.
    pub data_residual: f64,
    /// Tail estimate E_M that parameterized this level's inner rule.
    pub tail_estimate: f64,
    /// Which rule ended the level: "outer", "inner", "tolerance",
    /// "max-iter", or "breakdown".
    pub rule: String,
}

/// Uniform result record for every reconstruction method.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReconstructionReport {
    /// "frame-tsvd" | "frame-cg" | "act" | "act-2d" | "multilevel" | "multilevel-2d".
    pub method: String,
    /// Noise level δ the method was told to assume.
    pub delta: f64,
    /// Polynomial degree (fitting methods) or retained section size.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period: Option<f64>,
    /// TSVD threshold, when the method used one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kept_singular_values: Option<usize>,
    /// Discrepancy factor τ_stop, when the method used one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_stop: Option<f64>,
    /// Iterations of the (final) CG run; 0 for direct methods.
    pub iterations: usize,
    /// CG residual-norm history of the (final) run.
    pub residual_norms: Vec<f64>,
    /// "tolerance" | "stopping-rule" | "max-iter" | "breakdown" | "direct".
    pub termination: String,
    /// Method-specific data residual; see docs/formats.md for the exact
    /// functional per method.
    pub data_residual: f64,
    /// ‖truth − reconstruction‖²/‖truth‖² on the evaluation grid, when a
    /// reference was available.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative_error: Option<f64>,
    /// Multilevel per-level records.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<LevelRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub outer_satisfied: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chosen_level: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rng: Option<RngInfo>,
    /// Resolved run configuration embedded by the CLI for provenance.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub config: Option<serde_json::Value>,
    /// Partial failures and warnings, itemized.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ReconstructionReport {
    pub fn new(method: &str, delta: f64) -> Self {
        Self {
            method: method.to_string(),
            delta,
            degree: None,
            period: None,
            tau: None,
            kept_singular_values: None,
            tau_stop: None,
            iterations: 0,
            residual_norms: vec![],
            termination: "direct".to_string(),
            data_residual: 0.0,
            relative_error: None,
            levels: None,
            outer_satisfied: None,
            chosen_level: None,
            rng: None,
            config: None,
            notes: vec![],
        }
    }

    pub fn set_cg(&mut self, trace: &CgTrace) {
        self.iterations = trace.iterations;
        self.residual_norms = trace.residual_norms.clone();
        self.termination = trace.termination.as_str().to_string();
    }
}
