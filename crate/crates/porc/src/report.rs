//! Report structures emitted by the CLI. All floating point values are
//! rounded to six decimals at construction time so that JSON output
//! round-trips bit-for-bit.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Rounds to six decimal digits; applied to every float before it enters a
/// report.
pub fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub per_trace: Vec<TraceReport>,
    pub log_summary: LogSummary,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TraceReport {
    pub case_id: String,
    pub resolutions: u128,
    pub model: String,
    pub expected_conf: f64,
    pub ci: [f64; 2],
    pub sampled: usize,
    pub exact: bool,
    pub fallback_used: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub top_resolutions: Option<Vec<(String, f64)>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct LogSummary {
    pub weighted_log_conformance: f64,
    pub uncertain_ratio: f64,
    pub fallback_count: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct Provenance {
    pub log: String,
    pub model: String,
    pub flags: Vec<String>,
    pub tool_version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ResolveReport {
    pub model: String,
    pub per_trace: Vec<ResolveEntry>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ResolveEntry {
    pub case_id: String,
    pub resolutions: u128,
    pub top_resolutions: Vec<(String, f64)>,
    pub fallback_used: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MeasuresReport {
    pub per_model: Vec<ModelEntry>,
    pub per_pair: BTreeMap<String, PairEntry>,
    pub recommended: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ModelEntry {
    pub model: String,
    pub coverage: f64,
    pub mean_uncertainty_ratio: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PairEntry {
    pub uncertain_traces: usize,
    pub support: usize,
    pub ratio: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EvalJson {
    pub true_log_fitness: f64,
    pub per_model: Vec<EvalModelEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EvalModelEntry {
    pub model: String,
    pub rmse: f64,
    pub rmse_defined: bool,
    pub log_error: f64,
    pub uncertain_traces: usize,
    pub runtime_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub approx: Option<EvalApproxEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct EvalApproxEntry {
    pub rmse: f64,
    pub log_error: f64,
    pub runtime_ms: u64,
    pub additional_rmse: f64,
    pub time_saved_ratio: f64,
}
