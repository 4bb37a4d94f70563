//! Result record emitted by the CLI.

use serde::{Deserialize, Serialize};

/// One evaluation: the exact statistic, the method used and its p-value.
/// `p_exact` carries the rational string for the exact methods.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct KsReport {
    pub m: u64,
    pub n: u64,
    pub c: i64,
    pub d: String,
    pub method: String,
    pub p_value: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p_exact: Option<String>,
    pub ties_detected: bool,
    pub elapsed_ms: f64,
}

impl KsReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Shortest decimal rendering that parses back to the same double.
pub fn format_full(p: f64) -> String {
    format!("{p}")
}

/// Six significant digits for eyeballing; scientific for tiny values.
pub fn format_human(p: f64) -> String {
    if p == 0.0 {
        "0".to_string()
    } else if p < 1e-4 {
        format!("{p:.5e}")
    } else {
        format!("{p:.6}")
    }
}
