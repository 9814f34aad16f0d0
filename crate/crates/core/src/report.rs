//! Run reports printed by the command-line tool.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::banach::{ConditionFailure, FunctionalReport};
use crate::bounds::BoundReport;
use crate::optimizer::{Certificate, OptimizerResult, RestartTrace};
use crate::verify::{CoherenceReport, DecompositionReport};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// `sha256:<hex>` of the exact bytes consumed.
pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizeSummary {
    pub atoms: usize,
    pub dim: usize,
    pub achieved_coherence: f64,
    pub bound: f64,
    pub gap: f64,
    pub certificate: Certificate,
    pub best_restart: usize,
    pub output: Option<String>,
    pub traces: Vec<RestartTrace>,
}

impl OptimizeSummary {
    pub fn new(result: &OptimizerResult, output: Option<String>) -> Self {
        Self {
            atoms: result.best_family.len(),
            dim: result.best_family.dim(),
            achieved_coherence: result.achieved_coherence,
            bound: result.bound,
            gap: result.gap,
            certificate: result.certificate,
            best_restart: result.best_restart,
            output,
            traces: result.traces.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MakeSummary {
    pub construction: String,
    pub atoms: usize,
    pub dim: usize,
    pub output: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Payload {
    Bound(BoundReport),
    Verify {
        coherence: CoherenceReport,
        decomposition: DecompositionReport,
        implied_coherence_floor: f64,
    },
    FunctionalVerify(FunctionalReport),
    PreconditionViolation {
        failures: Vec<ConditionFailure>,
    },
    Optimize(OptimizeSummary),
    Make(MakeSummary),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub input_digest: String,
    pub payload: Payload,
    pub wall_time_seconds: f64,
    pub version: String,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    /// Aligned `key  value` lines carrying the same fields as the JSON form.
    pub fn to_text(&self) -> String {
        let value = serde_json::to_value(self).expect("reports always serialize");
        let mut lines = Vec::new();
        flatten("", &value, &mut lines);
        let width = lines.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in lines {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        out
    }
}

fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&key(k), v, out);
            }
        }
        // pairs and other short numeric arrays stay on one line
        Value::Array(items) if items.iter().all(|v| !v.is_object()) => {
            out.push((prefix.to_string(), value.to_string()));
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&key(&i.to_string()), v, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}
