//! Run configuration and deterministic JSON report envelopes.

use serde::Serialize;

use crate::error::Result;

/// Everything that determines a report's content. The output path and the
/// worker count are deliberately not serialized: they never change results.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<i64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip)]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub symbolic: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report<T> {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: RunConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub passed: Option<bool>,
    pub result: T,
}

impl<T: Serialize> Report<T> {
    pub fn new(config: RunConfig, passed: Option<bool>, result: T) -> Self {
        Self {
            tool: "kquiver",
            version: env!("CARGO_PKG_VERSION"),
            config,
            passed,
            result,
        }
    }

    /// Pretty JSON with a trailing newline; field order is declaration order
    /// and every map is ordered, so equal inputs give equal bytes.
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}
