//! The JSON envelope shared by every subcommand.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub const TOOL_NAME: &str = "tricubic";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub result: serde_json::Value,
    pub notes: Vec<String>,
    pub verdict: String,
}

impl ReportEnvelope {
    pub fn new<T: Serialize>(
        command: &str,
        inputs: BTreeMap<String, String>,
        result: &T,
        verdict: impl ToString,
    ) -> Self {
        ReportEnvelope {
            tool: TOOL_NAME.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            inputs,
            result: serde_json::to_value(result).expect("reports serialize"),
            notes: Vec::new(),
            verdict: verdict.to_string(),
        }
    }

    pub fn with_notes(mut self, notes: impl IntoIterator<Item = String>) -> Self {
        self.notes.extend(notes);
        self
    }

    /// Compact JSON with every object's keys sorted.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        serde_json::to_string(&value).expect("values serialize")
    }

    pub fn to_json_pretty(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        serde_json::to_string_pretty(&value).expect("values serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} :: {}\n", self.tool, self.version, self.command);
        for (k, v) in &self.inputs {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out.push_str(&serde_json::to_string_pretty(&self.result).expect("values serialize"));
        out.push('\n');
        out
    }
}

/// 2 for bad input, 1 for internal failures.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) | Error::Singular(_) | Error::Unsupported(_) | Error::Refused(_) => 2,
        Error::NotInvertible | Error::Lookup(_) | Error::Inconsistency(_) => 1,
    }
}
