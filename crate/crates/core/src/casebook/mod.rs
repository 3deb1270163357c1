//! End-to-end reproductions of the worked results: the tetrahedral-numbers theorem, the
//! weak-approximation failure on `U50`, and the non-rationality report.

pub mod rationality;
pub mod tetra;
pub mod u50;

use std::collections::BTreeMap;

use serde::Serialize;

pub use rationality::{rationality_report, RationalityReport};
pub use tetra::{branch_of, f2_mod27_table, tetrahedral_range, verify_tetrahedral, TetraBranch, TetraSummary};
pub use u50::{reproduce_u50, reproduce_u50_with, U50Fixture, REFERENCE_POINTS};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Reproduced,
    Failed { step: String },
    Inapplicable { reason: String },
}

impl Verdict {
    pub fn is_reproduced(&self) -> bool {
        matches!(self, Verdict::Reproduced)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Reproduced => f.write_str("Reproduced"),
            Verdict::Failed { step } => write!(f, "Failed({step})"),
            Verdict::Inapplicable { reason } => write!(f, "Inapplicable({reason})"),
        }
    }
}

/// One named validation step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct TheoremReport {
    pub claim: String,
    pub inputs: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    /// Sub-certificates keyed by name, already rendered as JSON.
    pub certificates: BTreeMap<String, serde_json::Value>,
    pub notes: Vec<String>,
    pub verdict: Option<Verdict>,
}

impl TheoremReport {
    fn new(claim: &str) -> Self {
        TheoremReport { claim: claim.to_string(), ..Default::default() }
    }

    fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.insert(key.to_string(), value.to_string());
    }

    fn attach<T: Serialize>(&mut self, key: &str, value: &T) {
        let json = serde_json::to_value(value).unwrap_or_else(|e| serde_json::Value::String(e.to_string()));
        self.certificates.insert(key.to_string(), json);
    }

    /// Record a check; returns whether it passed so callers can stop at the first failure.
    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(Check { name: name.to_string(), passed, detail: detail.into() });
        passed
    }

    fn inapplicable(mut self, reason: impl Into<String>) -> Self {
        self.verdict = Some(Verdict::Inapplicable { reason: reason.into() });
        self
    }

    /// Reproduced when every recorded check passed.
    fn conclude(mut self) -> Self {
        self.verdict = Some(match self.checks.iter().find(|c| !c.passed) {
            Some(c) => Verdict::Failed { step: c.name.clone() },
            None => Verdict::Reproduced,
        });
        self
    }

    pub fn verdict(&self) -> &Verdict {
        self.verdict.as_ref().expect("report is concluded")
    }

    pub fn is_reproduced(&self) -> bool {
        self.verdict().is_reproduced()
    }

    pub fn check_named(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}
