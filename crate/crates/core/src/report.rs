//! Verification reports: named checks with pass/fail status and witnesses.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// The outcome of one verification run.  Checks keep insertion order and
/// facts are sorted by key, so serialization is deterministic.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub subject: String,
    pub bound: String,
    pub facts: BTreeMap<String, serde_json::Value>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(subject: impl Into<String>, bound: impl Into<String>) -> Report {
        Report {
            subject: subject.into(),
            bound: bound.into(),
            facts: BTreeMap::new(),
            checks: Vec::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, witness: Option<String>) -> bool {
        self.checks.push(Check {
            name: name.into(),
            passed,
            witness,
        });
        passed
    }

    pub fn fact(&mut self, name: impl Into<String>, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("facts serialize");
        self.facts.insert(name.into(), value);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Appends the checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for c in other.checks {
            self.checks.push(Check {
                name: format!("{prefix}/{}", c.name),
                ..c
            });
        }
    }
}
