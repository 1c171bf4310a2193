//! Pass/fail reports with deterministic JSON output.

use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "gsp4-report/1";

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub name: String,
    pub params: Map<String, Value>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(name: &str) -> Self {
        Report { name: name.to_string(), params: Map::new(), checks: Vec::new() }
    }

    pub fn param(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), v.into());
        self
    }

    pub fn check(&mut self, name: &str, pass: bool, detail: Value) {
        self.checks.push(Check { name: name.to_string(), pass, detail });
    }

    /// Records a check whose negation is the expected outcome, e.g. a
    /// deliberately corrupted input that must be detected.
    pub fn negative_control(&mut self, name: &str, detected: bool, detail: Value) {
        self.check(name, detected, detail);
    }

    pub fn merge(&mut self, other: Report) {
        for c in other.checks {
            self.checks.push(Check { name: format!("{}/{}", other.name, c.name), ..c });
        }
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect()
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> =
            self.checks.iter().map(|c| json!({ "name": c.name, "pass": c.pass, "detail": c.detail })).collect();
        json!({
            "schema": SCHEMA,
            "name": self.name,
            "params": self.params,
            "pass": self.pass(),
            "checks": checks,
        })
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!("[{}] {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name));
        }
        s
    }
}
