//! Report assembly and serialization. Non-finite values serialize as JSON
//! null, so an infinite bound is visible but never breaks a consumer.

use serde::Serialize;
use serde_json::{json, Map, Value};

use dmu_corona::{FunctionTuple, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

#[derive(Debug, Serialize)]
pub struct Item {
    pub name: String,
    pub value: Option<f64>,
    pub passed: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub items: Vec<Item>,
    pub artifacts: Map<String, Value>,
}

/// Incremental report builder: named checks plus named artifacts, with the
/// status derived from the checks unless explicitly forced inconclusive.
pub struct ReportBuilder {
    command: String,
    items: Vec<Item>,
    artifacts: Map<String, Value>,
    inconclusive: bool,
}

impl ReportBuilder {
    pub fn new(command: &str) -> Self {
        ReportBuilder {
            command: command.to_string(),
            items: Vec::new(),
            artifacts: Map::new(),
            inconclusive: false,
        }
    }

    /// A named value that participates in the pass/fail decision.
    pub fn check(&mut self, name: &str, value: f64, passed: bool) -> &mut Self {
        self.items.push(Item {
            name: name.to_string(),
            value: Some(value),
            passed: Some(passed),
        });
        self
    }

    /// A named value reported for information only.
    pub fn info(&mut self, name: &str, value: f64) -> &mut Self {
        self.items.push(Item {
            name: name.to_string(),
            value: Some(value),
            passed: None,
        });
        self
    }

    pub fn artifact(&mut self, name: &str, value: Value) -> &mut Self {
        self.artifacts.insert(name.to_string(), value);
        self
    }

    /// Force INCONCLUSIVE unless some check already failed (a definite
    /// failure outranks an open question).
    pub fn inconclusive(&mut self) -> &mut Self {
        self.inconclusive = true;
        self
    }

    pub fn finish(self) -> Report {
        let any_failed = self
            .items
            .iter()
            .any(|item| item.passed == Some(false));
        let status = if any_failed {
            Status::Fail
        } else if self.inconclusive {
            Status::Inconclusive
        } else {
            Status::Pass
        };
        Report {
            command: self.command,
            status,
            items: self.items,
            artifacts: self.artifacts,
        }
    }
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }

    pub fn to_json_string(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serialization");
        text.push('\n');
        text
    }
}

pub fn poly_json(p: &Polynomial) -> Value {
    let coeffs: Vec<Value> = p.coeffs().iter().map(|c| json!([c.re, c.im])).collect();
    json!({ "coeffs": coeffs })
}

pub fn tuple_json(t: &FunctionTuple) -> Value {
    let entries: Vec<Value> = t.entries().iter().map(poly_json).collect();
    json!({ "entries": entries })
}
