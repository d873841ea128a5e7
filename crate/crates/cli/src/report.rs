//! The versioned JSON report every command writes.

use std::collections::BTreeMap;
use std::time::Instant;

use momentshell_core::criteria::{Status, Verdict};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{exit, CliError};

pub const SCHEMA: &str = "momentshell-report/1";

/// Outcome of one record.
///
/// `holds`, `fails` and `unknown` are verdicts of a checked condition.
/// `match` and `mismatch` compare a computed value with an expected one.
/// `info` carries data without a claim, and `aborted` marks a computation
/// that ran out of budget or hit an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordStatus {
    Holds,
    Fails,
    Unknown,
    Match,
    Mismatch,
    Info,
    Aborted,
}

impl From<Status> for RecordStatus {
    fn from(s: Status) -> Self {
        match s {
            Status::Holds => RecordStatus::Holds,
            Status::Fails => RecordStatus::Fails,
            Status::Unknown => RecordStatus::Unknown,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub name: String,
    /// The condition or claim the record checks, in words.
    pub citation: String,
    pub inputs: BTreeMap<String, Value>,
    pub result: Value,
    pub status: RecordStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

impl Record {
    pub fn new(name: impl Into<String>, citation: impl Into<String>, status: RecordStatus) -> Self {
        Record {
            name: name.into(),
            citation: citation.into(),
            inputs: BTreeMap::new(),
            result: Value::Null,
            status,
            runtime_ms: None,
        }
    }

    pub fn from_verdict(name: impl Into<String>, v: &Verdict) -> Self {
        let mut r = Record::new(name, v.condition.clone(), v.status.into());
        r.result = serde_json::json!({ "witnesses": v.witnesses, "note": v.note });
        r
    }

    pub fn input(mut self, key: &str, value: impl Serialize) -> Self {
        self.inputs.insert(key.to_string(), to_value(value));
        self
    }

    pub fn result(mut self, value: impl Serialize) -> Self {
        self.result = to_value(value);
        self
    }

    pub fn with_runtime(mut self, ms: Option<f64>) -> Self {
        self.runtime_ms = ms;
        self
    }

    /// Record for a computation that did not finish.
    pub fn aborted(name: impl Into<String>, citation: impl Into<String>, err: &CliError) -> Self {
        Record::new(name, citation, RecordStatus::Aborted).result(serde_json::json!({
            "error": err.to_string(),
            "resource": err.is_resource(),
        }))
    }
}

pub fn to_value(value: impl Serialize) -> Value {
    serde_json::to_value(value).expect("report values are plain data")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OverallVerdict {
    AllGreen,
    Mismatch,
    ResourceAbort,
    InputError,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Overall {
    pub verdict: OverallVerdict,
    /// Number of records with each status.
    pub counts: BTreeMap<RecordStatus, usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    pub input: Value,
    pub records: Vec<Record>,
    pub overall: Overall,
}

impl Report {
    /// Assembles a report; the overall verdict follows from the record statuses.
    pub fn new(command: impl Into<String>, input: Value, records: Vec<Record>) -> Self {
        let mut counts = BTreeMap::new();
        for r in &records {
            *counts.entry(r.status).or_insert(0) += 1;
        }
        let aborted: Vec<&Record> = records.iter().filter(|r| r.status == RecordStatus::Aborted).collect();
        let verdict = if aborted.iter().any(|r| r.result["resource"] == Value::Bool(true)) {
            OverallVerdict::ResourceAbort
        } else if !aborted.is_empty() {
            OverallVerdict::InputError
        } else if counts.contains_key(&RecordStatus::Mismatch) {
            OverallVerdict::Mismatch
        } else {
            OverallVerdict::AllGreen
        };
        Report {
            schema: SCHEMA.to_string(),
            command: command.into(),
            input,
            records,
            overall: Overall { verdict, counts },
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.overall.verdict {
            OverallVerdict::AllGreen => exit::ALL_GREEN,
            OverallVerdict::Mismatch => exit::MISMATCH,
            OverallVerdict::ResourceAbort => exit::RESOURCE,
            OverallVerdict::InputError => exit::INPUT,
        }
    }

    /// Pretty JSON with sorted object keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn record(&self, name: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.name == name)
    }
}

/// Optional wall-clock timing of report records.
#[derive(Clone, Copy, Debug, Default)]
pub struct Timer {
    pub enabled: bool,
}

impl Timer {
    pub fn time<T>(&self, f: impl FnOnce() -> T) -> (T, Option<f64>) {
        let start = Instant::now();
        let out = f();
        let ms = self.enabled.then(|| start.elapsed().as_secs_f64() * 1000.0);
        (out, ms)
    }
}
