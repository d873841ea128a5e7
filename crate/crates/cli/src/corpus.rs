//! The regression corpus: small modules with expected outcomes.

use std::collections::BTreeMap;

use momentshell_core::shell::moment_generators;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;
use crate::pipeline::{jet_section, module_criteria, shell_section, torus_section, Run, TorusQuery};
use crate::report::{to_value, Record, RecordStatus, Report, Timer};
use crate::specfile::ModuleSpecFile;

const CORPUS_TOML: &str = include_str!("../corpus/corpus.toml");

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Stated in the literature the corpus is drawn from.
    Published,
    /// Immediate from the definitions.
    Trivial,
    /// Computed by an independent route and frozen here.
    Derived,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    /// Fact key produced by the pipeline, such as `shell.dim`.
    pub check: String,
    pub value: toml::Value,
    pub provenance: Provenance,
    /// What the claim is and where it comes from, in words.
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub id: String,
    pub title: String,
    pub spec: ModuleSpecFile,
    pub expect: Vec<Expectation>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CorpusFile {
    entry: Vec<CorpusEntry>,
}

pub fn load_corpus() -> Vec<CorpusEntry> {
    let file: CorpusFile = toml::from_str(CORPUS_TOML).expect("the built-in corpus parses");
    file.entry
}

/// Entries with the given ids, in the given order; every entry when `ids` is empty.
pub fn select(ids: &[String]) -> Result<Vec<CorpusEntry>, CliError> {
    let all = load_corpus();
    if ids.is_empty() {
        return Ok(all);
    }
    ids.iter()
        .map(|id| {
            all.iter()
                .find(|e| e.id.eq_ignore_ascii_case(id))
                .cloned()
                .ok_or_else(|| CliError::UnknownEntry(id.clone()))
        })
        .collect()
}

/// Runs every section of the pipeline on one entry and returns the facts.
pub fn evaluate(entry: &CorpusEntry, timer: Timer) -> Result<Run, CliError> {
    let spec = &entry.spec;
    let e = spec.options.engine()?;
    let a = spec.action()?;
    let s = moment_generators(&a);
    let mut run = Run::new(timer);
    let facts = shell_section(&mut run, &s, e)?;
    jet_section(&mut run, &s, &spec.options.jet_levels, e)?;
    for q in [TorusQuery::M0, TorusQuery::Modularity, TorusQuery::Stability] {
        torus_section(&mut run, &a, q)?;
    }
    module_criteria(&mut run, spec, &s, &facts, e)?;
    Ok(run)
}

fn expected_json(v: &toml::Value) -> Value {
    to_value(v)
}

/// Comparison records for one entry, or an aborted record if the pipeline failed.
pub fn diff_entry(entry: &CorpusEntry, timer: Timer) -> Vec<Record> {
    let (run, ms) = timer.time(|| evaluate(entry, timer));
    let run = match run {
        Ok(run) => run,
        Err(err) => {
            return vec![Record::aborted(format!("{}.pipeline", entry.id), entry.title.clone(), &err).with_runtime(ms)];
        }
    };
    let mut records = Vec::with_capacity(entry.expect.len() + 1);
    for x in &entry.expect {
        let expected = expected_json(&x.value);
        let computed = run.facts.get(&x.check).cloned().unwrap_or(Value::Null);
        let status = if computed == expected {
            RecordStatus::Match
        } else {
            RecordStatus::Mismatch
        };
        records.push(
            Record::new(format!("{}.{}", entry.id, x.check), x.source.clone(), status)
                .input("expected", expected)
                .input("provenance", x.provenance)
                .result(computed),
        );
    }
    records.push(
        Record::new(format!("{}.facts", entry.id), entry.title.clone(), RecordStatus::Info)
            .result(&run.facts)
            .with_runtime(ms),
    );
    records
}

/// Runs the selected entries in parallel and reports them in corpus order.
pub fn cmd_corpus(ids: &[String], timer: Timer) -> Result<Report, CliError> {
    let entries = select(ids)?;
    let per_entry: Vec<Vec<Record>> = std::thread::scope(|scope| {
        let handles: Vec<_> = entries
            .iter()
            .map(|e| scope.spawn(move || diff_entry(e, timer)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("corpus worker panicked"))
            .collect()
    });
    let selected: Vec<&str> = entries.iter().map(|e| e.id.as_str()).collect();
    let input: BTreeMap<&str, Value> = BTreeMap::from([("entries", to_value(&selected))]);
    Ok(Report::new(
        "corpus",
        to_value(input),
        per_entry.into_iter().flatten().collect(),
    ))
}
