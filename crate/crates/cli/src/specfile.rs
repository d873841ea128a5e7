//! Input files: module specs and slice-quantity files, both TOML.

use std::path::Path;

use momentshell_core::algebra::{GroebnerBudget, MonomialOrder};
use momentshell_core::criteria::SliceQuantities;
use momentshell_core::jetcheck::{Engine, Stratum};
use momentshell_core::repmodel::{build_action, GroupDescriptor, ModuleDescriptor, RepAction};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const MAX_PAIRS_VAR: &str = "MOMENTSHELL_MAX_PAIRS";
pub const MAX_TERMS_VAR: &str = "MOMENTSHELL_MAX_TERMS";

pub const DEFAULT_SEED: u64 = 2024;

/// Run options shared by every command reading a module spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Options {
    pub order: MonomialOrder,
    /// Jet levels for the Mustață inequality.
    pub jet_levels: Vec<usize>,
    pub max_pairs: usize,
    pub max_terms: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        let budget = GroebnerBudget::default();
        Options {
            order: MonomialOrder::default(),
            jet_levels: vec![1, 2],
            max_pairs: budget.max_pairs,
            max_terms: budget.max_terms,
            seed: DEFAULT_SEED,
        }
    }
}

impl Options {
    /// The engine for this run, with budget overrides from the environment applied.
    pub fn engine(&self) -> Result<Engine, CliError> {
        let max_pairs = env_override(MAX_PAIRS_VAR)?.unwrap_or(self.max_pairs);
        let max_terms = env_override(MAX_TERMS_VAR)?.unwrap_or(self.max_terms);
        Ok(Engine {
            order: self.order,
            budget: GroebnerBudget { max_pairs, max_terms },
        })
    }
}

fn env_override(name: &str) -> Result<Option<usize>, CliError> {
    match std::env::var(name) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Input(format!("{name} must be a non-negative integer, got `{v}`"))),
        Err(_) => Ok(None),
    }
}

/// Strata of arcs for the codimension route, attached to one slice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodimInput {
    /// Label of the slice the strata belong to.
    pub slice: String,
    pub dim_g: usize,
    pub level: usize,
    pub strata: Vec<Stratum>,
}

/// A group, a module, run options, and optional slice data for non-torus groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpecFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub group: GroupDescriptor,
    pub module: ModuleDescriptor,
    #[serde(default)]
    pub options: Options,
    /// Slices that cannot be computed from torus weights, such as the origin slice of a simple group.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub slices: Vec<SliceQuantities>,
    /// Whether the shell has finite principal isotropy, for groups where it is not computed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fpig: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub codim: Vec<CodimInput>,
}

impl ModuleSpecFile {
    pub fn action(&self) -> Result<RepAction, CliError> {
        Ok(build_action(&self.group, &self.module)?)
    }
}

/// Slice quantities given directly, for the criteria command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceFile {
    pub slices: Vec<SliceQuantities>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub codim: Vec<CodimInput>,
}

/// Either kind of input accepted by the criteria command.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CriteriaInput {
    Module(Box<ModuleSpecFile>),
    Slices(SliceFile),
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T, CliError> {
    toml::from_str(text).map_err(|e| CliError::Parse {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn load_module_spec(path: &Path) -> Result<ModuleSpecFile, CliError> {
    let spec: ModuleSpecFile = parse(path, &read(path)?)?;
    spec.action()?;
    Ok(spec)
}

/// A module spec if the file has a `group` table, otherwise a slice file.
pub fn load_criteria_input(path: &Path) -> Result<CriteriaInput, CliError> {
    let text = read(path)?;
    let table: toml::Table = parse(path, &text)?;
    if table.contains_key("group") {
        let spec: ModuleSpecFile = parse(path, &text)?;
        spec.action()?;
        Ok(CriteriaInput::Module(Box::new(spec)))
    } else {
        Ok(CriteriaInput::Slices(parse(path, &text)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_spec_parses_with_defaults() {
        let spec: ModuleSpecFile = toml::from_str(
            r#"
            [group]
            factors = [{ family = "sl", n = 2 }]
            [[module.summands]]
            irrep = { kind = "standard" }
            multiplicity = 3
            "#,
        )
        .unwrap();
        assert_eq!(spec.group, GroupDescriptor::sl(2));
        assert_eq!(spec.module.summands[0].multiplicity, 3);
        assert_eq!(spec.options, Options::default());
        assert_eq!(spec.action().unwrap().dim_v, 6);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let bad = r#"
            [group]
            factors = [{ family = "sl", n = 2 }]
            [[module.summands]]
            irrep = { kind = "standard" }
            multiplicty = 3
            "#;
        assert!(toml::from_str::<ModuleSpecFile>(bad).is_err());
        let bad_options = r#"
            [group]
            factors = [{ family = "torus", rank = 1 }]
            [[module.summands]]
            irrep = { kind = "weights", weights = [[1], [-1]] }
            [options]
            levels = [1]
            "#;
        assert!(toml::from_str::<ModuleSpecFile>(bad_options).is_err());
    }
}
