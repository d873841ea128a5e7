use momentshell_core::criteria::CriteriaError;
use momentshell_core::jetcheck::JetError;
use momentshell_core::repmodel::ModelError;
use momentshell_core::repvar::RepVarError;
use momentshell_core::torus::TorusError;
use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const ALL_GREEN: i32 = 0;
    pub const MISMATCH: i32 = 1;
    pub const RESOURCE: i32 = 2;
    pub const INPUT: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid input in {path}: {message}")]
    Parse { path: String, message: String },
    #[error("{0}")]
    Input(String),
    #[error("unknown corpus id `{0}`")]
    UnknownEntry(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
    #[error(transparent)]
    RepVar(#[from] RepVarError),
    #[error("cannot write report: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    pub fn is_resource(&self) -> bool {
        matches!(self, CliError::Jet(e) if e.is_resource())
    }

    pub fn exit_code(&self) -> i32 {
        if self.is_resource() {
            exit::RESOURCE
        } else {
            exit::INPUT
        }
    }
}
