//! Command-line front end for the moment-map shell toolkit.
//!
//! Every command reads a TOML input, runs checks from `momentshell-core`
//! and returns a [`report::Report`] that serialises to canonical JSON.

pub mod commands;
pub mod corpus;
pub mod error;
pub mod pipeline;
pub mod report;
pub mod specfile;

pub use error::CliError;
pub use report::Report;
