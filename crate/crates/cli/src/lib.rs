//! Catalog, file formats, configuration and subcommands of the `bolkit`
//! command-line tool.

pub mod catalog;
pub mod commands;
pub mod config;
pub mod error;
pub mod io;
pub mod report;
pub mod search;
pub mod suites;

pub use error::{CliError, Outcome};
