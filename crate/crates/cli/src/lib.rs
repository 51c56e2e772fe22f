//! File formats and command implementations for the `brandt` binary.

pub mod commands;
pub mod document;
pub mod error;

pub use document::Document;
pub use error::CliError;
