//! Text formats and command implementations behind the `polydep` binary:
//! the graph-file grammar, the query grammar, statement/trace rendering and
//! parsing, JSON document types, and the command runners.

pub mod app;
pub mod format;
pub mod graph_file;
pub mod json;
pub mod query;
pub mod selftest;

use thiserror::Error;

/// A text-format error with its 1-based location.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}
