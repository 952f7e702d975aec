//! Library side of the `horocalc` command: document parsing and command execution.

pub mod document;
pub mod report;

pub use document::{parse, render, to_document, Diagnostic, InputDocument, Parsed};
pub use report::{run, Command, Options, Outcome, Var};
