//! Document format, Graphviz export and the `mbqc` command line for
//! `mbqc-core`.

pub mod cli;
pub mod document;
pub mod dot;

pub use document::{emit_document, parse_document, GraphDocument, Parsed};
pub use dot::{emit_dot, DotAnnotations};

#[derive(Debug, thiserror::Error)]
pub enum ToolError {
    #[error("syntax error: {0}")]
    Syntax(serde_json::Error),
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error(transparent)]
    Core(#[from] mbqc_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
