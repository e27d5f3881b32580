//! Graph documents: the line-oriented DSL, the JSON format and DOT output.

mod dot;
mod dsl;
mod json;

use std::fmt;
use std::path::Path as FsPath;

pub use dot::emit_dot;
pub use dsl::{parse_dsl, serialize_dsl};
pub use json::{parse_json, serialize_json};

use crate::graph::Graph;

/// Where a diagnostic points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Location {
    /// 1-based line and column in a text document.
    Text { line: usize, column: usize },
    /// JSON path such as `$.edges[2].src`.
    Field(String),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Text { line, column } => write!(f, "{line}:{column}"),
            Location::Field(path) => f.write_str(path),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum DiagnosticKind {
    /// Malformed text or JSON.
    Syntax,
    /// Well-formed JSON of the wrong shape.
    Schema,
    /// Duplicate ids and dangling or undeclared endpoints.
    Semantic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub location: Location,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            DiagnosticKind::Syntax => "syntax error",
            DiagnosticKind::Schema => "schema error",
            DiagnosticKind::Semantic => "semantic error",
        };
        write!(f, "{}: {kind}: {}", self.location, self.message)
    }
}

/// One or more located diagnostics. Never empty.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub diagnostics: Vec<Diagnostic>,
}

impl ParseError {
    pub(crate) fn single(
        kind: DiagnosticKind,
        location: Location,
        message: impl Into<String>,
    ) -> Self {
        Self {
            diagnostics: vec![Diagnostic {
                kind,
                location,
                message: message.into(),
            }],
        }
    }

    /// True when every diagnostic is semantic, i.e. the document itself was
    /// well formed.
    pub fn is_semantic(&self) -> bool {
        self.diagnostics
            .iter()
            .all(|d| d.kind == DiagnosticKind::Semantic)
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.diagnostics.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Format {
    Dsl,
    Json,
}

impl Format {
    /// `.json` files, or text whose first non-blank character is `{`, are JSON.
    pub fn detect(path: Option<&FsPath>, text: &str) -> Format {
        let by_ext = path
            .and_then(|p| p.extension())
            .is_some_and(|e| e.eq_ignore_ascii_case("json"));
        if by_ext || text.trim_start().starts_with('{') {
            Format::Json
        } else {
            Format::Dsl
        }
    }
}

pub fn parse(text: &str, format: Format) -> Result<Graph, ParseError> {
    match format {
        Format::Dsl => parse_dsl(text),
        Format::Json => parse_json(text),
    }
}

/// Raised when a graph id cannot be written in the DSL.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("id `{0}` cannot be written in the DSL (empty, whitespace or `#`)")]
pub struct UnrepresentableId(pub String);
