//! JSON graph documents:
//!
//! ```json
//! {
//!   "vertices": ["u", "w"],
//!   "edges": [{ "id": "b", "src": "u", "dst": "w" }]
//! }
//! ```
//!
//! `src` is the source `s(e)` and `dst` the range `r(e)`. Unknown fields are
//! schema errors.

use serde_json::{Map, Value};

use super::{Diagnostic, DiagnosticKind, Location, ParseError};
use crate::error::Error;
use crate::graph::{EdgeSpec, Endpoint, Graph, GraphSpec, Violation};

fn schema(path: impl Into<String>, message: impl Into<String>) -> Diagnostic {
    Diagnostic {
        kind: DiagnosticKind::Schema,
        location: Location::Field(path.into()),
        message: message.into(),
    }
}

fn check_keys(obj: &Map<String, Value>, path: &str, allowed: &[&str], out: &mut Vec<Diagnostic>) {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            out.push(schema(
                format!("{path}.{key}"),
                format!("unknown field `{key}`"),
            ));
        }
    }
    for key in allowed {
        if !obj.contains_key(*key) {
            out.push(schema(
                format!("{path}.{key}"),
                format!("missing field `{key}`"),
            ));
        }
    }
}

fn string_at(value: Option<&Value>, path: &str, out: &mut Vec<Diagnostic>) -> Option<String> {
    match value? {
        Value::String(s) => Some(s.clone()),
        _ => {
            out.push(schema(path, "expected a string"));
            None
        }
    }
}

fn array_at<'a>(value: Option<&'a Value>, path: &str, out: &mut Vec<Diagnostic>) -> &'a [Value] {
    match value {
        Some(Value::Array(items)) => items,
        Some(_) => {
            out.push(schema(path, "expected an array"));
            &[]
        }
        None => &[],
    }
}

pub fn parse_json(text: &str) -> Result<Graph, ParseError> {
    let root: Value = serde_json::from_str(text).map_err(|e| {
        ParseError::single(
            DiagnosticKind::Syntax,
            Location::Text {
                line: e.line(),
                column: e.column().max(1),
            },
            e.to_string(),
        )
    })?;
    let Value::Object(obj) = &root else {
        return Err(ParseError::single(
            DiagnosticKind::Schema,
            Location::Field("$".into()),
            "expected an object with `vertices` and `edges`",
        ));
    };
    let mut diagnostics = Vec::new();
    check_keys(obj, "$", &["vertices", "edges"], &mut diagnostics);

    let mut spec = GraphSpec::default();
    for (i, v) in array_at(obj.get("vertices"), "$.vertices", &mut diagnostics)
        .iter()
        .enumerate()
    {
        if let Some(s) = string_at(Some(v), &format!("$.vertices[{i}]"), &mut diagnostics) {
            spec.vertices.push(s);
        }
    }
    for (i, e) in array_at(obj.get("edges"), "$.edges", &mut diagnostics)
        .iter()
        .enumerate()
    {
        let path = format!("$.edges[{i}]");
        let Value::Object(fields) = e else {
            diagnostics.push(schema(
                path,
                "expected an object with `id`, `src` and `dst`",
            ));
            continue;
        };
        check_keys(fields, &path, &["id", "src", "dst"], &mut diagnostics);
        let id = string_at(fields.get("id"), &format!("{path}.id"), &mut diagnostics);
        let src = string_at(fields.get("src"), &format!("{path}.src"), &mut diagnostics);
        let dst = string_at(fields.get("dst"), &format!("{path}.dst"), &mut diagnostics);
        if let (Some(id), Some(src), Some(dst)) = (id, src, dst) {
            spec.edges.push(EdgeSpec::new(id, src, dst));
        }
    }
    if !diagnostics.is_empty() {
        return Err(ParseError { diagnostics });
    }

    Graph::from_spec(&spec).map_err(|err| match err {
        Error::InvalidGraph(report) => ParseError {
            diagnostics: report.violations.iter().map(semantic).collect(),
        },
        other => ParseError::single(
            DiagnosticKind::Semantic,
            Location::Field("$".into()),
            other.to_string(),
        ),
    })
}

fn semantic(v: &Violation) -> Diagnostic {
    let path = match v {
        Violation::DuplicateVertex { position, .. } => format!("$.vertices[{position}]"),
        Violation::DuplicateEdge { position, .. } => format!("$.edges[{position}].id"),
        Violation::DanglingEndpoint {
            position, endpoint, ..
        } => match endpoint {
            Endpoint::Src => format!("$.edges[{position}].src"),
            Endpoint::Dst => format!("$.edges[{position}].dst"),
        },
    };
    Diagnostic {
        kind: DiagnosticKind::Semantic,
        location: Location::Field(path),
        message: v.to_string(),
    }
}

/// Canonical document: two-space pretty printing with a trailing newline.
pub fn serialize_json(g: &Graph) -> String {
    let mut out = serde_json::to_string_pretty(&g.to_spec()).expect("graph specs always serialize");
    out.push('\n');
    out
}
