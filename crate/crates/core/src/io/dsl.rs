//! Line-oriented graph DSL.
//!
//! ```text
//! # comment
//! vertex u
//! vertex w
//! edge b u w
//! edge c w w
//! ```
//!
//! Declaration order fixes vertex and edge order. An edge may only mention
//! vertices declared on earlier lines.

use std::collections::HashSet;

use super::{Diagnostic, DiagnosticKind, Location, ParseError, UnrepresentableId};
use crate::graph::{EdgeSpec, Graph, GraphSpec};

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let body = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body
        .char_indices()
        .chain(std::iter::once((body.len(), ' ')))
    {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &body[s..i],
                    column: body[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

pub fn parse_dsl(text: &str) -> Result<Graph, ParseError> {
    let mut spec = GraphSpec::default();
    let mut diagnostics = Vec::new();
    let mut vertices = HashSet::new();
    let mut edges = HashSet::new();
    let mut report = |kind, line: usize, column: usize, message: String| {
        diagnostics.push(Diagnostic {
            kind,
            location: Location::Text { line, column },
            message,
        })
    };

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = tokens(raw);
        let Some(keyword) = toks.first() else {
            continue;
        };
        let arity = match keyword.text {
            "vertex" => 2,
            "edge" => 4,
            other => {
                report(
                    DiagnosticKind::Syntax,
                    line,
                    keyword.column,
                    format!("unknown keyword `{other}`, expected `vertex` or `edge`"),
                );
                continue;
            }
        };
        if toks.len() != arity {
            let column = toks
                .get(arity)
                .map(|t| t.column)
                .unwrap_or_else(|| raw.split('#').next().unwrap_or("").chars().count() + 1);
            report(
                DiagnosticKind::Syntax,
                line,
                column,
                format!(
                    "`{}` takes {} argument{}, found {}",
                    keyword.text,
                    arity - 1,
                    if arity == 2 { "" } else { "s" },
                    toks.len() - 1
                ),
            );
            continue;
        }
        if arity == 2 {
            let id = &toks[1];
            if vertices.insert(id.text) {
                spec.vertices.push(id.text.to_string());
            } else {
                report(
                    DiagnosticKind::Semantic,
                    line,
                    id.column,
                    format!("duplicate id: vertex `{}`", id.text),
                );
            }
            continue;
        }
        let (id, src, dst) = (&toks[1], &toks[2], &toks[3]);
        let mut ok = true;
        if !edges.insert(id.text) {
            report(
                DiagnosticKind::Semantic,
                line,
                id.column,
                format!("duplicate id: edge `{}`", id.text),
            );
            ok = false;
        }
        for end in [src, dst] {
            if !vertices.contains(end.text) {
                report(
                    DiagnosticKind::Semantic,
                    line,
                    end.column,
                    format!("undeclared vertex {}", end.text),
                );
                ok = false;
            }
        }
        if ok {
            spec.edges.push(EdgeSpec::new(id.text, src.text, dst.text));
        }
    }
    if !diagnostics.is_empty() {
        return Err(ParseError { diagnostics });
    }
    Ok(Graph::from_spec(&spec).expect("DSL checks cover every graph invariant"))
}

fn representable(id: &str) -> Result<&str, UnrepresentableId> {
    if id.is_empty() || id.contains('#') || id.chars().any(char::is_whitespace) {
        Err(UnrepresentableId(id.to_string()))
    } else {
        Ok(id)
    }
}

/// Writes `g` in the DSL; parsing the result gives back an equal graph.
pub fn serialize_dsl(g: &Graph) -> Result<String, UnrepresentableId> {
    let mut out = String::new();
    for v in g.vertex_ids() {
        out.push_str(&format!("vertex {}\n", representable(g.vertex_name(v))?));
    }
    for e in g.edge_ids() {
        out.push_str(&format!(
            "edge {} {} {}\n",
            representable(g.edge_name(e))?,
            g.vertex_name(g.src(e)),
            g.vertex_name(g.dst(e))
        ));
    }
    Ok(out)
}
