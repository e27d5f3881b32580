use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use crate::graph::Graph;
use crate::verdicts::AnalysisReport;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT text for `g`. With a report, edges on exitless cycles get
/// `exitless_cycle=true` and vertices in nontrivial saturated hereditary
/// subsets get `saturated_hereditary="i,j"` listing those subsets (0-based,
/// in report order). A report with nothing to mark yields the plain output.
pub fn emit_dot(g: &Graph, report: Option<&AnalysisReport>) -> String {
    let mut exitless: BTreeSet<&str> = BTreeSet::new();
    let mut member_of: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    if let Some(r) = report {
        exitless.extend(r.exitless_cycles.iter().flatten().map(String::as_str));
        let nontrivial = r
            .saturated_hereditary
            .iter()
            .filter(|s| !s.is_empty() && s.len() != g.vertex_count());
        for (i, subset) in nontrivial.enumerate() {
            for v in subset {
                member_of.entry(v.as_str()).or_default().push(i);
            }
        }
    }

    let mut out = String::from("digraph G {\n");
    for v in g.vertex_ids() {
        let name = g.vertex_name(v);
        match member_of.get(name) {
            Some(ids) => {
                let list: Vec<String> = ids.iter().map(usize::to_string).collect();
                let _ = writeln!(
                    out,
                    "  {} [saturated_hereditary=\"{}\", style=filled, fillcolor=lightblue];",
                    quote(name),
                    list.join(",")
                );
            }
            None => {
                let _ = writeln!(out, "  {};", quote(name));
            }
        }
    }
    for e in g.edge_ids() {
        let name = g.edge_name(e);
        let extra = if exitless.contains(name) {
            ", exitless_cycle=true, color=red"
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "  {} -> {} [id={}, label={}{extra}];",
            quote(g.vertex_name(g.src(e))),
            quote(g.vertex_name(g.dst(e))),
            quote(name),
            quote(name)
        );
    }
    out.push_str("}\n");
    out
}
