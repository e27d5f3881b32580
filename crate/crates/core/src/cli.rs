//! Command-line front end.
//!
//! Exit codes: 0 success, 1 parse or schema error (including bad command
//! lines), 2 semantic graph or argument error, 3 search bound or cap
//! exhausted, 4 internal invariant violation.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::conditions::{find_witness, WitnessRequest};
use crate::corr::VertexWeights;
use crate::cycles::simple_cycles;
use crate::error::Error;
use crate::graph::Graph;
use crate::ideals::{lattice, LatticeKind};
use crate::io::{emit_dot, parse, serialize_dsl, serialize_json, Format};
use crate::limits::Limits;
use crate::verdicts::{classify, AnalysisReport, SchweizerFailure, SchweizerStatus};

pub const EXIT_OK: u8 = 0;
pub const EXIT_PARSE: u8 = 1;
pub const EXIT_SEMANTIC: u8 = 2;
pub const EXIT_EXHAUSTED: u8 = 3;
pub const EXIT_INTERNAL: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "quiverlab",
    version,
    about = "Condition (L)/(S), periodicity and simplicity for finite graphs"
)]
struct Cli {
    #[command(flatten)]
    caps: Caps,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Caps {
    /// Largest vertex count for exhaustive lattice enumeration.
    #[arg(long, global = true, env = "QUIVERLAB_CAP_VERTICES")]
    cap_vertices: Option<usize>,
    /// Largest number of paths in one power graph.
    #[arg(long, global = true, env = "QUIVERLAB_CAP_PATHS")]
    cap_paths: Option<usize>,
    /// Largest number of simple cycles enumerated.
    #[arg(long, global = true, env = "QUIVERLAB_CAP_CYCLES")]
    cap_cycles: Option<usize>,
}

impl Caps {
    fn limits(&self) -> Limits {
        let d = Limits::default();
        Limits {
            vertices: self.cap_vertices.unwrap_or(d.vertices),
            paths: self.cap_paths.unwrap_or(d.paths),
            cycles: self.cap_cycles.unwrap_or(d.cycles),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Structured,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Hereditary,
    #[value(name = "satHer", alias = "saturated-hereditary")]
    SatHer,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full analysis report.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Power graph whose edges are the paths of length K.
    Power {
        file: PathBuf,
        #[arg(short = 'n', value_name = "K")]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Simple cycles with their exits.
    Cycles {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Hereditary or saturated hereditary vertex subsets.
    Ideals {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Search for a Condition (S) witness path.
    Witness {
        file: PathBuf,
        /// Vertex weights, `v=1.0,w=0.5`.
        #[arg(long, conflicts_with = "support", required_unless_present = "support")]
        weights: Option<String>,
        /// Indicator weights on these vertices, `v1,v2`.
        #[arg(long)]
        support: Option<String>,
        #[arg(long = "n")]
        n: usize,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        max_length: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Counterexample patterns and verdict summary.
    Classify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// DOT rendering; `--annotate` marks exitless cycles and invariant subsets.
    Dot {
        file: PathBuf,
        #[arg(long)]
        annotate: bool,
    },
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::LatticeCapExceeded { .. }
            | Error::PowerGraphTooLarge { .. }
            | Error::TooManyCycles { .. } => EXIT_EXHAUSTED,
            Error::InvariantViolation(_) => EXIT_INTERNAL,
            _ => EXIT_SEMANTIC,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn failure(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

/// Runs one command line. Output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn load(path: &PathBuf) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| failure(EXIT_PARSE, format!("{}: {e}", path.display())))?;
    let format = Format::detect(Some(path), &text);
    parse(&text, format).map_err(|e| {
        let code = if e.is_semantic() {
            EXIT_SEMANTIC
        } else {
            EXIT_PARSE
        };
        let lines: Vec<String> = e
            .diagnostics
            .iter()
            .map(|d| format!("{}:{d}", path.display()))
            .collect();
        failure(code, lines.join("\n"))
    })
}

fn write_out(out: &mut impl Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes())
        .map_err(|e| failure(EXIT_INTERNAL, format!("write failed: {e}")))
}

fn pretty(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn dispatch(cli: &Cli, out: &mut impl Write) -> Result<u8, Failure> {
    let limits = cli.caps.limits();
    match &cli.command {
        Command::Analyze { file, format } => {
            let g = load(file)?;
            let report = classify(&g, &limits)?;
            let text = match format {
                OutputFormat::Structured => pretty(&report),
                OutputFormat::Text => render_report(&report),
            };
            write_out(out, &text)?;
        }
        Command::Power { file, n, format } => {
            let g = load(file)?;
            let power = g.power_graph(*n, limits.paths)?.graph;
            let text = match format {
                OutputFormat::Structured => serialize_json(&power),
                OutputFormat::Text => {
                    serialize_dsl(&power).unwrap_or_else(|_| serialize_json(&power))
                }
            };
            write_out(out, &text)?;
        }
        Command::Cycles { file, format } => {
            let g = load(file)?;
            let cycles = simple_cycles(&g, limits.cycles)?;
            let rows = cycles
                .iter()
                .map(|c| {
                    let exits = crate::cycles::cycle_exits(&g, c)?;
                    Ok((c, exits))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            let text = match format {
                OutputFormat::Structured => pretty(
                    &rows
                        .iter()
                        .map(|(c, exits)| {
                            json!({
                                "base": g.vertex_name(c.source()),
                                "edges": c.edges().iter().map(|&e| g.edge_name(e)).collect::<Vec<_>>(),
                                "exits": exits.iter().map(|&e| g.edge_name(e)).collect::<Vec<_>>(),
                            })
                        })
                        .collect::<Vec<_>>(),
                ),
                OutputFormat::Text => rows
                    .iter()
                    .map(|(c, exits)| {
                        let exits: Vec<&str> = exits.iter().map(|&e| g.edge_name(e)).collect();
                        format!(
                            "{} base={} exits={}\n",
                            g.path_label(c),
                            g.vertex_name(c.source()),
                            if exits.is_empty() { "-".to_string() } else { exits.join(",") }
                        )
                    })
                    .collect(),
            };
            write_out(out, &text)?;
        }
        Command::Ideals { file, kind, format } => {
            let g = load(file)?;
            let kind = match kind {
                KindArg::Hereditary => LatticeKind::Hereditary,
                KindArg::SatHer => LatticeKind::SaturatedHereditary,
            };
            let l = lattice(&g, kind, limits.vertices)?;
            let sets: Vec<Vec<String>> = l.elements.iter().map(|s| g.subset_names(s)).collect();
            let text = match format {
                OutputFormat::Structured => pretty(&json!({
                    "kind": kind,
                    "trivial": l.is_trivial(),
                    "elements": sets,
                })),
                OutputFormat::Text => sets.iter().map(|s| format!("{}\n", braces(s))).collect(),
            };
            write_out(out, &text)?;
        }
        Command::Witness {
            file,
            weights,
            support,
            n,
            epsilon,
            max_length,
            format,
        } => {
            let g = load(file)?;
            let a = match (weights, support) {
                (Some(w), _) => VertexWeights::new(&g, parse_weights(&g, w)?)?,
                (None, Some(s)) => {
                    let names: Vec<&str> = split_list(s).collect();
                    VertexWeights::indicator(&g, &g.subset_by_names(&names)?)
                }
                (None, None) => unreachable!("clap requires one of --weights/--support"),
            };
            let req = WitnessRequest {
                a,
                n: *n,
                epsilon: *epsilon,
                max_length: *max_length,
            };
            let found = find_witness(&g, &req)?;
            let text = match (format, &found) {
                (OutputFormat::Structured, Some(w)) => pretty(&json!({
                    "found": true,
                    "m": w.m,
                    "path": w.alpha.edges().iter().map(|&e| g.edge_name(e)).collect::<Vec<_>>(),
                    "source": g.vertex_name(w.alpha.source()),
                })),
                (OutputFormat::Structured, None) => pretty(&json!({
                    "found": false,
                    "max_length": max_length,
                })),
                (OutputFormat::Text, Some(w)) => format!(
                    "m={} path={} source={}\n",
                    w.m,
                    g.path_label(&w.alpha),
                    g.vertex_name(w.alpha.source())
                ),
                (OutputFormat::Text, None) => {
                    format!("no witness up to length {max_length} (search bound exhausted)\n")
                }
            };
            write_out(out, &text)?;
            if found.is_none() {
                return Ok(EXIT_EXHAUSTED);
            }
        }
        Command::Classify { file, format } => {
            let g = load(file)?;
            let report = classify(&g, &limits)?;
            let text = match format {
                OutputFormat::Structured => pretty(&json!({
                    "simplicity": report.simplicity,
                    "counterexample_flags": report.counterexample_flags,
                    "flags": report.flags,
                })),
                OutputFormat::Text => {
                    let flags: Vec<String> =
                        report.counterexample_flags.iter().map(label).collect();
                    format!(
                        "simplicity: {}\ncounterexample flags: {}\n",
                        label(&report.simplicity),
                        if flags.is_empty() {
                            "-".to_string()
                        } else {
                            flags.join(", ")
                        }
                    )
                }
            };
            write_out(out, &text)?;
        }
        Command::Dot { file, annotate } => {
            let g = load(file)?;
            let report = if *annotate {
                Some(classify(&g, &limits)?)
            } else {
                None
            };
            write_out(out, &emit_dot(&g, report.as_ref()))?;
        }
    }
    Ok(EXIT_OK)
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty())
}

fn parse_weights(g: &Graph, spec: &str) -> Result<Vec<(crate::graph::VertexId, f64)>, Failure> {
    split_list(spec)
        .map(|item| {
            let (name, value) = item.split_once('=').ok_or_else(|| {
                failure(
                    EXIT_PARSE,
                    format!("weight `{item}` is not of the form v=value"),
                )
            })?;
            let value: f64 = value.trim().parse().map_err(|_| {
                failure(
                    EXIT_PARSE,
                    format!("weight `{item}` has a non-numeric value"),
                )
            })?;
            Ok((g.vertex(name.trim())?, value))
        })
        .collect()
}

fn braces(names: &[String]) -> String {
    format!("{{{}}}", names.join(","))
}

/// snake_case label of a serializable unit enum.
fn label(value: &impl serde::Serialize) -> String {
    match serde_json::to_value(value) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => String::new(),
    }
}

fn render_report(r: &AnalysisReport) -> String {
    let list = |items: &[String]| {
        if items.is_empty() {
            "-".to_string()
        } else {
            items.join(",")
        }
    };
    let lattice =
        |sets: &[Vec<String>]| sets.iter().map(|s| braces(s)).collect::<Vec<_>>().join(" ");
    let f = &r.flags;
    let mut s = String::new();
    s.push_str(&format!(
        "graph: {} vertices, {} edges\n",
        r.vertices, r.edges
    ));
    s.push_str(&format!("simplicity: {}\n", label(&r.simplicity)));
    let exitless: Vec<String> = r
        .exitless_cycles
        .iter()
        .map(|c| format!("({})", c.join(",")))
        .collect();
    s.push_str(&format!(
        "condition_l: {}{}\n",
        f.condition_l,
        if exitless.is_empty() {
            String::new()
        } else {
            format!(" (exitless cycles: {})", exitless.join(" "))
        }
    ));
    s.push_str(&format!(
        "condition_s: {} ({})\n",
        f.condition_s,
        label(&r.condition_s_reason)
    ));
    s.push_str(&match r.periodicity.minimal_period {
        Some(p) => format!("periodicity: periodic, minimal period {p}\n"),
        None => "periodicity: nonperiodic\n".to_string(),
    });
    s.push_str(&format!(
        "connectivity: weakly={} strongly={}\n",
        r.weakly_connected, r.strongly_connected
    ));
    s.push_str(&format!(
        "sinks: {}\nsources: {}\n",
        list(&r.sinks),
        list(&r.sources)
    ));
    s.push_str(&format!(
        "flags: finite={} unital={} full={} injective_left_action={}\n",
        f.finite, f.unital, f.full, f.injective_left_action
    ));
    s.push_str(&format!(
        "hereditary subsets: {}{}\n",
        lattice(&r.hereditary),
        if f.trivial_hereditary {
            " (trivial)"
        } else {
            ""
        }
    ));
    s.push_str(&format!(
        "saturated hereditary subsets: {}{}\n",
        lattice(&r.saturated_hereditary),
        if f.trivial_saturated_hereditary {
            " (trivial)"
        } else {
            ""
        }
    ));
    let schweizer = match &r.schweizer.hypotheses {
        SchweizerStatus::HypothesesHold => format!(
            "hypotheses hold, predicted {}",
            r.schweizer
                .predicted
                .as_ref()
                .map(label)
                .unwrap_or_default()
        ),
        SchweizerStatus::HypothesesFail(failures) => {
            let parts: Vec<String> = failures
                .iter()
                .map(|f| match f {
                    SchweizerFailure::Sources(v) => format!("sources {}", v.join(",")),
                    SchweizerFailure::Sinks(v) => format!("sinks {}", v.join(",")),
                })
                .collect();
            format!("hypotheses fail ({})", parts.join("; "))
        }
    };
    s.push_str(&format!("nonperiodicity criterion: {schweizer}\n"));
    let flags: Vec<String> = r.counterexample_flags.iter().map(label).collect();
    s.push_str(&format!("counterexample flags: {}\n", list(&flags)));
    let cites: Vec<String> = r.citations.iter().map(label).collect();
    s.push_str(&format!("citations: {}\n", list(&cites)));
    let checks: Vec<String> = r
        .oracle_checks
        .iter()
        .map(|c| {
            format!(
                "{}={}",
                c.name,
                match &c.status {
                    crate::verdicts::OracleStatus::Agreed => "agreed".to_string(),
                    crate::verdicts::OracleStatus::Skipped(why) => format!("skipped ({why})"),
                }
            )
        })
        .collect();
    s.push_str(&format!("oracle checks: {}\n", list(&checks)));
    s
}
