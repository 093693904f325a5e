//! Graph arguments, file formats and output placement.

use std::fs;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use ramsey_forge::graph::codec::{self, CodecError};
use ramsey_forge::{EdgeColoring, Graph};
use serde_json::Value;

use crate::commands::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Graph6,
    Json,
    Dot,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Graph6 => "g6",
            Format::Json => "json",
            Format::Dot => "dot",
        }
    }

    pub fn infer(path: &Path) -> Option<Format> {
        match path.extension()?.to_str()? {
            "g6" | "graph6" => Some(Format::Graph6),
            "json" => Some(Format::Json),
            "dot" | "gv" => Some(Format::Dot),
            _ => None,
        }
    }
}

/// A graph argument: an existing file (graph6, one graph per line, or a JSON
/// graph document), else a name `kN`, `cN`, `pN`, `starN`, `kA,B` or
/// `petersen`.
pub fn load_graphs(spec: &str) -> Result<Vec<Graph>, CliError> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = read(path)?;
        return parse_graphs(&text).map_err(|e| CliError::Usage(format!("{spec}: {e}")));
    }
    named(spec).map(|g| vec![g]).ok_or_else(|| {
        CliError::Usage(format!(
            "{spec}: no such file, and not a named graph (kN, cN, pN, starN, kA,B, petersen)"
        ))
    })
}

pub fn load_graph(spec: &str) -> Result<Graph, CliError> {
    let mut all = load_graphs(spec)?;
    match all.len() {
        1 => Ok(all.pop().expect("one graph")),
        0 => Err(CliError::Usage(format!("{spec}: no graph found"))),
        k => Err(CliError::Usage(format!("{spec}: expected one graph, found {k}"))),
    }
}

fn parse_graphs(text: &str) -> Result<Vec<Graph>, CodecError> {
    if text.trim_start().starts_with('{') {
        return Ok(vec![codec::from_json(text)?]);
    }
    text.lines()
        .map(str::trim)
        .map(|l| l.strip_prefix(">>graph6<<").unwrap_or(l))
        .filter(|l| !l.is_empty())
        .map(codec::from_graph6)
        .collect()
}

fn named(spec: &str) -> Option<Graph> {
    let s = spec.to_ascii_lowercase();
    if s == "petersen" {
        return Some(Graph::petersen());
    }
    let at = s.find(|c: char| c.is_ascii_digit())?;
    let (kind, rest) = s.split_at(at);
    if kind == "k" {
        if let Some((a, b)) = rest.split_once(',') {
            return Some(Graph::complete_bipartite(a.parse().ok()?, b.parse().ok()?));
        }
    }
    let n: usize = rest.parse().ok()?;
    if n > 4096 {
        return None;
    }
    match kind {
        "k" => Some(Graph::complete(n)),
        "c" if n >= 3 => Some(Graph::cycle(n)),
        "p" if n >= 1 => Some(Graph::path(n)),
        "star" => Some(Graph::star(n)),
        _ => None,
    }
}

pub fn load_coloring(path: &Path, host: &Graph) -> Result<EdgeColoring, CliError> {
    let text = read(path)?;
    EdgeColoring::from_json(&text, host).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn render_graph(g: &Graph, coloring: Option<&EdgeColoring>, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Graph6 => codec::to_graph6(g)? + "\n",
        Format::Json => codec::to_json(g) + "\n",
        Format::Dot => codec::to_dot(g, coloring),
    })
}

pub fn graph_value(g: &Graph) -> Value {
    serde_json::from_str(&codec::to_json(g)).expect("graph JSON parses")
}

pub fn coloring_value(c: &EdgeColoring) -> Value {
    serde_json::from_str(&c.to_json()).expect("colouring JSON parses")
}

/// `dir/stem.tag.ext` next to `path`.
pub fn sibling(path: &Path, tag: &str, ext: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    path.with_file_name(format!("{stem}.{tag}.{ext}"))
}
