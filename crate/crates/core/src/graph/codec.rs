//! Text encodings: graph6, the JSON graph document, and Graphviz DOT.
//!
//! JSON output is bit-exact: edges are written `[u, v]` with `u < v` in
//! lexicographic order and roles are keyed in sorted order.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{build_graph, Graph, GraphError, RoleMap};
use crate::coloring::{Color, EdgeColoring};

/// Largest vertex count accepted by the graph6 codec (single-byte header).
pub const GRAPH6_MAX_VERTICES: usize = 62;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("byte {offset}: {message}")]
    Malformed { offset: usize, message: String },
    #[error("graph6 is limited to {GRAPH6_MAX_VERTICES} vertices, got {0}")]
    TooLarge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn malformed(offset: usize, message: impl Into<String>) -> CodecError {
    CodecError::Malformed {
        offset,
        message: message.into(),
    }
}

/// Encodes the vertex count and edge set; roles are not representable.
pub fn to_graph6(g: &Graph) -> Result<String, CodecError> {
    let n = g.n();
    if n > GRAPH6_MAX_VERTICES {
        return Err(CodecError::TooLarge(n));
    }
    let mut out = String::with_capacity(1 + (n * n).div_ceil(12));
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    Ok(out)
}

pub fn from_graph6(text: &str) -> Result<Graph, CodecError> {
    let trimmed = text.trim_end();
    let (body, base) = match trimmed.strip_prefix(">>graph6<<") {
        Some(rest) => (rest.as_bytes(), 10),
        None => (trimmed.as_bytes(), 0),
    };
    let Some(&first) = body.first() else {
        return Err(malformed(base, "empty graph6 string"));
    };
    if first == 126 {
        return Err(malformed(base, "multi-byte vertex counts (n > 62) are not supported"));
    }
    if !(63..=125).contains(&first) {
        return Err(malformed(base, format!("invalid vertex-count byte {first:#04x}")));
    }
    let n = (first - 63) as usize;
    let bits_needed = n * n.saturating_sub(1) / 2;
    let expected = bits_needed.div_ceil(6);
    let data = &body[1..];
    if let Some(pos) = data.iter().position(|b| !(63..=126).contains(b)) {
        return Err(malformed(base + 1 + pos, format!("byte {:#04x} outside graph6 range", data[pos])));
    }
    if data.len() != expected {
        return Err(malformed(
            base + 1 + data.len().min(expected),
            format!("expected {expected} data bytes for {n} vertices, found {}", data.len()),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    roles: RoleMap,
}

pub fn to_json(g: &Graph) -> String {
    let doc = GraphDoc {
        n: g.n(),
        edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        roles: g.roles().clone(),
    };
    serde_json::to_string(&doc).expect("graph documents always serialise")
}

pub fn from_json(text: &str) -> Result<Graph, CodecError> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| json_error(text, &e))?;
    let edges: Vec<(usize, usize)> = doc.edges.iter().map(|&[u, v]| (u, v)).collect();
    Ok(build_graph(doc.n, &edges, Some(doc.roles))?)
}

/// Converts serde_json's line/column position into a byte offset.
pub(crate) fn json_error(text: &str, e: &serde_json::Error) -> CodecError {
    let offset = text
        .split_inclusive('\n')
        .take(e.line().saturating_sub(1))
        .map(str::len)
        .sum::<usize>()
        + e.column().saturating_sub(1);
    malformed(offset, e.to_string())
}

/// Graphviz output. Edges carry `color=red|blue` when a colouring is given;
/// each role is drawn as a labelled box around the vertices not already boxed
/// by an earlier role (DOT clusters cannot overlap).
pub fn to_dot(g: &Graph, coloring: Option<&EdgeColoring>) -> String {
    let mut out = String::from("graph G {\n  node [shape=circle];\n");
    let mut boxed = vec![false; g.n()];
    for (i, (name, vs)) in g.roles().iter().enumerate() {
        let fresh: Vec<usize> = vs.iter().copied().filter(|&v| !boxed[v]).collect();
        if fresh.is_empty() {
            continue;
        }
        let _ = writeln!(out, "  subgraph cluster_{i} {{\n    label={name:?};\n    style=rounded;");
        for v in fresh {
            boxed[v] = true;
            let _ = writeln!(out, "    {v};");
        }
        out.push_str("  }\n");
    }
    for v in (0..g.n()).filter(|&v| !boxed[v]) {
        let _ = writeln!(out, "  {v};");
    }
    for (u, v) in g.edges() {
        match coloring.and_then(|c| c.color(u, v)) {
            Some(Color::Red) => {
                let _ = writeln!(out, "  {u} -- {v} [color=red];");
            }
            Some(Color::Blue) => {
                let _ = writeln!(out, "  {u} -- {v} [color=blue, style=dashed];");
            }
            None => {
                let _ = writeln!(out, "  {u} -- {v};");
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Decoder written straight from the format description, kept separate
    /// from `from_graph6`.
    fn reference_decode(s: &str) -> (usize, Vec<(usize, usize)>) {
        let bytes = s.as_bytes();
        let n = (bytes[0] - 63) as usize;
        let mut bitstream = Vec::new();
        for &b in &bytes[1..] {
            for shift in (0..6).rev() {
                bitstream.push(((b - 63) >> shift) & 1);
            }
        }
        let mut edges = Vec::new();
        let mut k = 0;
        for j in 0..n {
            for i in 0..j {
                if bitstream[k] == 1 {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        edges.sort();
        (n, edges)
    }

    #[test]
    fn triangle_is_bw() {
        let s = to_graph6(&Graph::complete(3)).unwrap();
        assert_eq!(s, "Bw");
        assert_eq!(reference_decode(&s), (3, vec![(0, 1), (0, 2), (1, 2)]));
        assert_eq!(from_graph6("Bw").unwrap(), Graph::complete(3));
    }

    #[test]
    fn known_five_vertex_string() {
        // A-C, A-E, B-D, D-E encodes as "DQc".
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g).unwrap(), "DQc");
        assert_eq!(reference_decode("DQc").1, g.edges());
    }

    #[test]
    fn header_and_newline_accepted() {
        assert_eq!(from_graph6(">>graph6<<Bw\n").unwrap(), Graph::complete(3));
    }

    #[test]
    fn malformed_inputs_report_offsets() {
        match from_graph6("not-a-graph6") {
            Err(CodecError::Malformed { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(from_graph6(""), Err(CodecError::Malformed { offset: 0, .. })));
        assert!(matches!(from_graph6("Bww"), Err(CodecError::Malformed { .. })));
        assert!(matches!(from_graph6("~??"), Err(CodecError::Malformed { .. })));
    }

    #[test]
    fn too_large_for_graph6() {
        assert_eq!(to_graph6(&Graph::empty(63)), Err(CodecError::TooLarge(63)));
        assert!(to_graph6(&Graph::empty(62)).is_ok());
        assert_eq!(to_graph6(&Graph::empty(0)).unwrap(), "?");
    }

    #[test]
    fn json_is_sorted_and_keeps_roles() {
        let g = Graph::cycle(5).with_role("S", vec![4, 0]).unwrap();
        let text = to_json(&g);
        assert_eq!(
            text,
            r#"{"n":5,"edges":[[0,1],[0,4],[1,2],[2,3],[3,4]],"roles":{"S":[4,0]}}"#
        );
        assert_eq!(from_json(&text).unwrap(), g);
    }

    #[test]
    fn json_errors() {
        let err = from_json("{\"n\": 2,\n \"edges\": [[0, 0]]}").unwrap_err();
        assert_eq!(err, CodecError::Graph(GraphError::SelfLoop(0)));
        let text = "{\"n\": 2,\n \"edges\": [[0 1]]}";
        match from_json(text) {
            // Points at the `1` that should have been a comma.
            Err(CodecError::Malformed { offset, .. }) => assert_eq!(&text[offset..offset + 1], "1"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dot_output_mentions_colours_and_roles() {
        let g = Graph::complete(3).with_role("T_1", vec![0, 1]).unwrap();
        let c = EdgeColoring::from_fn(&g, |(u, _)| if u == 0 { Color::Red } else { Color::Blue });
        let dot = to_dot(&g, Some(&c));
        assert!(dot.contains("0 -- 1 [color=red]"));
        assert!(dot.contains("1 -- 2 [color=blue"));
        assert!(dot.contains("label=\"T_1\""));
    }
}
