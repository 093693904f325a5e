//! Red/blue edge colourings, monochromatic-copy queries, colour patterns, and
//! the two ways of extending a colouring of `F - v` across the edges at `v`
//! without creating a monochromatic copy of the target.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::BitMatrix;
use crate::graph::{self, codec::CodecError, edge, Edge, Embedding, Graph, Matcher};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    #[serde(rename = "R")]
    Red,
    #[serde(rename = "B")]
    Blue,
}

impl Color {
    pub const BOTH: [Color; 2] = [Color::Red, Color::Blue];

    #[inline]
    pub fn flip(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("edge ({0}, {1}) is not in the host graph")]
    UnknownEdge(usize, usize),
    #[error("edge ({0}, {1}) of the host graph has no colour")]
    MissingEdge(usize, usize),
    #[error("colouring is over {found} vertices, host has {expected}")]
    VertexCountMismatch { expected: usize, found: usize },
    #[error("vertex {observer} is not adjacent to {target}")]
    NotAdjacent { observer: usize, target: usize },
    #[error("vertex {vertex} has degree {degree}, above the allowed {limit}")]
    DegreeTooLarge { vertex: usize, degree: usize, limit: usize },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error(transparent)]
    Codec(#[from] CodecError),
}

/// A total red/blue assignment to the edges of one host graph.
///
/// The colouring records the host's vertex count and edge set, so red and
/// blue subgraphs can be rebuilt from it alone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    n: usize,
    entries: Vec<(Edge, Color)>,
}

impl EdgeColoring {
    /// Colours every edge of `host` with `f(edge)`.
    pub fn from_fn(host: &Graph, mut f: impl FnMut(Edge) -> Color) -> Self {
        EdgeColoring {
            n: host.n(),
            entries: host.edges().into_iter().map(|e| (e, f(e))).collect(),
        }
    }

    pub fn monochromatic(host: &Graph, color: Color) -> Self {
        Self::from_fn(host, |_| color)
    }

    /// Builds a colouring from explicit entries, which must cover exactly the
    /// host's edges.
    pub fn from_entries(
        host: &Graph,
        entries: impl IntoIterator<Item = ((usize, usize), Color)>,
    ) -> Result<Self, ColoringError> {
        let mut list: Vec<(Edge, Color)> = Vec::new();
        for ((u, v), c) in entries {
            if !host.has_edge(u, v) {
                return Err(ColoringError::UnknownEdge(u, v));
            }
            list.push((edge(u, v), c));
        }
        list.sort_by_key(|&(e, _)| e);
        list.dedup_by_key(|&mut (e, _)| e);
        let coloring = EdgeColoring { n: host.n(), entries: list };
        coloring.check_host(host)?;
        Ok(coloring)
    }

    pub(crate) fn from_sorted_parts(n: usize, entries: Vec<(Edge, Color)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        EdgeColoring { n, entries }
    }

    /// Errors unless this colouring covers exactly the edges of `host`.
    pub fn check_host(&self, host: &Graph) -> Result<(), ColoringError> {
        if self.n != host.n() {
            return Err(ColoringError::VertexCountMismatch {
                expected: host.n(),
                found: self.n,
            });
        }
        let host_edges = host.edges();
        for &((u, v), _) in &self.entries {
            if !host.has_edge(u, v) {
                return Err(ColoringError::UnknownEdge(u, v));
            }
        }
        if host_edges.len() != self.entries.len() {
            let missing = host_edges
                .into_iter()
                .find(|e| self.color(e.0, e.1).is_none())
                .expect("fewer entries than edges");
            return Err(ColoringError::MissingEdge(missing.0, missing.1));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(Edge, Color)] {
        &self.entries
    }

    pub fn color(&self, u: usize, v: usize) -> Option<Color> {
        let e = edge(u, v);
        self.entries
            .binary_search_by_key(&e, |&(x, _)| x)
            .ok()
            .map(|i| self.entries[i].1)
    }

    /// The host graph the colouring is defined on.
    pub fn host(&self) -> Graph {
        Graph::from_edges(self.n, self.entries.iter().map(|&(e, _)| e)).expect("entries are valid edges")
    }

    /// All edges of one colour, as a graph on the host's vertex set.
    pub fn color_class(&self, color: Color) -> Graph {
        Graph::from_matrix(self.class_matrix(color))
    }

    pub(crate) fn class_matrix(&self, color: Color) -> BitMatrix {
        let mut m = BitMatrix::new(self.n);
        for &((u, v), c) in &self.entries {
            if c == color {
                m.insert(u, v);
            }
        }
        m
    }

    pub fn count(&self, color: Color) -> usize {
        self.entries.iter().filter(|&&(_, c)| c == color).count()
    }

    /// Restriction to the edges of `sub`, which must be a subgraph of the host
    /// on the same labels.
    pub fn restrict(&self, sub: &Graph) -> Result<EdgeColoring, ColoringError> {
        let entries = sub
            .edges()
            .into_iter()
            .map(|(u, v)| {
                self.color(u, v)
                    .map(|c| ((u, v), c))
                    .ok_or(ColoringError::UnknownEdge(u, v))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(EdgeColoring { n: sub.n(), entries })
    }

    /// Red and blue degree of `v`.
    pub fn color_degrees(&self, v: usize) -> (usize, usize) {
        let mut red = 0;
        let mut blue = 0;
        for &((a, b), c) in &self.entries {
            if a == v || b == v {
                match c {
                    Color::Red => red += 1,
                    Color::Blue => blue += 1,
                }
            }
        }
        (red, blue)
    }

    pub fn to_json(&self) -> String {
        let doc = ColoringDoc {
            edges: self.entries.iter().map(|&((u, v), c)| (u, v, c)).collect(),
        };
        serde_json::to_string(&doc).expect("colourings always serialise")
    }

    /// Parses the JSON colouring document and checks it against `host`.
    pub fn from_json(text: &str, host: &Graph) -> Result<Self, ColoringError> {
        let doc: ColoringDoc =
            serde_json::from_str(text).map_err(|e| graph::codec::json_error(text, &e))?;
        let mut seen = std::collections::BTreeSet::new();
        let mut entries = Vec::with_capacity(doc.edges.len());
        for (u, v, c) in doc.edges {
            if !seen.insert(edge(u, v)) {
                return Err(ColoringError::Codec(CodecError::Malformed {
                    offset: 0,
                    message: format!("edge ({u}, {v}) coloured twice"),
                }));
            }
            entries.push(((u, v), c));
        }
        Self::from_entries(host, entries)
    }
}

#[derive(Serialize, Deserialize)]
struct ColoringDoc {
    edges: Vec<(usize, usize, Color)>,
}

/// A monochromatic copy of the target found inside a colouring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoCopy {
    pub color: Color,
    pub embedding: Embedding,
}

/// Looks for a monochromatic copy of `h`, red class first.
pub fn monochromatic_copy(c: &EdgeColoring, h: &Graph) -> Option<MonoCopy> {
    let matcher = Matcher::new(h);
    Color::BOTH.into_iter().find_map(|color| {
        matcher.find(&c.class_matrix(color)).map(|map| MonoCopy {
            color,
            embedding: Embedding::new(map),
        })
    })
}

/// True iff neither colour class contains a copy of `h`.
pub fn is_mono_free(c: &EdgeColoring, h: &Graph) -> bool {
    monochromatic_copy(c, h).is_none()
}

pub fn swap_colors(c: &EdgeColoring) -> EdgeColoring {
    EdgeColoring {
        n: c.n,
        entries: c.entries.iter().map(|&(e, col)| (e, col.flip())).collect(),
    }
}

/// The colours of the edges from `observer` to each vertex of `targets`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColorPattern {
    pub observer: usize,
    pub targets: Vec<usize>,
    pub colors: Vec<Color>,
}

pub fn color_pattern(c: &EdgeColoring, v: usize, targets: &[usize]) -> Result<ColorPattern, ColoringError> {
    let colors = targets
        .iter()
        .map(|&w| {
            c.color(v, w).ok_or(ColoringError::NotAdjacent {
                observer: v,
                target: w,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ColorPattern {
        observer: v,
        targets: targets.to_vec(),
        colors,
    })
}

fn check_base(f: &Graph, v: usize, base: &EdgeColoring) -> Result<Vec<usize>, ColoringError> {
    if v >= f.n() {
        return Err(ColoringError::VertexOutOfRange(v));
    }
    base.check_host(&f.without_vertex_edges(v))?;
    Ok(f.neighbors(v).collect())
}

fn extend_with(base: &EdgeColoring, v: usize, at_v: impl IntoIterator<Item = (usize, Color)>) -> EdgeColoring {
    let mut entries = base.entries.clone();
    entries.extend(at_v.into_iter().map(|(w, c)| (edge(v, w), c)));
    entries.sort_by_key(|&(e, _)| e);
    EdgeColoring { n: base.n, entries }
}

/// Extends `base` (a colouring of `f` with the edges at `v` removed, same
/// labels) to `f` by splitting `N(v)` into a red part and a blue part of at
/// most `delta - 1` vertices each. The red part takes the smallest labels.
///
/// A vertex whose red and blue degrees are both below `delta` cannot lie in a
/// monochromatic copy of any graph with minimum degree `delta`.
pub fn extend_split(f: &Graph, v: usize, base: &EdgeColoring, delta: usize) -> Result<EdgeColoring, ColoringError> {
    let nbrs = check_base(f, v, base)?;
    let limit = (2 * delta).saturating_sub(2);
    if nbrs.len() > limit {
        return Err(ColoringError::DegreeTooLarge {
            vertex: v,
            degree: nbrs.len(),
            limit,
        });
    }
    let red_quota = delta.saturating_sub(1);
    Ok(extend_with(
        base,
        v,
        nbrs.iter()
            .enumerate()
            .map(|(i, &w)| (w, if i < red_quota { Color::Red } else { Color::Blue })),
    ))
}

/// Result of [`extend_packing`]: the extended colouring and the red `K_d`
/// packing inside `N(v)` that was coloured blue.
#[derive(Clone, Debug)]
pub struct PackingExtension {
    pub coloring: EdgeColoring,
    pub packing: Vec<Vec<usize>>,
}

/// Extends `base` to `f` for a vertex of degree below `d²`.
///
/// Greedily picks a maximal family of vertex-disjoint red `K_d`s inside
/// `S = N(v)` (candidates scanned as `d`-subsets of `S` in lexicographic
/// order), colours the edges from `v` to the packed vertices blue and every
/// other edge at `v` red. Afterwards the red neighbourhood of `v` holds no red
/// `K_d` (each one meets the packing) and the blue neighbourhood holds no blue
/// `K_d` (it is a union of at most `d - 1` red cliques, so any `d` of its
/// vertices put two in one clique).
pub fn extend_packing(f: &Graph, v: usize, base: &EdgeColoring, d: usize) -> Result<PackingExtension, ColoringError> {
    let nbrs = check_base(f, v, base)?;
    if nbrs.len() >= d * d {
        return Err(ColoringError::DegreeTooLarge {
            vertex: v,
            degree: nbrs.len(),
            limit: (d * d).saturating_sub(1),
        });
    }
    let red = base.color_class(Color::Red);
    let mut used = vec![false; f.n()];
    let mut packing = Vec::new();
    if d > 0 {
        for cand in graph::k_subsets(&nbrs, d) {
            if cand.iter().any(|&w| used[w]) || !red.is_clique(&cand) {
                continue;
            }
            for &w in &cand {
                used[w] = true;
            }
            packing.push(cand);
        }
    }
    debug_assert!(d == 0 || packing.len() < d);
    let coloring = extend_with(
        base,
        v,
        nbrs.iter()
            .map(|&w| (w, if used[w] { Color::Blue } else { Color::Red })),
    );
    Ok(PackingExtension { coloring, packing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::clique_number;

    fn neighbourhood_in_color(c: &EdgeColoring, f: &Graph, v: usize, color: Color) -> Vec<usize> {
        f.neighbors(v).filter(|&w| c.color(v, w) == Some(color)).collect()
    }

    #[test]
    fn mono_free_examples() {
        let k3 = Graph::complete(3);
        let red = EdgeColoring::monochromatic(&k3, Color::Red);
        let hit = monochromatic_copy(&red, &k3).unwrap();
        assert_eq!(hit.color, Color::Red);
        assert!(hit.embedding.is_valid(&k3, &red.color_class(Color::Red)));

        let mixed = EdgeColoring::from_fn(&k3, |e| if e == (0, 1) { Color::Red } else { Color::Blue });
        assert!(is_mono_free(&mixed, &k3));

        let c4 = Graph::cycle(4);
        let alternating = EdgeColoring::from_fn(&c4, |(u, v)| {
            if (u + v) % 4 == 1 { Color::Red } else { Color::Blue }
        });
        // Edges 01, 12, 23, 03 get R, B, R, B.
        assert_eq!(alternating.count(Color::Red), 2);
        assert!(is_mono_free(&alternating, &Graph::path(3)));
    }

    #[test]
    fn swap_examples() {
        let k3 = Graph::complete(3);
        let red = EdgeColoring::monochromatic(&k3, Color::Red);
        assert_eq!(swap_colors(&red), EdgeColoring::monochromatic(&k3, Color::Blue));
        assert_eq!(swap_colors(&swap_colors(&red)), red);
    }

    #[test]
    fn from_entries_validates_cover() {
        let p3 = Graph::path(3);
        assert_eq!(
            EdgeColoring::from_entries(&p3, [((0, 1), Color::Red)]),
            Err(ColoringError::MissingEdge(1, 2))
        );
        assert_eq!(
            EdgeColoring::from_entries(&p3, [((0, 2), Color::Red)]),
            Err(ColoringError::UnknownEdge(0, 2))
        );
    }

    #[test]
    fn json_round_trip() {
        let c5 = Graph::cycle(5);
        let c = EdgeColoring::from_fn(&c5, |(u, _)| if u % 2 == 0 { Color::Red } else { Color::Blue });
        let text = c.to_json();
        assert!(text.starts_with(r#"{"edges":[[0,1,"R"],[0,4,"R"],[1,2,"B"]"#));
        assert_eq!(EdgeColoring::from_json(&text, &c5).unwrap(), c);
        assert!(EdgeColoring::from_json(r#"{"edges":[[0,1,"R"]]}"#, &c5).is_err());
        assert!(EdgeColoring::from_json(r#"{"edges":[[0,1,"G"]]}"#, &c5).is_err());
    }

    #[test]
    fn color_pattern_examples() {
        let star = Graph::star(3);
        let red = EdgeColoring::monochromatic(&star, Color::Red);
        let p = color_pattern(&red, 0, &[1, 2, 3]).unwrap();
        assert_eq!(p.colors, vec![Color::Red; 3]);

        // Every colouring of the star realises one pattern; all 2^3 occur.
        let mut seen = std::collections::HashSet::new();
        for mask in 0..8u32 {
            let c = EdgeColoring::from_fn(&star, |(_, w)| {
                if mask >> (w - 1) & 1 == 1 { Color::Blue } else { Color::Red }
            });
            seen.insert(color_pattern(&c, 0, &[1, 2, 3]).unwrap().colors);
        }
        assert_eq!(seen.len(), 1 << 3);

        let p3 = Graph::path(3);
        let c = EdgeColoring::monochromatic(&p3, Color::Red);
        assert_eq!(
            color_pattern(&c, 0, &[1, 2]),
            Err(ColoringError::NotAdjacent { observer: 0, target: 2 })
        );
    }

    #[test]
    fn extend_split_star() {
        let star = Graph::star(2);
        let base = EdgeColoring::monochromatic(&Graph::empty(3), Color::Red);
        let ext = extend_split(&star, 0, &base, 2).unwrap();
        assert_eq!(ext.color_degrees(0), (1, 1));
        assert_eq!(ext.color(0, 1), Some(Color::Red));
        assert_eq!(ext.color(0, 2), Some(Color::Blue));
    }

    #[test]
    fn extend_split_triangle() {
        let k3 = Graph::complete(3);
        let base = EdgeColoring::from_entries(&k3.without_vertex_edges(0), [((1, 2), Color::Red)]).unwrap();
        let ext = extend_split(&k3, 0, &base, 2).unwrap();
        assert_eq!(ext.color_degrees(0), (1, 1));
        assert!(is_mono_free(&ext, &k3));
    }

    #[test]
    fn extend_split_rejects_high_degree() {
        let star = Graph::star(4);
        let base = EdgeColoring::monochromatic(&Graph::empty(5), Color::Red);
        assert_eq!(
            extend_split(&star, 0, &base, 2).unwrap_err(),
            ColoringError::DegreeTooLarge { vertex: 0, degree: 4, limit: 2 }
        );
    }

    #[test]
    fn extend_split_checks_base_host() {
        let k3 = Graph::complete(3);
        let wrong = EdgeColoring::monochromatic(&k3, Color::Red);
        assert!(matches!(extend_split(&k3, 0, &wrong, 2), Err(ColoringError::UnknownEdge(..))));
    }

    #[test]
    fn extend_packing_single_red_edge() {
        // v = 0 with N(v) = {1, 2, 3}; base has the red edge 1-2 only.
        let f = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2)]).unwrap();
        let base = EdgeColoring::from_entries(&f.without_vertex_edges(0), [((1, 2), Color::Red)]).unwrap();
        let ext = extend_packing(&f, 0, &base, 2).unwrap();
        assert_eq!(ext.packing, vec![vec![1, 2]]);
        assert_eq!(ext.coloring.color(0, 1), Some(Color::Blue));
        assert_eq!(ext.coloring.color(0, 2), Some(Color::Blue));
        assert_eq!(ext.coloring.color(0, 3), Some(Color::Red));
    }

    #[test]
    fn extend_packing_independent_neighbourhood() {
        let f = Graph::star(3);
        let base = EdgeColoring::monochromatic(&Graph::empty(4), Color::Red);
        let ext = extend_packing(&f, 0, &base, 2).unwrap();
        assert!(ext.packing.is_empty());
        assert_eq!(ext.coloring.color_degrees(0), (3, 0));
    }

    #[test]
    fn extend_packing_rejects_degree() {
        let f = Graph::star(4);
        let base = EdgeColoring::monochromatic(&Graph::empty(5), Color::Red);
        assert!(matches!(
            extend_packing(&f, 0, &base, 2),
            Err(ColoringError::DegreeTooLarge { degree: 4, .. })
        ));
    }

    #[test]
    fn extend_packing_structural_claims_on_dense_neighbourhood() {
        // v = 0 joined to 1..=8 (degree 8 < 9), base colours K_8 on 1..=8 with
        // red triangles {1,2,3},{4,5,6} and blue elsewhere, d = 3.
        let f = Graph::complete(9);
        let base_host = f.without_vertex_edges(0);
        let group = |x: usize| (x - 1) / 3;
        let base = EdgeColoring::from_fn(&base_host, |(u, w)| {
            if group(u) == group(w) && u <= 6 && w <= 6 { Color::Red } else { Color::Blue }
        });
        let ext = extend_packing(&f, 0, &base, 3).unwrap();
        assert_eq!(ext.packing, vec![vec![1, 2, 3], vec![4, 5, 6]]);
        for color in Color::BOTH {
            let nbhd = neighbourhood_in_color(&ext.coloring, &f, 0, color);
            let (sub, _) = graph::induced_subgraph(&ext.coloring.color_class(color), &nbhd).unwrap();
            assert!(clique_number(&sub) < 3, "{color:?} neighbourhood has a {color:?} K_3");
        }
    }
}
