//! Finite simple graphs on dense vertex labels `0..n`, with named vertex roles.
//!
//! A [`Graph`] never changes after it is built; every operation that "modifies"
//! a graph returns a new value. Roles are named vertex subsets (`"S"`, `"T_1"`,
//! `"apex"`, ...) that constructions attach so later code can find the pieces
//! it cares about without re-deriving vertex numbers.

mod canon;
pub mod codec;
mod embed;
mod stats;

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::bits::{self, BitMatrix};

pub use canon::{canonical_hash, GraphDigest};
pub use embed::{find_embedding, Embedding};
pub(crate) use embed::Matcher;
pub use stats::{clique_number, graph_stats, independence_number, GraphStats};

/// An undirected edge, always stored with the smaller endpoint first.
pub type Edge = (usize, usize);

/// Role name to vertex subset. Ordered so serialisation is reproducible.
pub type RoleMap = BTreeMap<String, Vec<usize>>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("role {role:?} names vertex {vertex}, but the graph has {n} vertices")]
    RoleOutOfRange { role: String, vertex: usize, n: usize },
    #[error("join needs at least one part")]
    EmptyJoin,
}

/// Normalises an unordered pair to `(min, max)`.
#[inline]
pub fn edge(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: BitMatrix,
    roles: RoleMap,
}

/// Builds a graph from an edge list. Duplicate edges collapse; roles are kept
/// verbatim.
pub fn build_graph(
    n: usize,
    edges: &[(usize, usize)],
    roles: Option<RoleMap>,
) -> Result<Graph, GraphError> {
    let mut g = Graph::from_edges(n, edges.iter().copied())?;
    if let Some(roles) = roles {
        for (name, vertices) in roles {
            g.set_role(name, vertices)?;
        }
    }
    Ok(g)
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: BitMatrix::new(n),
            roles: RoleMap::new(),
        }
    }

    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            g.adj.insert(u, v);
        }
        Ok(g)
    }

    pub(crate) fn from_matrix(adj: BitMatrix) -> Self {
        Graph {
            adj,
            roles: RoleMap::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.adj.insert(u, v);
            }
        }
        g
    }

    /// The cycle `0 - 1 - ... - (n-1) - 0`. Needs `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut g = Graph::path(n);
        g.adj.insert(n - 1, 0);
        g
    }

    /// The path `0 - 1 - ... - (n-1)` on `n` vertices.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.adj.insert(v - 1, v);
        }
        g
    }

    /// The star `K_{1,leaves}` centred at vertex 0.
    pub fn star(leaves: usize) -> Self {
        let mut g = Graph::empty(leaves + 1);
        for v in 1..=leaves {
            g.adj.insert(0, v);
        }
        g
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Graph::empty(a + b);
        for u in 0..a {
            for v in a..a + b {
                g.adj.insert(u, v);
            }
        }
        g
    }

    /// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i - (i+5)`.
    pub fn petersen() -> Self {
        let mut g = Graph::empty(10);
        for i in 0..5 {
            g.adj.insert(i, (i + 1) % 5);
            g.adj.insert(5 + i, 5 + (i + 2) % 5);
            g.adj.insert(i, i + 5);
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.n()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.edge_count()
    }

    /// All edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<Edge> {
        self.adj.edges()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj.contains(u, v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj.degree(v)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits::ones(self.adj.row(v))
    }

    pub(crate) fn matrix(&self) -> &BitMatrix {
        &self.adj
    }

    pub fn roles(&self) -> &RoleMap {
        &self.roles
    }

    pub fn role(&self, name: &str) -> Option<&[usize]> {
        self.roles.get(name).map(Vec::as_slice)
    }

    /// Sets (or replaces) a role.
    pub fn set_role(
        &mut self,
        name: impl Into<String>,
        vertices: Vec<usize>,
    ) -> Result<(), GraphError> {
        let name = name.into();
        if let Some(&vertex) = vertices.iter().find(|&&v| v >= self.n()) {
            return Err(GraphError::RoleOutOfRange {
                role: name,
                vertex,
                n: self.n(),
            });
        }
        self.roles.insert(name, vertices);
        Ok(())
    }

    pub fn with_role(mut self, name: impl Into<String>, vertices: Vec<usize>) -> Result<Self, GraphError> {
        self.set_role(name, vertices)?;
        Ok(self)
    }

    pub fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    /// Copy of `self` with one more edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let mut g = self.clone();
        g.adj.insert(u, v);
        Ok(g)
    }

    /// Copy of `self` without edge `uv` (a no-op when the edge is absent).
    pub fn without_edge(&self, u: usize, v: usize) -> Self {
        let mut g = self.clone();
        if self.has_edge(u, v) {
            g.adj.remove(u, v);
        }
        g
    }

    /// Copy of `self` with every edge at `v` removed. Labels are unchanged, so
    /// `v` stays behind as an isolated vertex.
    pub fn without_vertex_edges(&self, v: usize) -> Self {
        let mut g = self.clone();
        let nbrs: Vec<usize> = self.neighbors(v).collect();
        for w in nbrs {
            g.adj.remove(v, w);
        }
        g
    }

    /// Appends a vertex joined to `neighbors`; the new vertex is `self.n()`.
    pub fn with_vertex(&self, neighbors: &[usize]) -> Result<Self, GraphError> {
        let n = self.n();
        let mut adj = BitMatrix::new(n + 1);
        for (u, v) in self.edges() {
            adj.insert(u, v);
        }
        for &w in neighbors {
            self.check_vertex(w)?;
            adj.insert(n, w);
        }
        Ok(Graph {
            adj,
            roles: self.roles.clone(),
        })
    }

    /// Renames vertex `v` to `perm[v]`. Roles follow their vertices.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n(), "permutation length mismatch");
        let mut adj = BitMatrix::new(self.n());
        for (u, v) in self.edges() {
            adj.insert(perm[u], perm[v]);
        }
        let roles = self
            .roles
            .iter()
            .map(|(k, vs)| (k.clone(), vs.iter().map(|&v| perm[v]).collect()))
            .collect();
        Graph { adj, roles }
    }

    pub fn complement(&self) -> Self {
        let n = self.n();
        let mut adj = BitMatrix::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if !self.adj.contains(u, v) {
                    adj.insert(u, v);
                }
            }
        }
        Graph::from_matrix(adj)
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n() <= other.n() && self.edges().iter().all(|&(u, v)| other.has_edge(u, v))
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.degree(v) == 0).collect()
    }

    /// True for the empty graph and for graphs with one component.
    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.bfs_distances(0).iter().all(Option::is_some)
    }

    /// Breadth-first distances from `source`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Length of a shortest path from any vertex of `from` to any vertex of
    /// `to`, or `None` if none exists.
    pub fn set_distance(&self, from: &[usize], to: &[usize]) -> Option<usize> {
        from.iter()
            .filter_map(|&s| {
                let dist = self.bfs_distances(s);
                to.iter().filter_map(|&t| dist[t]).min()
            })
            .min()
    }
}

/// Disjoint union of `parts` plus every edge between distinct parts.
///
/// Part `i` occupies a contiguous label block in list order and is recorded as
/// role `part_i`; the part's own roles reappear as `part_i.<name>`.
pub fn join_graphs(parts: &[Graph]) -> Result<Graph, GraphError> {
    if parts.is_empty() {
        return Err(GraphError::EmptyJoin);
    }
    let total: usize = parts.iter().map(Graph::n).sum();
    let mut adj = BitMatrix::new(total);
    let mut roles = RoleMap::new();
    let mut offsets = Vec::with_capacity(parts.len());
    let mut offset = 0;
    for (i, part) in parts.iter().enumerate() {
        offsets.push(offset);
        for (u, v) in part.edges() {
            adj.insert(offset + u, offset + v);
        }
        roles.insert(format!("part_{i}"), (offset..offset + part.n()).collect());
        for (name, vs) in part.roles() {
            roles.insert(
                format!("part_{i}.{name}"),
                vs.iter().map(|&v| offset + v).collect(),
            );
        }
        offset += part.n();
    }
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            for u in 0..parts[i].n() {
                for v in 0..parts[j].n() {
                    adj.insert(offsets[i] + u, offsets[j] + v);
                }
            }
        }
    }
    Ok(Graph { adj, roles })
}

/// Disjoint union of `parts` (no cross edges), with roles namespaced like
/// [`join_graphs`].
pub fn disjoint_union(parts: &[Graph]) -> Graph {
    let total: usize = parts.iter().map(Graph::n).sum();
    let mut adj = BitMatrix::new(total);
    let mut roles = RoleMap::new();
    let mut offset = 0;
    for (i, part) in parts.iter().enumerate() {
        for (u, v) in part.edges() {
            adj.insert(offset + u, offset + v);
        }
        roles.insert(format!("part_{i}"), (offset..offset + part.n()).collect());
        for (name, vs) in part.roles() {
            roles.insert(
                format!("part_{i}.{name}"),
                vs.iter().map(|&v| offset + v).collect(),
            );
        }
        offset += part.n();
    }
    Graph { adj, roles }
}

/// The subgraph induced by `vertices`, relabelled `0..vertices.len()` in the
/// order given. Returns the graph and the map from new labels to old ones.
/// Roles are restricted to the kept vertices.
pub fn induced_subgraph(g: &Graph, vertices: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
    let mut new_label = vec![usize::MAX; g.n()];
    for (i, &v) in vertices.iter().enumerate() {
        g.check_vertex(v)?;
        new_label[v] = i;
    }
    let mut adj = BitMatrix::new(vertices.len());
    for (i, &u) in vertices.iter().enumerate() {
        for w in g.neighbors(u) {
            let j = new_label[w];
            if j != usize::MAX && j > i {
                adj.insert(i, j);
            }
        }
    }
    let roles = g
        .roles()
        .iter()
        .map(|(k, vs)| {
            let kept = vs
                .iter()
                .filter(|&&v| new_label[v] != usize::MAX)
                .map(|&v| new_label[v])
                .collect();
            (k.clone(), kept)
        })
        .collect();
    Ok((Graph { adj, roles }, vertices.to_vec()))
}

/// All `k`-subsets of `items` in lexicographic order of positions.
pub(crate) fn k_subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let need = k - current.len();
        for i in start..items.len() {
            if items.len() - i < need {
                break;
            }
            current.push(items[i]);
            rec(items, k, i + 1, current, out);
            current.pop();
        }
    }
    rec(items, k, 0, &mut current, &mut out);
    out
}
