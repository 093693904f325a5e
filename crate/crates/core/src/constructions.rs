//! Generators for the gadget graphs: `H_{t,d}`, the clique-transversal gadget
//! with its apex, join gadgets, chained signal senders, weak and strong frames,
//! apex gadgets and the doubled apex frame.
//!
//! Every generator is deterministic and documents its labelling so pieces can
//! be addressed by role name.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::coloring::{swap_colors, Color, ColoringError, EdgeColoring};
use crate::engine::{GadgetCertificate, GadgetKind, Verification};
use crate::graph::{
    self, canonical_hash, edge, find_embedding, induced_subgraph, join_graphs, Edge, Graph, GraphError, RoleMap,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("no role named {0:?}")]
    UnknownRole(String),
    #[error("vertex {vertex} is not in role {role:?}")]
    PickOutsideRole { role: String, vertex: usize },
    #[error("role {role:?} needs {expected} picked vertices, got {found}")]
    PickSize { role: String, expected: usize, found: usize },
    #[error("{0} contains a forbidden copy")]
    ContainsForbidden(String),
    #[error("expected {expected} components, got {found}")]
    ComponentCount { expected: usize, found: usize },
    #[error("certificate is not a signal sender")]
    NotSender,
    #[error("sender certificate is unverified")]
    UnverifiedSender,
    #[error("senders are certified for different target graphs")]
    TargetMismatch,
    #[error("identification creates a multi-edge at {0:?}")]
    MultiEdge(Edge),
    #[error("distinguished edges are at distance {0}, need at least 3")]
    TooClose(usize),
    #[error("graphs have {0} and {1} vertices; they must share one vertex set")]
    VertexSetsDiffer(usize, usize),
    #[error("edge {0:?} lies in both graphs")]
    SharedEdge(Edge),
    #[error("the target graph is disconnected")]
    Disconnected,
    #[error("the target graph is not regular")]
    NotRegular,
    #[error("the target graph has no edges at the chosen vertex")]
    ZeroDegree,
    #[error("the neighbourhood of vertex {0} is not independent")]
    NeighborhoodNotIndependent(usize),
    #[error("removing vertex {0} and its neighbourhood disconnects the graph")]
    RemainderDisconnected(usize),
    #[error("invalid BEL certificate: {0}")]
    InvalidBel(String),
}

/// A generated graph with the colouring `psi` the construction prescribes
/// (absent when the construction defines none).
#[derive(Clone, Debug, PartialEq)]
pub struct ColoredConstruction {
    pub graph: Graph,
    pub psi: Option<EdgeColoring>,
}

impl ColoredConstruction {
    pub fn role(&self, name: &str) -> Result<&[usize], ConstructionError> {
        self.graph
            .role(name)
            .ok_or_else(|| ConstructionError::UnknownRole(name.to_string()))
    }
}

/// Accumulates coloured edges and roles, then builds the graph once.
struct Builder {
    n: usize,
    edges: Vec<(Edge, Color)>,
    roles: RoleMap,
}

impl Builder {
    fn new() -> Self {
        Builder {
            n: 0,
            edges: Vec::new(),
            roles: RoleMap::new(),
        }
    }

    fn fresh(&mut self, count: usize) -> Vec<usize> {
        let start = self.n;
        self.n += count;
        (start..self.n).collect()
    }

    fn add(&mut self, u: usize, v: usize, c: Color) {
        self.edges.push((edge(u, v), c));
    }

    fn clique(&mut self, vs: &[usize], c: Color) {
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                self.add(u, v, c);
            }
        }
    }

    fn biclique(&mut self, a: &[usize], b: &[usize], c: Color) {
        for &u in a {
            for &v in b {
                self.add(u, v, c);
            }
        }
    }

    fn role(&mut self, name: impl Into<String>, vs: Vec<usize>) {
        self.roles.insert(name.into(), vs);
    }

    fn finish(self) -> Result<ColoredConstruction, ConstructionError> {
        let graph = graph::build_graph(
            self.n,
            &self.edges.iter().map(|&(e, _)| e).collect::<Vec<_>>(),
            Some(self.roles),
        )?;
        let psi = EdgeColoring::from_entries(&graph, self.edges)?;
        Ok(ColoredConstruction { graph, psi: Some(psi) })
    }
}

/// `K_t` on `0..t` plus vertex `t` joined to `0..d`. Roles `clique`, `apex`.
pub fn make_h_t_d(t: usize, d: usize) -> Result<Graph, ConstructionError> {
    if t == 0 {
        return Err(ConstructionError::Parameters("t must be at least 1".into()));
    }
    if d > t {
        return Err(ConstructionError::Parameters(format!("d = {d} exceeds t = {t}")));
    }
    let mut edges: Vec<Edge> = Vec::new();
    for u in 0..t {
        for v in u + 1..t {
            edges.push((u, v));
        }
    }
    edges.extend((0..d).map(|u| (u, t)));
    let mut roles = RoleMap::new();
    roles.insert("clique".into(), (0..t).collect());
    roles.insert("apex".into(), vec![t]);
    Ok(graph::build_graph(t + 1, &edges, Some(roles))?)
}

fn tuple_name(tuple: &[usize]) -> String {
    let parts: Vec<String> = tuple.iter().map(usize::to_string).collect();
    format!("S_T({})", parts.join(","))
}

/// `d` disjoint red `K_t`s (`T_i` occupies `(i-1)·t..i·t`), blue between every
/// pair, and for each transversal tuple a blue `K_{t-d}` joined blue to the
/// tuple. Tuples are taken in lexicographic order of their indices into
/// `T_1, ..., T_d`; the tuple `(j_1, ..., j_d)` names role `S_T(j_1,...,j_d)`
/// with 0-based indices.
pub fn make_clique_transversal_gadget(t: usize, d: usize) -> Result<ColoredConstruction, ConstructionError> {
    if d < 2 || d >= t {
        return Err(ConstructionError::Parameters(format!("need 2 <= d < t, got t = {t}, d = {d}")));
    }
    let mut b = Builder::new();
    let parts: Vec<Vec<usize>> = (0..d).map(|_| b.fresh(t)).collect();
    for (i, part) in parts.iter().enumerate() {
        b.clique(part, Color::Red);
        b.role(format!("T_{}", i + 1), part.clone());
    }
    for i in 0..d {
        for j in i + 1..d {
            b.biclique(&parts[i], &parts[j], Color::Blue);
        }
    }
    let mut tuple = vec![0; d];
    loop {
        let s = b.fresh(t - d);
        let transversal: Vec<usize> = tuple.iter().enumerate().map(|(i, &j)| parts[i][j]).collect();
        b.clique(&s, Color::Blue);
        b.biclique(&s, &transversal, Color::Blue);
        b.role(tuple_name(&tuple), s);
        // Odometer over {0..t}^d, last coordinate fastest.
        let mut k = d;
        while k > 0 {
            k -= 1;
            tuple[k] += 1;
            if tuple[k] < t {
                break;
            }
            tuple[k] = 0;
        }
        if tuple.iter().all(|&j| j == 0) {
            break;
        }
    }
    b.finish()
}

/// Appends vertex `n` joined to every picked vertex. Each key of `picks` must
/// name a role of `c.graph`, and each pick must be `per_part` vertices of that
/// role. The new vertex gets role `apex`.
pub fn attach_apex(
    c: &ColoredConstruction,
    picks: &BTreeMap<String, Vec<usize>>,
    per_part: usize,
) -> Result<Graph, ConstructionError> {
    let mut neighbours = Vec::new();
    for (role, vs) in picks {
        let members = c.role(role)?;
        let mut distinct = vs.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != per_part || vs.len() != per_part {
            return Err(ConstructionError::PickSize {
                role: role.clone(),
                expected: per_part,
                found: distinct.len(),
            });
        }
        if let Some(&v) = vs.iter().find(|v| !members.contains(v)) {
            return Err(ConstructionError::PickOutsideRole { role: role.clone(), vertex: v });
        }
        neighbours.extend(distinct);
    }
    let apex = c.graph.n();
    Ok(c.graph.with_vertex(&neighbours)?.with_role("apex", vec![apex])?)
}

/// Join of `F_1, ..., F_{t-2}, R_0` (label blocks in that order). `psi` is red
/// inside each part and blue across parts. Roles `F_i`, `R_0`, plus each
/// part's own roles as `F_i.<name>` / `R_0.<name>`.
pub fn make_join_gadget(r0: &Graph, components: &[Graph], t: usize) -> Result<ColoredConstruction, ConstructionError> {
    if t < 2 {
        return Err(ConstructionError::Parameters(format!("t must be at least 2, got {t}")));
    }
    if components.len() != t - 2 {
        return Err(ConstructionError::ComponentCount {
            expected: t - 2,
            found: components.len(),
        });
    }
    if find_embedding(&make_h_t_d(t, 2)?, r0).is_some() {
        return Err(ConstructionError::ContainsForbidden(format!("R_0 (copy of H_{{{t},2}})")));
    }
    let kt = Graph::complete(t);
    for (i, f) in components.iter().enumerate() {
        if find_embedding(&kt, f).is_some() {
            return Err(ConstructionError::ContainsForbidden(format!("F_{} (copy of K_{t})", i + 1)));
        }
    }
    let mut parts: Vec<Graph> = components.to_vec();
    parts.push(r0.clone());
    let joined = join_graphs(&parts)?;
    let names: Vec<String> = (1..=components.len())
        .map(|i| format!("F_{i}"))
        .chain(std::iter::once("R_0".to_string()))
        .collect();
    let mut part_of = vec![0; joined.n()];
    let mut roles = RoleMap::new();
    for (key, vs) in joined.roles() {
        let rest = key.strip_prefix("part_").expect("join roles are namespaced");
        let (index, suffix) = match rest.split_once('.') {
            Some((i, s)) => (i, Some(s)),
            None => (rest, None),
        };
        let i: usize = index.parse().expect("numeric part index");
        match suffix {
            Some(s) => {
                roles.insert(format!("{}.{s}", names[i]), vs.clone());
            }
            None => {
                for &v in vs {
                    part_of[v] = i;
                }
                roles.insert(names[i].clone(), vs.clone());
            }
        }
    }
    let graph = graph::build_graph(joined.n(), &joined.edges(), Some(roles))?;
    let psi = EdgeColoring::from_fn(&graph, |(u, v)| {
        if part_of[u] == part_of[v] {
            Color::Red
        } else {
            Color::Blue
        }
    });
    Ok(ColoredConstruction { graph, psi: Some(psi) })
}

/// Glues two signal senders by identifying `f'` of the first with `e''` of
/// the second, endpoint by endpoint in stored (ascending) order. The result
/// has `e = e'` and `f` the image of `f''`. Vertices of the second sender
/// other than `e''` are appended in ascending order.
///
/// The result is returned unchecked; run the engine on it to certify.
pub fn chain_senders(g1: &GadgetCertificate, g2: &GadgetCertificate) -> Result<GadgetCertificate, ConstructionError> {
    let (e1, f1) = g1.sender_edges().ok_or(ConstructionError::NotSender)?;
    let (e2, f2) = g2.sender_edges().ok_or(ConstructionError::NotSender)?;
    if canonical_hash(&g1.target) != canonical_hash(&g2.target) {
        return Err(ConstructionError::TargetMismatch);
    }
    for (g, e, f) in [(&g1.graph, e1, f1), (&g2.graph, e2, f2)] {
        for x in [e, f] {
            if !g.has_edge(x.0, x.1) {
                return Err(ConstructionError::Parameters(format!("sender edge {x:?} missing")));
            }
        }
        if [e.0, e.1].iter().any(|&x| x == f.0 || x == f.1) {
            return Err(ConstructionError::Parameters(format!("sender edges {e:?} and {f:?} share a vertex")));
        }
    }
    let n1 = g1.graph.n();
    let mut image = vec![usize::MAX; g2.graph.n()];
    image[e2.0] = f1.0;
    image[e2.1] = f1.1;
    let mut next = n1;
    for slot in image.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = next;
        next += 1;
    }
    let mut edges = g1.graph.edges();
    for (u, v) in g2.graph.edges() {
        let glued = edge(image[u], image[v]);
        if (u, v) != e2 && g1.graph.has_edge(glued.0, glued.1) {
            return Err(ConstructionError::MultiEdge(glued));
        }
        edges.push(glued);
    }
    let e = e1;
    let f = edge(image[f2.0], image[f2.1]);
    let mut roles = RoleMap::new();
    roles.insert("e".into(), vec![e.0, e.1]);
    roles.insert("f".into(), vec![f.0, f.1]);
    let graph = graph::build_graph(next, &edges, Some(roles))?;
    match graph.set_distance(&[e.0, e.1], &[f.0, f.1]) {
        Some(dist) if dist < 3 => return Err(ConstructionError::TooClose(dist)),
        _ => {}
    }
    Ok(GadgetCertificate::unchecked(
        graph,
        g1.target.clone(),
        GadgetKind::SignalSender { e, f },
    ))
}

/// Frame on `g0 ∪ g1` (labels `0..n`) plus fresh edges `e_0 = (n, n+1)` and
/// `e_1 = (n+2, n+3)`. For every edge `x` of `g0` (lexicographic order) a
/// fresh copy of the sender is attached with its `e` on `e_0` and its `f` on
/// `x`; likewise for `g1` and `e_1`. Each copy contributes the sender's
/// vertices outside `e ∪ f`, in ascending order.
///
/// `psi` colours `g0` and `e_0` red, `g1` and `e_1` blue, and each copy by the
/// sender's own colouring (swapped for `g1` copies). It is present only when
/// the sender carries a colouring in which `e` and `f` are both red.
///
/// Roles: `e_0`, `e_1`, and `sender_0(u,v)` / `sender_1(u,v)` holding all
/// vertices of the copy attached at `(u, v)`.
pub fn make_weak_bel_frame(
    g0: &Graph,
    g1: &Graph,
    sender: &GadgetCertificate,
) -> Result<ColoredConstruction, ConstructionError> {
    let (se, sf) = sender.sender_edges().ok_or(ConstructionError::NotSender)?;
    if sender.verified == Verification::Unchecked {
        return Err(ConstructionError::UnverifiedSender);
    }
    if g0.n() != g1.n() {
        return Err(ConstructionError::VertexSetsDiffer(g0.n(), g1.n()));
    }
    if let Some(&x) = g0.edges().iter().find(|x| g1.has_edge(x.0, x.1)) {
        return Err(ConstructionError::SharedEdge(x));
    }
    let h = &sender.target;
    for (name, g) in [("G_0", g0), ("G_1", g1)] {
        if find_embedding(h, g).is_some() {
            return Err(ConstructionError::ContainsForbidden(name.to_string()));
        }
    }
    let sender_psi = sender.coloring.as_ref().filter(|c| {
        c.color(se.0, se.1) == Some(Color::Red) && c.color(sf.0, sf.1) == Some(Color::Red)
    });

    let mut b = Builder::new();
    b.fresh(g0.n());
    let e0 = b.fresh(2);
    let e1 = b.fresh(2);
    b.add(e0[0], e0[1], Color::Red);
    b.add(e1[0], e1[1], Color::Blue);
    b.role("e_0", e0.clone());
    b.role("e_1", e1.clone());
    for (side, g, anchor, color) in [(0, g0, &e0, Color::Red), (1, g1, &e1, Color::Blue)] {
        for (u, v) in g.edges() {
            b.add(u, v, color);
            let mut image = vec![usize::MAX; sender.graph.n()];
            image[se.0] = anchor[0];
            image[se.1] = anchor[1];
            image[sf.0] = u;
            image[sf.1] = v;
            let inner: Vec<usize> = (0..sender.graph.n()).filter(|&x| image[x] == usize::MAX).collect();
            let fresh = b.fresh(inner.len());
            for (&x, &y) in inner.iter().zip(&fresh) {
                image[x] = y;
            }
            for (x, y) in sender.graph.edges() {
                if edge(x, y) == se || edge(x, y) == sf {
                    continue;
                }
                let c = sender_psi
                    .and_then(|p| p.color(x, y))
                    .map(|c| if side == 0 { c } else { c.flip() })
                    .unwrap_or(color);
                b.add(image[x], image[y], c);
            }
            let mut members = vec![anchor[0], anchor[1], u, v];
            members.extend(fresh);
            b.role(format!("sender_{side}({u},{v})"), members);
        }
    }
    let mut built = b.finish()?;
    if sender_psi.is_none() {
        built.psi = None;
    }
    Ok(built)
}

/// Splits a coloured graph into the two halves of a strong frame. Adds fresh
/// vertices `S = n..n+|V(h)|` (vertex `i` of `h` at `n+i`); `g0` is the blue
/// class of `psi` plus `h` minus its first edge on `S`, `g1` is the red class
/// plus that one edge. Both carry role `S`.
pub fn weak_to_strong_frame(g: &Graph, psi: &EdgeColoring, h: &Graph) -> Result<(Graph, Graph), ConstructionError> {
    if !h.is_connected() {
        return Err(ConstructionError::Disconnected);
    }
    psi.check_host(g)?;
    let h_edges = h.edges();
    let Some(&missing) = h_edges.first() else {
        return Err(ConstructionError::Parameters("target graph has no edges".into()));
    };
    let n = g.n();
    let total = n + h.n();
    let s: Vec<usize> = (n..total).collect();
    let mut blue = psi.color_class(Color::Blue).edges();
    blue.extend(h_edges[1..].iter().map(|&(u, v)| (n + u, n + v)));
    let mut red = psi.color_class(Color::Red).edges();
    red.push((n + missing.0, n + missing.1));
    let mut roles = RoleMap::new();
    roles.insert("S".into(), s);
    let g0 = graph::build_graph(total, &blue, Some(roles.clone()))?;
    let g1 = graph::build_graph(total, &red, Some(roles))?;
    for (name, half) in [("G_0", &g0), ("G_1", &g1)] {
        if find_embedding(h, half).is_some() {
            return Err(ConstructionError::ContainsForbidden(name.to_string()));
        }
    }
    Ok((g0, g1))
}

/// Checks the apex-gadget hypotheses and returns `(d, N(v) ascending, the
/// remaining vertices of h ascending)`.
fn apex_shape(h: &Graph, v: usize) -> Result<(usize, Vec<usize>, Vec<usize>), ConstructionError> {
    h.check_vertex(v)?;
    let d = h.degree(v);
    if d == 0 {
        return Err(ConstructionError::ZeroDegree);
    }
    if h.degrees().iter().any(|&x| x != d) {
        return Err(ConstructionError::NotRegular);
    }
    let nbrs: Vec<usize> = h.neighbors(v).collect();
    if !h.is_independent(&nbrs) {
        return Err(ConstructionError::NeighborhoodNotIndependent(v));
    }
    let rest: Vec<usize> = (0..h.n()).filter(|&x| x != v && !nbrs.contains(&x)).collect();
    let (remainder, _) = induced_subgraph(h, &rest)?;
    if !remainder.is_connected() {
        return Err(ConstructionError::RemainderDisconnected(v));
    }
    Ok((d, nbrs, rest))
}

fn subset_name(prefix: &str, subset: &[usize]) -> String {
    let parts: Vec<String> = subset.iter().map(usize::to_string).collect();
    format!("{prefix}copy({})", parts.join(","))
}

/// Independent set `S = 0..2d-1` and, for each `d`-subset `S'` in
/// lexicographic order, a fresh copy of `h - v` whose `N(v)` (ascending) is
/// identified with `S'` (ascending). The other vertices of each copy follow in
/// ascending order of their labels in `h`. Roles `S` and `copy(s_1,...,s_d)`.
pub fn make_apex_gadget(h: &Graph, v: usize) -> Result<ColoredConstruction, ConstructionError> {
    let (graph, _) = apex_gadget_graph(h, v, "")?;
    Ok(ColoredConstruction { graph, psi: None })
}

fn apex_gadget_graph(h: &Graph, v: usize, prefix: &str) -> Result<(Graph, usize), ConstructionError> {
    let (d, nbrs, rest) = apex_shape(h, v)?;
    let s: Vec<usize> = (0..2 * d - 1).collect();
    let mut n = s.len();
    let mut edges = Vec::new();
    let mut roles = RoleMap::new();
    for subset in graph::k_subsets(&s, d) {
        let mut image = vec![usize::MAX; h.n()];
        for (&x, &y) in nbrs.iter().zip(&subset) {
            image[x] = y;
        }
        for &x in &rest {
            image[x] = n;
            n += 1;
        }
        for (a, b) in h.edges() {
            if a != v && b != v {
                edges.push((image[a], image[b]));
            }
        }
        let mut members = subset.clone();
        members.extend(rest.iter().map(|&x| image[x]));
        roles.insert(subset_name(prefix, &subset), members);
    }
    roles.insert("S".into(), s);
    Ok((graph::build_graph(n, &edges, Some(roles))?, d))
}

/// The doubled apex frame and the graph obtained by adding the apex vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplicityWitness {
    /// Two apex gadgets sharing `S`; `psi` is red on copy `A`, blue on `B`.
    pub frame: ColoredConstruction,
    /// The frame (or the BEL gadget around it) plus the apex joined to `S`.
    pub graph: Graph,
    pub apex: usize,
}

/// Two copies of the apex gadget for `(h, v)` identified along `S`; copy `A`
/// keeps the gadget's labels, copy `B` appends its non-`S` vertices. The apex
/// is joined to all of `S` and has degree `2d - 1`.
///
/// With `bel` given, its template must be the frame (same labels) and its
/// `psi` the frame's `psi` up to a swap; the apex is then attached to the
/// images of `S` inside the BEL graph.
pub fn make_simplicity_witness(
    h: &Graph,
    v: usize,
    bel: Option<&GadgetCertificate>,
) -> Result<SimplicityWitness, ConstructionError> {
    let (a, _) = apex_gadget_graph(h, v, "A.")?;
    let s = a.role("S").expect("apex gadget has S").to_vec();
    let m = a.n();
    let mut image_b: Vec<usize> = (0..m).collect();
    for (k, slot) in image_b.iter_mut().skip(s.len()).enumerate() {
        *slot = m + k;
    }
    let total = 2 * m - s.len();
    let mut colored: Vec<(Edge, Color)> = a.edges().into_iter().map(|e| (e, Color::Red)).collect();
    colored.extend(
        a.edges()
            .into_iter()
            .map(|(x, y)| (edge(image_b[x], image_b[y]), Color::Blue)),
    );
    let mut roles = RoleMap::new();
    for (name, vs) in a.roles() {
        roles.insert(name.clone(), vs.clone());
        if name != "S" {
            roles.insert(name.replacen("A.", "B.", 1), vs.iter().map(|&x| image_b[x]).collect());
        }
    }
    let edges: Vec<Edge> = colored.iter().map(|&(e, _)| e).collect();
    let frame_graph = graph::build_graph(total, &edges, Some(roles))?;
    let psi = EdgeColoring::from_entries(&frame_graph, colored)?;

    let (host, attach): (&Graph, Vec<usize>) = match bel {
        None => (&frame_graph, s.clone()),
        Some(cert) => {
            let GadgetKind::BelGadget { template, embedding, psi: bel_psi } = &cert.kind else {
                return Err(ConstructionError::InvalidBel("not a BEL gadget".into()));
            };
            if template.edges() != frame_graph.edges() || template.n() != frame_graph.n() {
                return Err(ConstructionError::InvalidBel("template is not the frame".into()));
            }
            if *bel_psi != psi && *bel_psi != swap_colors(&psi) {
                return Err(ConstructionError::InvalidBel("template colouring differs from the frame's".into()));
            }
            cert.validate()
                .map_err(|e| ConstructionError::InvalidBel(e.to_string()))?;
            (&cert.graph, s.iter().map(|&x| embedding[x]).collect())
        }
    };
    let apex = host.n();
    let graph = host.with_vertex(&attach)?.with_role("apex", vec![apex])?;
    Ok(SimplicityWitness {
        frame: ColoredConstruction {
            graph: frame_graph,
            psi: Some(psi),
        },
        graph,
        apex,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_mono_free;
    use crate::graph::{clique_number, graph_stats};

    #[test]
    fn h_t_d_examples() {
        assert!(make_h_t_d(2, 2).unwrap().is_isomorphic_to(&Graph::complete(3)));
        assert!(make_h_t_d(3, 3).unwrap().is_isomorphic_to(&Graph::complete(4)));
        let g = make_h_t_d(3, 0).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.isolated_vertices(), vec![3]);
        assert!(make_h_t_d(2, 3).is_err());
        let h53 = make_h_t_d(5, 3).unwrap();
        let s = graph_stats(&h53);
        assert_eq!((s.min_degree, s.clique_number), (3, 5));
        assert_eq!(h53.role("apex"), Some(&[5][..]));
    }

    #[test]
    fn transversal_gadget_counts() {
        let c = make_clique_transversal_gadget(3, 2).unwrap();
        let psi = c.psi.as_ref().unwrap();
        assert_eq!(c.graph.n(), 15);
        assert_eq!(c.graph.edge_count(), 33);
        assert_eq!((psi.count(Color::Red), psi.count(Color::Blue)), (6, 27));
        assert_eq!(c.role("T_2").unwrap(), &[3, 4, 5]);
        // Tuple (1, 2) is the sixth in lexicographic order.
        assert_eq!(c.role("S_T(1,2)").unwrap(), &[11]);
        assert!(c.graph.has_edge(11, 1) && c.graph.has_edge(11, 5));
        assert!(is_mono_free(psi, &make_h_t_d(3, 2).unwrap()));

        let big = make_clique_transversal_gadget(5, 3).unwrap();
        assert_eq!(big.graph.n(), 3 * 5 + 2 * 125);
        assert!(make_clique_transversal_gadget(3, 3).is_err());
        assert!(make_clique_transversal_gadget(3, 1).is_err());
    }

    #[test]
    fn apex_attachment() {
        let c = make_clique_transversal_gadget(3, 2).unwrap();
        let picks: BTreeMap<String, Vec<usize>> =
            [("T_1".to_string(), vec![0, 1]), ("T_2".to_string(), vec![3, 5])].into();
        let g = attach_apex(&c, &picks, 2).unwrap();
        assert_eq!(g.degree(15), 4);
        assert_eq!(g.role("apex"), Some(&[15][..]));

        let outside: BTreeMap<String, Vec<usize>> = [("T_1".to_string(), vec![0, 3])].into();
        assert!(matches!(
            attach_apex(&c, &outside, 2),
            Err(ConstructionError::PickOutsideRole { vertex: 3, .. })
        ));
        let short: BTreeMap<String, Vec<usize>> = [("T_1".to_string(), vec![0])].into();
        assert!(matches!(attach_apex(&c, &short, 2), Err(ConstructionError::PickSize { .. })));
        let unknown: BTreeMap<String, Vec<usize>> = [("T_9".to_string(), vec![0, 1])].into();
        assert!(matches!(attach_apex(&c, &unknown, 2), Err(ConstructionError::UnknownRole(_))));
    }

    #[test]
    fn join_gadget_example() {
        let r0 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let c = make_join_gadget(&r0, &[Graph::cycle(5)], 3).unwrap();
        let psi = c.psi.as_ref().unwrap();
        assert_eq!((c.graph.n(), c.graph.edge_count()), (9, 27));
        assert_eq!(c.role("F_1").unwrap(), &[0, 1, 2, 3, 4]);
        assert_eq!(c.role("R_0").unwrap(), &[5, 6, 7, 8]);
        assert_eq!(psi.count(Color::Red), 7);
        assert_eq!(clique_number(&psi.color_class(Color::Blue)), 2);
        assert!(is_mono_free(psi, &make_h_t_d(3, 2).unwrap()));

        assert!(matches!(
            make_join_gadget(&Graph::complete(4), &[Graph::cycle(5)], 3),
            Err(ConstructionError::ContainsForbidden(_))
        ));
        assert!(matches!(
            make_join_gadget(&r0, &[Graph::complete(3)], 3),
            Err(ConstructionError::ContainsForbidden(_))
        ));
        assert!(matches!(
            make_join_gadget(&r0, &[], 3),
            Err(ConstructionError::ComponentCount { expected: 1, found: 0 })
        ));
    }

    fn p4_sender() -> GadgetCertificate {
        let mut cert = GadgetCertificate::unchecked(
            Graph::path(4),
            Graph::path(3),
            GadgetKind::SignalSender { e: (0, 1), f: (2, 3) },
        );
        cert.coloring = Some(EdgeColoring::from_fn(&cert.graph, |e| {
            if e == (1, 2) { Color::Blue } else { Color::Red }
        }));
        cert.verified = Verification::Trusted;
        cert
    }

    #[test]
    fn chaining_two_paths() {
        let chained = chain_senders(&p4_sender(), &p4_sender()).unwrap();
        assert!(chained.graph.is_isomorphic_to(&Graph::path(6)));
        assert_eq!(chained.graph.edges(), Graph::path(6).edges());
        assert_eq!(chained.sender_edges(), Some(((0, 1), (4, 5))));
        assert_eq!(chained.graph.set_distance(&[0, 1], &[4, 5]), Some(3));

        let mut other = p4_sender();
        other.target = Graph::complete(3);
        assert_eq!(chain_senders(&p4_sender(), &other), Err(ConstructionError::TargetMismatch));
    }

    #[test]
    fn chaining_rejects_short_distance() {
        // A 4-cycle sender: chaining two puts f two steps from e.
        let mut square = p4_sender();
        square.graph = Graph::cycle(4);
        square.kind = GadgetKind::SignalSender { e: (0, 1), f: (2, 3) };
        assert_eq!(chain_senders(&square, &square), Err(ConstructionError::TooClose(2)));
    }

    #[test]
    fn weak_frame_counts() {
        let g0 = Graph::from_edges(4, [(0, 1)]).unwrap();
        let g1 = Graph::from_edges(4, [(2, 3)]).unwrap();
        let sender = chain_senders(&p4_sender(), &p4_sender()).unwrap();
        let mut sender = sender;
        sender.verified = Verification::Trusted;
        sender.coloring = Some(EdgeColoring::from_fn(&sender.graph, |(u, _)| {
            if u % 2 == 0 { Color::Red } else { Color::Blue }
        }));
        let frame = make_weak_bel_frame(&g0, &g1, &sender).unwrap();
        // Base, e_0 and e_1, and two sender copies each adding 6 - 4 vertices.
        assert_eq!(frame.graph.n(), 4 + 4 + 2 * 2);
        // g0, g1, e_0, e_1 and three inner edges per copy.
        assert_eq!(frame.graph.edge_count(), 4 + 2 * 3);
        assert_eq!(frame.role("e_0").unwrap(), &[4, 5]);
        assert_eq!(frame.role("sender_1(2,3)").unwrap(), &[6, 7, 2, 3, 10, 11]);
        let psi = frame.psi.unwrap();
        assert_eq!(psi.color(0, 1), Some(Color::Red));
        assert_eq!(psi.color(2, 3), Some(Color::Blue));

        let wrong = Graph::from_edges(5, [(2, 3)]).unwrap();
        assert_eq!(
            make_weak_bel_frame(&g0, &wrong, &sender),
            Err(ConstructionError::VertexSetsDiffer(4, 5))
        );
        assert_eq!(make_weak_bel_frame(&g0, &g0, &sender), Err(ConstructionError::SharedEdge((0, 1))));
        sender.verified = Verification::Unchecked;
        assert_eq!(make_weak_bel_frame(&g0, &g1, &sender), Err(ConstructionError::UnverifiedSender));
    }

    #[test]
    fn weak_to_strong_examples() {
        let g = Graph::complete(2);
        let psi = EdgeColoring::monochromatic(&g, Color::Red);
        let k3 = Graph::complete(3);
        let (g0, g1) = weak_to_strong_frame(&g, &psi, &k3).unwrap();
        assert_eq!(g0.edges(), vec![(2, 4), (3, 4)]);
        assert_eq!(g1.edges(), vec![(0, 1), (2, 3)]);
        let s = g0.role("S").unwrap().to_vec();
        let mut union: Vec<Edge> = g0.edges();
        union.extend(g1.edges());
        let joined = Graph::from_edges(5, union).unwrap();
        let (on_s, _) = induced_subgraph(&joined, &s).unwrap();
        assert_eq!(on_s, Graph::complete(3));

        let red_triangle = EdgeColoring::monochromatic(&k3, Color::Red);
        assert!(matches!(
            weak_to_strong_frame(&k3, &red_triangle, &k3),
            Err(ConstructionError::ContainsForbidden(_))
        ));
        let two_edges = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(weak_to_strong_frame(&g, &psi, &two_edges), Err(ConstructionError::Disconnected));
    }

    #[test]
    fn apex_gadget_for_pentagon() {
        for v in 0..5 {
            let c = make_apex_gadget(&Graph::cycle(5), v).unwrap();
            assert_eq!((c.graph.n(), c.graph.edge_count()), (9, 9));
            assert_eq!(c.role("S").unwrap(), &[0, 1, 2]);
            assert!(find_embedding(&Graph::cycle(5), &c.graph).is_none());
        }
        let c = make_apex_gadget(&Graph::cycle(5), 0).unwrap();
        assert_eq!(c.role("copy(0,2)").unwrap().len(), 4);
        assert_eq!(
            make_apex_gadget(&Graph::complete(3), 0),
            Err(ConstructionError::NeighborhoodNotIndependent(0))
        );
        assert_eq!(make_apex_gadget(&Graph::path(3), 0), Err(ConstructionError::NotRegular));
        assert_eq!(make_apex_gadget(&Graph::empty(2), 0), Err(ConstructionError::ZeroDegree));
        // K_{2,2}: removing a vertex and its neighbours leaves one vertex.
        assert!(make_apex_gadget(&Graph::cycle(4), 0).is_ok());
        // 2-regular with independent neighbourhoods, but the remainder splits.
        let two_squares = graph::disjoint_union(&[Graph::cycle(4), Graph::cycle(4)]);
        assert_eq!(
            make_apex_gadget(&two_squares, 0),
            Err(ConstructionError::RemainderDisconnected(0))
        );
    }

    #[test]
    fn petersen_apex_gadget_size() {
        let c = make_apex_gadget(&Graph::petersen(), 0).unwrap();
        // |S| = 5 plus ten copies of the six vertices outside v and N(v).
        assert_eq!(c.graph.n(), 5 + 10 * 6);
        assert_eq!(c.role("S").unwrap().len(), 5);
    }

    #[test]
    fn simplicity_frame_for_pentagon() {
        let w = make_simplicity_witness(&Graph::cycle(5), 0, None).unwrap();
        let psi = w.frame.psi.as_ref().unwrap();
        assert_eq!(w.frame.graph.n(), 15);
        assert_eq!(w.frame.graph.edge_count(), 18);
        assert_eq!((psi.count(Color::Red), psi.count(Color::Blue)), (9, 9));
        assert!(is_mono_free(psi, &Graph::cycle(5)));
        assert_eq!(w.apex, 15);
        assert_eq!(w.graph.degree(w.apex), 3);
        assert!(w.graph.role("B.copy(1,2)").is_some());
    }
}
