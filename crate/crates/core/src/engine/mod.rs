//! Exact decision procedures built on the colouring search: arrowing,
//! ε-arrowing, Ramsey minimality, small Ramsey numbers, and checks for signal
//! senders, BEL gadgets and apex gadgets.
//!
//! All procedures are exhaustive and meant for desk-scale inputs. A budget
//! (node count and/or wall clock) turns a would-be endless search into
//! [`EngineError::BudgetExhausted`]; it never turns into a guessed verdict.

mod certificate;
mod search;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{Color, EdgeColoring};
use crate::graph::{self, edge, induced_subgraph, Edge, Graph, Matcher};
use search::{Limits, Outcome};

pub use certificate::{GadgetCertificate, GadgetKind, Verification};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error("search budget exhausted after {} nodes", .0.nodes)]
    BudgetExhausted(SearchStats),
    #[error("the target graph has no edges")]
    EdgelessTarget,
    #[error("edge ({0}, {1}) is not in the graph")]
    MissingEdge(usize, usize),
    #[error("edges {0:?} and {1:?} share a vertex")]
    NotDisjoint(Edge, Edge),
    #[error("the graph arrows the target, so no colouring constrains it")]
    GraphArrowsH,
    #[error("the graph does not arrow the target")]
    DoesNotArrow,
    #[error("no candidate graph arrows the target")]
    NoCandidateArrows,
    #[error("epsilon must lie in (0, 1], got {0}")]
    InvalidEpsilon(f64),
    #[error("the vertex set is not independent")]
    NotIndependent,
    #[error("need at least {need} vertices in the set, have {have}")]
    SetTooSmall { have: usize, need: usize },
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
}

/// Search limits. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub timeout: Option<Duration>,
}

/// Symmetry reduction applied to an unconstrained search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Symmetry {
    /// Full enumeration.
    None,
    /// Fix the colour of the first branching edge; sound because swapping
    /// colours preserves monochromatic-copy freeness.
    #[default]
    ColorSwap,
    /// Colour swap plus lex-leader pruning under automorphisms of the host.
    Automorphisms,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: Budget,
    pub threads: usize,
    /// Run the canonical sequential order (reproducible witnesses).
    pub deterministic: bool,
    pub symmetry: Symmetry,
    /// Depth at which the parallel search splits into independent subtrees.
    pub split_depth: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: Budget::default(),
            threads: 1,
            deterministic: true,
            symmetry: Symmetry::ColorSwap,
            split_depth: 10,
        }
    }
}

impl SearchOptions {
    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_symmetry(mut self, symmetry: Symmetry) -> Self {
        self.symmetry = symmetry;
        self
    }

    /// Parallel, non-deterministic search on `threads` workers.
    pub fn parallel(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self.deterministic = threads <= 1;
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub prunes: u64,
    pub wall_ms: f64,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.nodes += other.nodes;
        self.prunes += other.prunes;
        self.wall_ms += other.wall_ms;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Arrows,
    NotArrows,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ArrowingResult {
    pub verdict: Verdict,
    /// A colouring with no monochromatic copy; present iff `NotArrows`.
    pub witness: Option<EdgeColoring>,
    pub stats: SearchStats,
}

impl ArrowingResult {
    pub fn arrows(&self) -> bool {
        self.verdict == Verdict::Arrows
    }

    /// The JSON report `{"verdict", "witness"?, "stats"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut doc = serde_json::json!({
            "verdict": self.verdict,
            "stats": self.stats,
        });
        if let Some(w) = &self.witness {
            doc["witness"] = serde_json::from_str(&w.to_json()).expect("valid json");
        }
        doc
    }
}

/// Budget bookkeeping shared by every search issued by one public call.
struct Ctx<'o> {
    opts: &'o SearchOptions,
    deadline: Option<Instant>,
    stats: SearchStats,
}

impl<'o> Ctx<'o> {
    fn new(opts: &'o SearchOptions) -> Self {
        Ctx {
            opts,
            deadline: opts.budget.timeout.map(|t| Instant::now() + t),
            stats: SearchStats::default(),
        }
    }

    /// Looks for a colouring of `host` extending `fixed` with no
    /// monochromatic copy of the matcher's pattern.
    fn extension(
        &mut self,
        host: &Graph,
        matcher: &Matcher,
        fixed: &[(Edge, Color)],
    ) -> Result<Option<EdgeColoring>, EngineError> {
        let limits = Limits {
            deadline: self.deadline,
            max_nodes: self
                .opts
                .budget
                .max_nodes
                .map(|m| m.saturating_sub(self.stats.nodes)),
        };
        let (outcome, stats) = search::solve(host, matcher, fixed, self.opts, &limits);
        self.stats.absorb(&stats);
        match outcome {
            Outcome::Exhausted => Ok(None),
            Outcome::Found(c) => Ok(Some(c)),
            Outcome::OutOfBudget => Err(EngineError::BudgetExhausted(self.stats)),
        }
    }

    fn arrows(&mut self, host: &Graph, matcher: &Matcher) -> Result<bool, EngineError> {
        Ok(self.extension(host, matcher, &[])?.is_none())
    }
}

fn target_matcher(h: &Graph) -> Result<Matcher, EngineError> {
    let m = Matcher::new(h);
    if m.pattern_edges() == 0 {
        return Err(EngineError::EdgelessTarget);
    }
    Ok(m)
}

fn check_edge(g: &Graph, e: Edge) -> Result<Edge, EngineError> {
    if g.has_edge(e.0, e.1) {
        Ok(edge(e.0, e.1))
    } else {
        Err(EngineError::MissingEdge(e.0, e.1))
    }
}

/// Decides `f → h`: does every red/blue colouring of `f` contain a
/// monochromatic copy of `h`?
pub fn arrows(f: &Graph, h: &Graph, opts: &SearchOptions) -> Result<ArrowingResult, EngineError> {
    let matcher = target_matcher(h)?;
    let mut ctx = Ctx::new(opts);
    let witness = ctx.extension(f, &matcher, &[])?;
    Ok(ArrowingResult {
        verdict: if witness.is_some() { Verdict::NotArrows } else { Verdict::Arrows },
        witness,
        stats: ctx.stats,
    })
}

/// A colouring of `f` that agrees with `fixed` and has no monochromatic copy
/// of `h`, if one exists.
pub fn find_mono_free_extension(
    f: &Graph,
    h: &Graph,
    fixed: &[(Edge, Color)],
    opts: &SearchOptions,
) -> Result<Option<EdgeColoring>, EngineError> {
    let matcher = target_matcher(h)?;
    let fixed = normalise_fixed(f, fixed)?;
    Ctx::new(opts).extension(f, &matcher, &fixed)
}

/// True iff every colouring of `f` agreeing with `fixed` has a monochromatic
/// copy of `h`, i.e. `f` arrows `h` relative to the partial colouring.
pub fn arrows_relative(
    f: &Graph,
    h: &Graph,
    fixed: &[(Edge, Color)],
    opts: &SearchOptions,
) -> Result<bool, EngineError> {
    Ok(find_mono_free_extension(f, h, fixed, opts)?.is_none())
}

fn normalise_fixed(f: &Graph, fixed: &[(Edge, Color)]) -> Result<Vec<(Edge, Color)>, EngineError> {
    let mut out: Vec<(Edge, Color)> = Vec::with_capacity(fixed.len());
    for &(e, c) in fixed {
        let e = check_edge(f, e)?;
        match out.iter().find(|(x, _)| *x == e) {
            // Contradictory pins admit no colouring at all.
            Some(&(_, prev)) if prev != c => return Ok(vec![(e, prev), (e, c)]),
            Some(_) => {}
            None => out.push((e, c)),
        }
    }
    Ok(out)
}

/// True iff every colouring of `g` with no monochromatic copy of `h` gives all
/// of `edges` one colour.
pub fn forces_equal_colors(g: &Graph, h: &Graph, edges: &[Edge], opts: &SearchOptions) -> Result<bool, EngineError> {
    let matcher = target_matcher(h)?;
    let edges = edges.iter().map(|&e| check_edge(g, e)).collect::<Result<Vec<_>, _>>()?;
    let mut ctx = Ctx::new(opts);
    // Up to a colour swap the first edge is red; any discordant colouring
    // then has some other edge blue.
    for &other in edges.iter().skip(1) {
        if other == edges[0] {
            continue;
        }
        let fixed = [(edges[0], Color::Red), (other, Color::Blue)];
        if ctx.extension(g, &matcher, &fixed)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `f →^ε h`: every induced subgraph on at least `eps·|V(f)|` vertices
/// arrows `h`.
///
/// Arrowing is inherited by supergraphs, so only the smallest qualifying
/// subsets are searched.
pub fn epsilon_arrows(f: &Graph, h: &Graph, eps: f64, opts: &SearchOptions) -> Result<bool, EngineError> {
    if !(eps > 0.0 && eps <= 1.0) {
        return Err(EngineError::InvalidEpsilon(eps));
    }
    let matcher = target_matcher(h)?;
    let n = f.n();
    let min_size = ((eps * n as f64) - 1e-9).ceil().max(0.0) as usize;
    if min_size > n {
        return Ok(true);
    }
    let mut ctx = Ctx::new(opts);
    let all: Vec<usize> = (0..n).collect();
    for subset in graph::k_subsets(&all, min_size) {
        let (sub, _) = induced_subgraph(f, &subset).expect("subset of vertex range");
        if !ctx.arrows(&sub, &matcher)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `f` is Ramsey `h`-minimal: `f → h`, `f` has no isolated vertex, and no
/// single-edge deletion still arrows.
///
/// Single-edge deletions suffice: every proper subgraph without isolated
/// vertices sits inside some `f - e`, and arrowing passes to supergraphs, so
/// if no `f - e` arrows then no proper subgraph does.
pub fn is_ramsey_minimal(f: &Graph, h: &Graph, opts: &SearchOptions) -> Result<bool, EngineError> {
    let matcher = target_matcher(h)?;
    let mut ctx = Ctx::new(opts);
    if !f.isolated_vertices().is_empty() || !ctx.arrows(f, &matcher)? {
        return Ok(false);
    }
    for (u, v) in f.edges() {
        if ctx.arrows(&f.without_edge(u, v), &matcher)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Deletes edges in lexicographic order whenever the remainder still arrows
/// `h`, then drops isolated vertices.
///
/// One pass is enough: an edge kept because `G - e` did not arrow stays
/// necessary in every later, smaller `G' - e`.
pub fn extract_minimal_subgraph(f: &Graph, h: &Graph, opts: &SearchOptions) -> Result<Graph, EngineError> {
    let matcher = target_matcher(h)?;
    let mut ctx = Ctx::new(opts);
    if !ctx.arrows(f, &matcher)? {
        return Err(EngineError::DoesNotArrow);
    }
    let mut current = f.clone();
    for (u, v) in f.edges() {
        let smaller = current.without_edge(u, v);
        if ctx.arrows(&smaller, &matcher)? {
            current = smaller;
        }
    }
    let keep: Vec<usize> = (0..current.n()).filter(|&v| current.degree(v) > 0).collect();
    let (minimal, _) = induced_subgraph(&current, &keep).expect("kept vertices are in range");
    Ok(minimal)
}

/// Smallest `n <= n_max` with `K_n → h`.
pub fn ramsey_number_desk(h: &Graph, n_max: usize, opts: &SearchOptions) -> Result<Option<usize>, EngineError> {
    let matcher = target_matcher(h)?;
    let mut ctx = Ctx::new(opts);
    for n in h.n()..=n_max {
        if ctx.arrows(&Graph::complete(n), &matcher)? {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Best (smallest) minimum degree over Ramsey-minimal subgraphs extracted
/// from candidate graphs. An upper bound on `s(h)`, never a claim of
/// exactness.
#[derive(Clone, Debug, PartialEq)]
pub struct MinDegreeBound {
    pub best: usize,
    pub witness: Graph,
    /// Index of the candidate the witness was extracted from.
    pub candidate: usize,
}

pub fn s_min_degree_witness_search(
    h: &Graph,
    universe: &[Graph],
    opts: &SearchOptions,
) -> Result<MinDegreeBound, EngineError> {
    let matcher = target_matcher(h)?;
    let mut best: Option<MinDegreeBound> = None;
    for (i, f) in universe.iter().enumerate() {
        if !Ctx::new(opts).arrows(f, &matcher)? {
            continue;
        }
        let minimal = extract_minimal_subgraph(f, h, opts)?;
        let delta = minimal.min_degree();
        if best.as_ref().is_none_or(|b| delta < b.best) {
            best = Some(MinDegreeBound {
                best: delta,
                witness: minimal,
                candidate: i,
            });
        }
    }
    best.ok_or(EngineError::NoCandidateArrows)
}

fn check_sender_shape(g: &Graph, e: Edge, f: Edge) -> Result<(Edge, Edge), EngineError> {
    let e = check_edge(g, e)?;
    let f = check_edge(g, f)?;
    if e.0 == f.0 || e.0 == f.1 || e.1 == f.0 || e.1 == f.1 {
        return Err(EngineError::NotDisjoint(e, f));
    }
    Ok((e, f))
}

/// Positive signal sender test: `g ↛ h`, and every colouring of `g` with no
/// monochromatic `h` gives `e` and `f` the same colour.
pub fn is_signal_sender(g: &Graph, e: Edge, f: Edge, h: &Graph, opts: &SearchOptions) -> Result<bool, EngineError> {
    let (e, f) = check_sender_shape(g, e, f)?;
    let matcher = target_matcher(h)?;
    let mut ctx = Ctx::new(opts);
    if ctx.arrows(g, &matcher)? {
        return Err(EngineError::GraphArrowsH);
    }
    Ok(ctx
        .extension(g, &matcher, &[(e, Color::Red), (f, Color::Blue)])?
        .is_none())
}

/// Runs [`is_signal_sender`] and, on success, returns a verified certificate
/// carrying a colouring with `e` and `f` both red.
pub fn certify_signal_sender(
    g: &Graph,
    e: Edge,
    f: Edge,
    h: &Graph,
    opts: &SearchOptions,
) -> Result<Option<GadgetCertificate>, EngineError> {
    if !is_signal_sender(g, e, f, h, opts)? {
        return Ok(None);
    }
    let (e, f) = (edge(e.0, e.1), edge(f.0, f.1));
    let coloring = find_mono_free_extension(g, h, &[(e, Color::Red), (f, Color::Red)], opts)?
        .expect("a sender admits a mono-free colouring, which is red on e and f up to a swap");
    Ok(Some(GadgetCertificate {
        graph: g.clone(),
        target: h.clone(),
        kind: GadgetKind::SignalSender { e, f },
        coloring: Some(coloring),
        verified: Verification::Exhaustive,
    }))
}

/// BEL property of a certificate: (a) the gadget graph does not arrow `h`;
/// (b) every colouring without a monochromatic `h` restricts on the embedded
/// template to `ψ` or to `ψ` with colours swapped (one global swap).
pub fn verify_bel_property(cert: &GadgetCertificate, h: &Graph, opts: &SearchOptions) -> Result<bool, EngineError> {
    let GadgetKind::BelGadget { template, embedding, psi } = &cert.kind else {
        return Err(EngineError::InvalidCertificate("not a BEL gadget".into()));
    };
    cert.check_template(template, embedding, psi)?;
    let matcher = target_matcher(h)?;
    let mut ctx = Ctx::new(opts);
    if ctx.arrows(&cert.graph, &matcher)? {
        return Ok(false);
    }
    let image = |(u, v): Edge| edge(embedding[u], embedding[v]);
    let entries = psi.entries();
    let Some(&(anchor, anchor_color)) = entries.first() else {
        return Ok(true);
    };
    for &(other, other_color) in &entries[1..] {
        let fixed = [(image(anchor), anchor_color), (image(other), other_color.flip())];
        if ctx.extension(&cert.graph, &matcher, &fixed)?.is_some() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether `g` plus one new vertex joined to `subset` contains a copy of `h`.
pub fn apex_completes_copy(g: &Graph, subset: &[usize], h: &Graph) -> Result<bool, EngineError> {
    if let Some(&v) = subset.iter().find(|&&v| v >= g.n()) {
        return Err(EngineError::VertexOutOfRange(v));
    }
    let extended = g.with_vertex(subset).expect("checked range");
    let matcher = Matcher::new(h);
    let apex = g.n();
    Ok(if h.isolated_vertices().is_empty() {
        matcher.find_with_vertex(extended.matrix(), apex).is_some()
    } else {
        matcher.find(extended.matrix()).is_some()
    })
}

/// Apex property of an independent set `s` in `g`: `g` has no copy of `h`,
/// and joining a new vertex to any `d` vertices of `s` creates one.
pub fn verify_apex_property(g: &Graph, s: &[usize], d: usize, h: &Graph) -> Result<bool, EngineError> {
    if let Some(&v) = s.iter().find(|&&v| v >= g.n()) {
        return Err(EngineError::VertexOutOfRange(v));
    }
    if s.len() < d {
        return Err(EngineError::SetTooSmall { have: s.len(), need: d });
    }
    if !g.is_independent(s) {
        return Err(EngineError::NotIndependent);
    }
    if graph::find_embedding(h, g).is_some() {
        return Ok(false);
    }
    for subset in graph::k_subsets(s, d) {
        if !apex_completes_copy(g, &subset, h)? {
            return Ok(false);
        }
    }
    Ok(true)
}
