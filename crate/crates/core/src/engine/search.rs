//! Depth-first search over red/blue assignments to the edges of a host graph,
//! pruning as soon as a partial colouring completes a monochromatic copy of
//! the target.
//!
//! Edges are branched in a fixed order: pre-coloured edges first, then by
//! degree sum (descending) with ties broken lexicographically. After an edge
//! is coloured only copies through that edge can be new, so the test is a
//! rooted embedding search from the edge's endpoints.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::{SearchOptions, SearchStats, Symmetry};
use crate::bits::BitMatrix;
use crate::coloring::{Color, EdgeColoring};
use crate::graph::{edge, Edge, Graph, Matcher};

/// Cap on automorphisms collected for lex-leader pruning.
const MAX_AUTOMORPHISMS: usize = 256;

pub(crate) enum Outcome {
    /// Every colouring consistent with the fixed edges has a monochromatic copy.
    Exhausted,
    /// A colouring with no monochromatic copy.
    Found(EdgeColoring),
    OutOfBudget,
}

pub(crate) struct Limits {
    pub deadline: Option<Instant>,
    pub max_nodes: Option<u64>,
}

pub(crate) fn solve(
    host: &Graph,
    matcher: &Matcher,
    fixed: &[(Edge, Color)],
    opts: &SearchOptions,
    limits: &Limits,
) -> (Outcome, SearchStats) {
    let start = Instant::now();
    let order = search_order(host, fixed);
    let mut forced = vec![None; order.len()];
    for (i, slot) in forced.iter_mut().enumerate().take(fixed.len()) {
        *slot = Some(fixed[i].1);
    }
    let unconstrained = fixed.is_empty();
    let swap_fix = unconstrained && opts.symmetry != Symmetry::None;
    let lex = if unconstrained && opts.symmetry == Symmetry::Automorphisms {
        automorphism_perms(host, &order)
    } else {
        Vec::new()
    };
    let shared = Shared {
        nodes: AtomicU64::new(0),
        prunes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        out_of_budget: AtomicBool::new(false),
        deadline: limits.deadline,
        max_nodes: limits.max_nodes.unwrap_or(u64::MAX),
    };
    let spec = Spec {
        n: host.n(),
        order: &order,
        forced: &forced,
        lex: &lex,
        swap_fix,
        matcher,
        shared: &shared,
    };

    let parallel = opts.threads > 1 && !opts.deterministic && order.len() > opts.split_depth;
    let outcome = if parallel {
        solve_parallel(&spec, opts)
    } else {
        let mut w = Worker::new(&spec, None);
        match w.dfs(0) {
            Step::Found => Outcome::Found(w.witness()),
            Step::Exhausted => Outcome::Exhausted,
            Step::Stopped => Outcome::OutOfBudget,
        }
    };
    let stats = SearchStats {
        nodes: shared.nodes.load(Ordering::Relaxed),
        prunes: shared.prunes.load(Ordering::Relaxed),
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    (outcome, stats)
}

fn solve_parallel(spec: &Spec<'_>, opts: &SearchOptions) -> Outcome {
    let mut collector = Worker::new(spec, Some(opts.split_depth));
    match collector.dfs(0) {
        Step::Found => return Outcome::Found(collector.witness()),
        Step::Stopped => return Outcome::OutOfBudget,
        Step::Exhausted => {}
    }
    let frontier = std::mem::take(&mut collector.frontier);
    let run = || {
        frontier
            .par_iter()
            .enumerate()
            .map(|(i, prefix)| {
                let mut w = Worker::new(spec, None);
                w.replay(prefix);
                match w.dfs(prefix.len()) {
                    Step::Found => (i, Some(w.witness()), false),
                    Step::Exhausted => (i, None, false),
                    Step::Stopped => (i, None, true),
                }
            })
            .collect::<Vec<_>>()
    };
    let results = match rayon::ThreadPoolBuilder::new().num_threads(opts.threads).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    };
    let mut budget_hit = false;
    for (_, witness, stopped) in results {
        if let Some(w) = witness {
            return Outcome::Found(w);
        }
        budget_hit |= stopped;
    }
    if budget_hit || spec.shared.out_of_budget.load(Ordering::Relaxed) {
        Outcome::OutOfBudget
    } else {
        Outcome::Exhausted
    }
}

/// Fixed edges first, then the rest by descending degree sum.
fn search_order(host: &Graph, fixed: &[(Edge, Color)]) -> Vec<Edge> {
    let fixed_edges: Vec<Edge> = fixed.iter().map(|&(e, _)| e).collect();
    let mut rest: Vec<Edge> = host
        .edges()
        .into_iter()
        .filter(|e| !fixed_edges.contains(e))
        .collect();
    rest.sort_by_key(|&(u, v)| (std::cmp::Reverse(host.degree(u) + host.degree(v)), u, v));
    fixed_edges.into_iter().chain(rest).collect()
}

/// Non-identity automorphisms of `host`, as permutations of search positions.
fn automorphism_perms(host: &Graph, order: &[Edge]) -> Vec<Vec<usize>> {
    let mut position = std::collections::HashMap::with_capacity(order.len());
    for (i, &e) in order.iter().enumerate() {
        position.insert(e, i);
    }
    let mut perms = Vec::new();
    let matcher = Matcher::new(host);
    matcher.for_each(host.matrix(), &mut |map| {
        let perm: Vec<usize> = order
            .iter()
            .map(|&(u, v)| position[&edge(map[u], map[v])])
            .collect();
        if perm.iter().enumerate().any(|(i, &p)| i != p) {
            perms.push(perm);
        }
        perms.len() >= MAX_AUTOMORPHISMS
    });
    perms
}

struct Shared {
    nodes: AtomicU64,
    prunes: AtomicU64,
    stop: AtomicBool,
    out_of_budget: AtomicBool,
    deadline: Option<Instant>,
    max_nodes: u64,
}

struct Spec<'a> {
    n: usize,
    order: &'a [Edge],
    forced: &'a [Option<Color>],
    lex: &'a [Vec<usize>],
    swap_fix: bool,
    matcher: &'a Matcher,
    shared: &'a Shared,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Step {
    Exhausted,
    Found,
    Stopped,
}

struct Worker<'a> {
    spec: &'a Spec<'a>,
    red: BitMatrix,
    blue: BitMatrix,
    colors: Vec<Color>,
    split_at: Option<usize>,
    frontier: Vec<Vec<Color>>,
}

impl<'a> Worker<'a> {
    fn new(spec: &'a Spec<'a>, split_at: Option<usize>) -> Self {
        Worker {
            spec,
            red: BitMatrix::new(spec.n),
            blue: BitMatrix::new(spec.n),
            colors: Vec::with_capacity(spec.order.len()),
            split_at,
            frontier: Vec::new(),
        }
    }

    fn class(&mut self, c: Color) -> &mut BitMatrix {
        match c {
            Color::Red => &mut self.red,
            Color::Blue => &mut self.blue,
        }
    }

    fn replay(&mut self, prefix: &[Color]) {
        for (i, &c) in prefix.iter().enumerate() {
            let (u, v) = self.spec.order[i];
            self.class(c).insert(u, v);
            self.colors.push(c);
        }
    }

    fn witness(&self) -> EdgeColoring {
        let mut entries: Vec<(Edge, Color)> = self
            .spec
            .order
            .iter()
            .copied()
            .zip(self.colors.iter().copied())
            .collect();
        entries.sort_by_key(|&(e, _)| e);
        EdgeColoring::from_sorted_parts(self.spec.n, entries)
    }

    fn budget_exceeded(&self) -> bool {
        let shared = self.spec.shared;
        let nodes = shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        let over = nodes > shared.max_nodes
            || (nodes.is_multiple_of(256) && shared.deadline.is_some_and(|d| Instant::now() >= d));
        if over {
            shared.out_of_budget.store(true, Ordering::Relaxed);
            shared.stop.store(true, Ordering::Relaxed);
        }
        over
    }

    fn dfs(&mut self, pos: usize) -> Step {
        let spec = self.spec;
        if spec.shared.stop.load(Ordering::Relaxed) {
            return Step::Stopped;
        }
        if pos == spec.order.len() {
            spec.shared.stop.store(true, Ordering::Relaxed);
            return Step::Found;
        }
        if self.split_at == Some(pos) {
            self.frontier.push(self.colors.clone());
            return Step::Exhausted;
        }
        let (u, v) = spec.order[pos];
        let choices: &[Color] = match spec.forced[pos] {
            Some(Color::Red) => &[Color::Red],
            Some(Color::Blue) => &[Color::Blue],
            None if pos == 0 && spec.swap_fix => &[Color::Red],
            None => &Color::BOTH,
        };
        for &c in choices {
            if self.budget_exceeded() {
                return Step::Stopped;
            }
            self.class(c).insert(u, v);
            self.colors.push(c);
            let class = match c {
                Color::Red => &self.red,
                Color::Blue => &self.blue,
            };
            let pruned = spec.matcher.has_copy_with_edge(class, u, v) || !self.lex_ok(pos);
            let step = if pruned {
                spec.shared.prunes.fetch_add(1, Ordering::Relaxed);
                Step::Exhausted
            } else {
                self.dfs(pos + 1)
            };
            if step == Step::Found {
                return step;
            }
            self.colors.pop();
            self.class(c).remove(u, v);
            if step == Step::Stopped {
                return step;
            }
        }
        Step::Exhausted
    }

    /// Partial lex-leader test: the colouring must not exceed its image under
    /// any stored automorphism, compared on already-decided positions.
    fn lex_ok(&self, assigned_upto: usize) -> bool {
        'perm: for perm in self.spec.lex {
            for (i, &j) in perm.iter().enumerate().take(assigned_upto + 1) {
                if j > assigned_upto {
                    continue 'perm;
                }
                match self.colors[i].cmp(&self.colors[j]) {
                    std::cmp::Ordering::Less => continue 'perm,
                    std::cmp::Ordering::Greater => return false,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        true
    }
}
