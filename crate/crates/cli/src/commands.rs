use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ramsey_forge::constructions::{
    chain_senders, make_apex_gadget, make_clique_transversal_gadget, make_h_t_d, make_join_gadget,
    make_simplicity_witness, make_weak_bel_frame, weak_to_strong_frame,
};
use ramsey_forge::engine::{
    self, apex_completes_copy, certify_signal_sender, epsilon_arrows, find_mono_free_extension, is_ramsey_minimal,
    is_signal_sender, ramsey_number_desk, s_min_degree_witness_search, verify_apex_property, verify_bel_property,
};
use ramsey_forge::graph::codec::{self, CodecError};
use ramsey_forge::{
    canonical_hash, find_embedding, monochromatic_copy, Color, ColoringError, ConstructionError, Edge, EdgeColoring,
    EngineError, GadgetCertificate, GadgetKind, Graph, GraphError, SearchOptions, SearchStats,
};
use serde_json::{json, Map, Value};

use crate::io::{self, Format};
use crate::{Check, Config, ConstructArgs, Construction, SearchKind};

pub const HOLDS: u8 = 0;
pub const FAILS: u8 = 1;
pub const USAGE: u8 = 2;
pub const BUDGET: u8 = 3;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Budget(SearchStats),
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::BudgetExhausted(stats) => CliError::Budget(stats),
            other => CliError::Usage(other.to_string()),
        }
    }
}

macro_rules! usage_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Usage(e.to_string())
            }
        }
    )*};
}

usage_from!(ConstructionError, GraphError, CodecError, ColoringError);

pub struct Done {
    pub report: Value,
    pub code: u8,
}

pub fn zero_wall_clock(v: &mut Value) {
    match v {
        Value::Object(map) => {
            for (k, x) in map.iter_mut() {
                if k == "wall_ms" {
                    *x = json!(0.0);
                } else {
                    zero_wall_clock(x);
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(zero_wall_clock),
        _ => {}
    }
}

/// Collects the report and places artifacts: in files when `--output` is
/// set, inline in the report otherwise.
struct Sink<'a> {
    out: Option<&'a Path>,
    format: Format,
    report: Map<String, Value>,
    files: Vec<String>,
}

impl<'a> Sink<'a> {
    fn new(config: &'a Config) -> Self {
        Sink {
            out: config.output.as_deref(),
            format: config.format(),
            report: Map::new(),
            files: Vec::new(),
        }
    }

    fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.report.insert(key.to_string(), value.into());
    }

    /// `tag = None` writes to the output path itself, otherwise to a sibling.
    /// A colouring goes next to its graph as `<stem>.coloring.json`.
    fn graph(&mut self, key: &str, tag: Option<&str>, g: &Graph, psi: Option<&EdgeColoring>) -> Result<(), CliError> {
        let Some(out) = self.out else {
            self.set(key, io::graph_value(g));
            if let Some(c) = psi {
                self.set(&format!("{key}_coloring"), io::coloring_value(c));
            }
            return Ok(());
        };
        let path = match tag {
            None => out.to_path_buf(),
            Some(t) => io::sibling(out, t, self.format.extension()),
        };
        io::write(&path, &io::render_graph(g, psi, self.format)?)?;
        self.files.push(path.display().to_string());
        if let Some(c) = psi {
            let cpath = io::sibling(&path, "coloring", "json");
            io::write(&cpath, &(c.to_json() + "\n"))?;
            self.files.push(cpath.display().to_string());
        }
        Ok(())
    }

    /// A witness colouring of `host`: DOT when asked for, JSON otherwise.
    fn coloring(&mut self, key: &str, host: &Graph, c: &EdgeColoring) -> Result<(), CliError> {
        let Some(out) = self.out else {
            self.set(key, io::coloring_value(c));
            return Ok(());
        };
        let text = match self.format {
            Format::Dot => codec::to_dot(host, Some(c)),
            _ => c.to_json() + "\n",
        };
        io::write(out, &text)?;
        self.files.push(out.display().to_string());
        Ok(())
    }

    fn finish(mut self, code: u8) -> Done {
        if !self.files.is_empty() {
            self.report.insert("files".into(), json!(self.files));
        }
        Done {
            report: Value::Object(self.report),
            code,
        }
    }
}

fn need<T: Clone>(value: &Option<T>, flag: &str) -> Result<T, CliError> {
    value.clone().ok_or_else(|| CliError::Usage(format!("{flag} is required")))
}

fn role_edge(g: &Graph, name: &str) -> Result<Edge, CliError> {
    match g.role(name) {
        Some(&[u, v]) => Ok((u, v)),
        _ => Err(CliError::Usage(format!("graph needs a role `{name}` with exactly two vertices"))),
    }
}

fn certified_sender(spec: &str, h: &Graph, opts: &SearchOptions) -> Result<GadgetCertificate, CliError> {
    let g = io::load_graph(spec)?;
    let (e, f) = (role_edge(&g, "e")?, role_edge(&g, "f")?);
    certify_signal_sender(&g, e, f, h, opts)?
        .ok_or_else(|| CliError::Usage(format!("{spec}: not a signal sender for the target")))
}

pub fn construct(config: &Config, a: &ConstructArgs) -> Result<Done, CliError> {
    let opts = config.search_options();
    let mut sink = Sink::new(config);
    let target = || io::load_graph(&need(&a.h, "--h")?);
    let (graph, psi) = match a.name {
        Construction::HTD => (make_h_t_d(need(&a.t, "--t")?, need(&a.d, "--d")?)?, None),
        Construction::CliqueTransversal => {
            let c = make_clique_transversal_gadget(need(&a.t, "--t")?, need(&a.d, "--d")?)?;
            (c.graph, c.psi)
        }
        Construction::JoinGadget => {
            let r0 = io::load_graph(&need(&a.r0, "--r0")?)?;
            let parts = a.components.iter().map(|s| io::load_graph(s)).collect::<Result<Vec<_>, _>>()?;
            let c = make_join_gadget(&r0, &parts, need(&a.t, "--t")?)?;
            (c.graph, c.psi)
        }
        Construction::ApexGadget => {
            let c = make_apex_gadget(&target()?, a.v)?;
            (c.graph, c.psi)
        }
        Construction::SimplicityWitness => {
            let w = make_simplicity_witness(&target()?, a.v, None)?;
            sink.graph("frame", Some("frame"), &w.frame.graph, w.frame.psi.as_ref())?;
            sink.set("apex", w.apex);
            (w.graph, None)
        }
        Construction::ChainSenders => {
            let [first, second] = a.inputs.as_slice() else {
                return Err(CliError::Usage("--inputs takes two sender graphs".into()));
            };
            let h = target()?;
            let chained = chain_senders(&certified_sender(first, &h, &opts)?, &certified_sender(second, &h, &opts)?)?;
            sink.set("sender_verified", false);
            (chained.graph, chained.coloring)
        }
        Construction::WeakBelFrame => {
            let h = target()?;
            let g0 = io::load_graph(&need(&a.g0, "--g0")?)?;
            let g1 = io::load_graph(&need(&a.g1, "--g1")?)?;
            let sender = certified_sender(&need(&a.sender, "--sender")?, &h, &opts)?;
            let c = make_weak_bel_frame(&g0, &g1, &sender)?;
            (c.graph, c.psi)
        }
        Construction::WeakToStrong => {
            let h = target()?;
            let g = io::load_graph(&need(&a.g, "--g")?)?;
            let psi = io::load_coloring(&need(&a.coloring, "--coloring")?, &g)?;
            let (g0, g1) = weak_to_strong_frame(&g, &psi, &h)?;
            sink.graph("g1", Some("g1"), &g1, None)?;
            (g0, None)
        }
    };
    let name = clap::ValueEnum::to_possible_value(&a.name).expect("named variant");
    sink.set("construction", name.get_name());
    sink.set("vertices", graph.n());
    sink.set("edges", graph.edge_count());
    sink.set("roles", graph.roles().keys().cloned().collect::<Vec<_>>());
    sink.graph("graph", None, &graph, psi.as_ref())?;
    Ok(sink.finish(HOLDS))
}

pub fn arrow(config: &Config, f: &str, h: &str) -> Result<Done, CliError> {
    let (f, h) = (io::load_graph(f)?, io::load_graph(h)?);
    let result = engine::arrows(&f, &h, &config.search_options())?;
    let mut sink = Sink::new(config);
    if let Value::Object(map) = result.to_json() {
        sink.report = map;
    }
    sink.report.remove("witness");
    if let Some(w) = &result.witness {
        sink.coloring("witness", &f, w)?;
    }
    Ok(sink.finish(if result.arrows() { HOLDS } else { FAILS }))
}

fn verdict(sink: &mut Sink, check: &str, holds: bool) -> u8 {
    sink.set("check", check);
    sink.set("holds", holds);
    if holds {
        HOLDS
    } else {
        FAILS
    }
}

pub fn verify(config: &Config, check: &Check) -> Result<Done, CliError> {
    let opts = config.search_options();
    let mut sink = Sink::new(config);
    let code = match check {
        Check::MonoFree { g, coloring, h } => {
            let (g, h) = (io::load_graph(g)?, io::load_graph(h)?);
            let c = io::load_coloring(coloring, &g)?;
            let hit = monochromatic_copy(&c, &h);
            if let Some(hit) = &hit {
                sink.set("color", json!(hit.color));
                sink.set("embedding", hit.embedding.map().to_vec());
            }
            verdict(&mut sink, "mono_free", hit.is_none())
        }
        Check::Minimal { f, h } => {
            let (f, h) = (io::load_graph(f)?, io::load_graph(h)?);
            let holds = is_ramsey_minimal(&f, &h, &opts)?;
            if !holds {
                explain_not_minimal(&mut sink, &f, &h, &opts)?;
            }
            verdict(&mut sink, "ramsey_minimal", holds)
        }
        Check::Sender { g, h } => {
            let (g, h) = (io::load_graph(g)?, io::load_graph(h)?);
            let (e, f) = (role_edge(&g, "e")?, role_edge(&g, "f")?);
            let holds = match is_signal_sender(&g, e, f, &h, &opts) {
                Err(EngineError::GraphArrowsH) => {
                    sink.set("reason", "the graph arrows the target");
                    false
                }
                other => other?,
            };
            if !holds && !sink.report.contains_key("reason") {
                let fixed = [(e, Color::Red), (f, Color::Blue)];
                let w = find_mono_free_extension(&g, &h, &fixed, &opts)?.expect("a non-sender has a discordant colouring");
                sink.set("reason", "a mono-free colouring gives e and f different colours");
                sink.coloring("witness", &g, &w)?;
            }
            verdict(&mut sink, "signal_sender", holds)
        }
        Check::Apex { g, h, d, s } => {
            let (g, h) = (io::load_graph(g)?, io::load_graph(h)?);
            let s = match s {
                Some(s) => s.clone(),
                None => g
                    .role("S")
                    .ok_or_else(|| CliError::Usage("pass --s or give the graph a role `S`".into()))?
                    .to_vec(),
            };
            let holds = verify_apex_property(&g, &s, *d, &h)?;
            if !holds {
                if let Some(e) = find_embedding(&h, &g) {
                    sink.set("reason", "the graph contains the target");
                    sink.set("embedding", e.map().to_vec());
                } else if let Some(bad) = first_incomplete_subset(&g, &s, *d, &h)? {
                    sink.set("reason", "joining a vertex to this subset creates no copy of the target");
                    sink.set("subset", bad);
                }
            }
            verdict(&mut sink, "apex", holds)
        }
        Check::Bel { g, h, template, embedding, psi } => {
            let (g, h, template) = (io::load_graph(g)?, io::load_graph(h)?, io::load_graph(template)?);
            let psi = io::load_coloring(psi, &template)?;
            let kind = GadgetKind::BelGadget {
                template,
                embedding: embedding.clone(),
                psi,
            };
            let cert = GadgetCertificate::unchecked(g, h.clone(), kind);
            let holds = verify_bel_property(&cert, &h, &opts)?;
            verdict(&mut sink, "bel", holds)
        }
        Check::Epsilon { f, h, eps } => {
            let (f, h) = (io::load_graph(f)?, io::load_graph(h)?);
            let holds = epsilon_arrows(&f, &h, *eps, &opts)?;
            sink.set("epsilon", *eps);
            verdict(&mut sink, "epsilon_arrows", holds)
        }
    };
    Ok(sink.finish(code))
}

fn explain_not_minimal(sink: &mut Sink, f: &Graph, h: &Graph, opts: &SearchOptions) -> Result<(), CliError> {
    if let Some(&v) = f.isolated_vertices().first() {
        sink.set("reason", "isolated vertex");
        sink.set("vertex", v);
        return Ok(());
    }
    let whole = engine::arrows(f, h, opts)?;
    if let Some(w) = &whole.witness {
        sink.set("reason", "the graph does not arrow the target");
        return sink.coloring("witness", f, w);
    }
    for (u, v) in f.edges() {
        if engine::arrows(&f.without_edge(u, v), h, opts)?.arrows() {
            sink.set("reason", "deleting this edge still arrows the target");
            sink.set("edge", vec![u, v]);
            break;
        }
    }
    Ok(())
}

fn first_incomplete_subset(g: &Graph, s: &[usize], d: usize, h: &Graph) -> Result<Option<Vec<usize>>, CliError> {
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        let subset: Vec<usize> = idx.iter().map(|&i| s[i]).collect();
        if !apex_completes_copy(g, &subset, h)? {
            return Ok(Some(subset));
        }
        // Next combination in lex order.
        let Some(i) = (0..d).rev().find(|&i| idx[i] < s.len() - d + i) else {
            return Ok(None);
        };
        idx[i] += 1;
        for j in i + 1..d {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn search(config: &Config, kind: &SearchKind) -> Result<Done, CliError> {
    let opts = config.search_options();
    let mut sink = Sink::new(config);
    match kind {
        SearchKind::RamseyNumber { h, n_max } => {
            let h = io::load_graph(h)?;
            sink.set("kind", "ramsey_number");
            sink.set("n_max", *n_max);
            match ramsey_number_desk(&h, *n_max, &opts)? {
                Some(n) => {
                    sink.set("value", n);
                    sink.set("status", "exact within bound");
                }
                None => {
                    sink.set("value", Value::Null);
                    sink.set("status", format!("not found <= {n_max}"));
                }
            }
        }
        SearchKind::SUpper { h, candidates } => {
            let h = io::load_graph(h)?;
            let mut universe = Vec::new();
            for spec in candidates {
                universe.extend(io::load_graphs(spec)?);
            }
            sink.set("kind", "s_upper");
            sink.set("candidates", universe.len());
            match s_min_degree_witness_search(&h, &universe, &opts) {
                Ok(bound) => {
                    sink.set("value", bound.best);
                    sink.set("status", "upper bound only");
                    sink.set("candidate", bound.candidate);
                    sink.graph("witness", None, &bound.witness, None)?;
                }
                Err(EngineError::NoCandidateArrows) => {
                    sink.set("value", Value::Null);
                    sink.set("status", "no candidate arrows the target");
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(sink.finish(HOLDS))
}

pub fn convert(config: &Config, input: &str, coloring: Option<&Path>) -> Result<Done, CliError> {
    let g = io::load_graph(input)?;
    let c = coloring.map(|p| io::load_coloring(p, &g)).transpose()?;
    let mut sink = Sink::new(config);
    sink.set("vertices", g.n());
    sink.set("edges", g.edge_count());
    sink.set("canonical_hash", canonical_hash(&g).to_string());
    match (config.output.is_some(), config.format()) {
        (false, Format::Graph6) => sink.set("graph6", codec::to_graph6(&g)?),
        (false, Format::Dot) => sink.set("dot", codec::to_dot(&g, c.as_ref())),
        _ => sink.graph("graph", None, &g, c.as_ref())?,
    }
    Ok(sink.finish(HOLDS))
}

pub fn random(config: &Config, n: usize, p: f64, count: usize) -> Result<Done, CliError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(CliError::Usage(format!("--p must lie in [0, 1], got {p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let graphs: Vec<Graph> = (0..count)
        .map(|_| {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, edges)
        })
        .collect::<Result<_, _>>()?;
    let mut sink = Sink::new(config);
    sink.set("seed", config.seed);
    sink.set("count", count);
    if let [g] = graphs.as_slice() {
        sink.set("edges", g.edge_count());
        sink.graph("graph", None, g, None)?;
        return Ok(sink.finish(HOLDS));
    }
    let lines = graphs.iter().map(codec::to_graph6).collect::<Result<Vec<_>, _>>()?;
    match config.output.as_deref() {
        Some(out) => {
            if config.format() != Format::Graph6 {
                return Err(CliError::Usage("several graphs can only be written as graph6".into()));
            }
            io::write(out, &(lines.join("\n") + "\n"))?;
            sink.files.push(out.display().to_string());
        }
        None => sink.set("graphs", lines),
    }
    Ok(sink.finish(HOLDS))
}
