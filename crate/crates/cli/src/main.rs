//! `ramsey-forge`: construct gadgets, decide arrowing, verify certificates.
//!
//! Exit codes: 0 the property holds, 1 it fails (a witness is reported),
//! 2 usage or input error, 3 search budget exhausted. The JSON report goes to
//! stdout and diagnostics to stderr.

mod commands;
mod io;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ramsey_forge::{Budget, SearchOptions};

use crate::commands::CliError;
use crate::io::Format;

#[derive(Parser)]
#[command(name = "ramsey-forge", version, about = "Ramsey arrowing engine and gadget constructions")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
pub struct Config {
    /// Where to write the main artifact (graph, witness colouring).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Artifact format; inferred from the output extension when omitted.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Search node limit.
    #[arg(long, global = true)]
    pub max_nodes: Option<u64>,
    /// Search time limit in milliseconds.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub timeout_ms: Option<u64>,
    #[arg(long, global = true, env = "RAMSEY_FORGE_THREADS", default_value_t = 1,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: u64,
    /// Sequential canonical search and reproducible output (forces one thread).
    #[arg(long, global = true)]
    pub deterministic: bool,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

impl Config {
    pub fn threads(&self) -> usize {
        if self.deterministic {
            1
        } else {
            self.threads as usize
        }
    }

    pub fn search_options(&self) -> SearchOptions {
        let budget = Budget {
            max_nodes: self.max_nodes,
            timeout: self.timeout_ms.map(Duration::from_millis),
        };
        SearchOptions::default().parallel(self.threads()).with_budget(budget)
    }

    pub fn format(&self) -> Format {
        self.format
            .or_else(|| self.output.as_deref().and_then(Format::infer))
            .unwrap_or(Format::Json)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build one of the gadget constructions.
    Construct(ConstructArgs),
    /// Decide whether F arrows H.
    Arrow {
        #[arg(long)]
        f: String,
        #[arg(long)]
        h: String,
    },
    /// Check a property of a graph or colouring.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// Desk-scale searches.
    Search {
        #[command(subcommand)]
        kind: SearchKind,
    },
    /// Re-encode a graph, optionally drawing a colouring in DOT.
    Convert {
        #[arg(long)]
        input: String,
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
    /// Seeded random graphs G(n, p).
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Construction {
    #[value(name = "h_t_d")]
    HTD,
    CliqueTransversal,
    JoinGadget,
    ApexGadget,
    SimplicityWitness,
    ChainSenders,
    WeakBelFrame,
    WeakToStrong,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub name: Construction,
    #[arg(long)]
    pub t: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    /// Target graph.
    #[arg(long)]
    pub h: Option<String>,
    /// Vertex of H removed by the apex constructions.
    #[arg(long, default_value_t = 0)]
    pub v: usize,
    #[arg(long)]
    pub r0: Option<String>,
    #[arg(long, num_args = 1..)]
    pub components: Vec<String>,
    /// Two sender graphs (roles `e`, `f`) to chain.
    #[arg(long, num_args = 2)]
    pub inputs: Vec<String>,
    #[arg(long)]
    pub g0: Option<String>,
    #[arg(long)]
    pub g1: Option<String>,
    /// Sender graph with roles `e` and `f`.
    #[arg(long)]
    pub sender: Option<String>,
    #[arg(long)]
    pub g: Option<String>,
    #[arg(long)]
    pub coloring: Option<PathBuf>,
}

#[derive(Subcommand)]
pub enum Check {
    /// The colouring of G has no monochromatic H.
    #[command(alias = "mono_free")]
    MonoFree {
        #[arg(long)]
        g: String,
        #[arg(long)]
        coloring: PathBuf,
        #[arg(long)]
        h: String,
    },
    /// F arrows H and no single edge deletion keeps that.
    Minimal {
        #[arg(long)]
        f: String,
        #[arg(long)]
        h: String,
    },
    /// G (roles `e`, `f`) is a positive signal sender for H.
    Sender {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// Joining a vertex to any d vertices of S creates H, and G is H-free.
    Apex {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        d: usize,
        /// Defaults to the role `S`.
        #[arg(long, value_delimiter = ',')]
        s: Option<Vec<usize>>,
    },
    /// G is a BEL gadget for the template with colouring psi.
    Bel {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        template: String,
        /// Image of each template vertex in G.
        #[arg(long, value_delimiter = ',')]
        embedding: Vec<usize>,
        /// Colouring of the template.
        #[arg(long)]
        psi: PathBuf,
    },
    /// Every induced subgraph on at least eps*n vertices arrows H.
    Epsilon {
        #[arg(long)]
        f: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        eps: f64,
    },
}

#[derive(Subcommand)]
pub enum SearchKind {
    /// Smallest n <= n-max with K_n arrowing H.
    #[command(name = "ramsey_number", alias = "ramsey-number")]
    RamseyNumber {
        #[arg(long)]
        h: String,
        #[arg(long)]
        n_max: usize,
    },
    /// Upper bound on the minimum degree of Ramsey-minimal graphs for H.
    #[command(name = "s_upper", alias = "s-upper")]
    SUpper {
        #[arg(long)]
        h: String,
        #[arg(long, num_args = 1.., required = true)]
        candidates: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(args) => commands::construct(&cli.config, &args),
        Command::Arrow { f, h } => commands::arrow(&cli.config, &f, &h),
        Command::Verify { check } => commands::verify(&cli.config, &check),
        Command::Search { kind } => commands::search(&cli.config, &kind),
        Command::Convert { input, coloring } => commands::convert(&cli.config, &input, coloring.as_deref()),
        Command::Random { n, p, count } => commands::random(&cli.config, n, p, count),
    };
    let (mut report, code) = match result {
        Ok(done) => (done.report, done.code),
        Err(CliError::Usage(message)) => {
            eprintln!("error: {message}");
            (serde_json::json!({ "error": message }), commands::USAGE)
        }
        Err(CliError::Budget(stats)) => {
            eprintln!("search budget exhausted after {} nodes", stats.nodes);
            (serde_json::json!({ "verdict": "budget", "stats": stats }), commands::BUDGET)
        }
    };
    if cli.config.deterministic {
        commands::zero_wall_clock(&mut report);
    }
    let text = serde_json::to_string_pretty(&report).expect("reports serialise");
    // A closed pipe on stdout is not worth a panic.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    ExitCode::from(code)
}
