//! Graph Ramsey arrowing at desk scale.
//!
//! `F → H` ("`F` arrows `H`") holds when every red/blue colouring of the edges
//! of `F` contains a monochromatic copy of `H`. This crate decides it exactly
//! by pruned exhaustive search, and builds and checks the gadget graphs used
//! to bound the minimum degree of Ramsey-minimal graphs.
//!
//! ```
//! use ramsey_forge::{arrows, Graph, SearchOptions};
//!
//! let k3 = Graph::complete(3);
//! let opts = SearchOptions::default();
//! assert!(arrows(&Graph::complete(6), &k3, &opts).unwrap().arrows());
//! assert!(!arrows(&Graph::complete(5), &k3, &opts).unwrap().arrows());
//! ```
//!
//! Copies are subgraph embeddings (injective, edge-preserving maps), not
//! induced subgraphs.

mod bits;
pub mod coloring;
pub mod constructions;
pub mod engine;
pub mod graph;

pub use coloring::{
    color_pattern, extend_packing, extend_split, is_mono_free, monochromatic_copy, swap_colors, Color,
    ColorPattern, ColoringError, EdgeColoring, MonoCopy, PackingExtension,
};
pub use constructions::{ColoredConstruction, ConstructionError, SimplicityWitness};
pub use engine::{
    arrows, ArrowingResult, Budget, EngineError, GadgetCertificate, GadgetKind, SearchOptions, SearchStats,
    Symmetry, Verdict, Verification,
};
pub use graph::{
    build_graph, canonical_hash, find_embedding, graph_stats, induced_subgraph, join_graphs, Edge, Embedding,
    Graph, GraphDigest, GraphError, GraphStats, RoleMap,
};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/colorings.md")]
    mod colorings {}
    #[doc = include_str!("../../../book/src/engine.md")]
    mod engine {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
