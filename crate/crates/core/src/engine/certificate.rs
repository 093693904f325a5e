use crate::coloring::EdgeColoring;
use crate::graph::{Edge, Graph};

use super::EngineError;

/// The property a gadget is claimed to have.
#[derive(Clone, Debug, PartialEq)]
pub enum GadgetKind {
    /// Disjoint edges `e` and `f` are forced to equal colours.
    SignalSender { e: Edge, f: Edge },
    /// `template` sits in the gadget via `embedding` (template vertex `i` is
    /// gadget vertex `embedding[i]`), and mono-free colourings restrict to
    /// `psi` up to a global swap.
    BelGadget {
        template: Graph,
        embedding: Vec<usize>,
        psi: EdgeColoring,
    },
    /// Every induced subgraph on at least `epsilon·n` vertices arrows the
    /// target.
    EpsilonComponent { epsilon: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verification {
    /// Checked by exhaustive search.
    Exhaustive,
    /// Accepted from an external source without checking.
    Trusted,
    Unchecked,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GadgetCertificate {
    pub graph: Graph,
    pub target: Graph,
    pub kind: GadgetKind,
    /// A mono-free colouring of `graph`, when one is known.
    pub coloring: Option<EdgeColoring>,
    pub verified: Verification,
}

impl GadgetCertificate {
    pub fn unchecked(graph: Graph, target: Graph, kind: GadgetKind) -> Self {
        GadgetCertificate {
            graph,
            target,
            kind,
            coloring: None,
            verified: Verification::Unchecked,
        }
    }

    /// The distinguished edges of a signal sender.
    pub fn sender_edges(&self) -> Option<(Edge, Edge)> {
        match self.kind {
            GadgetKind::SignalSender { e, f } => Some((e, f)),
            _ => None,
        }
    }

    /// Structural checks only: distinguished edges and sets exist in `graph`.
    pub fn validate(&self) -> Result<(), EngineError> {
        match &self.kind {
            GadgetKind::SignalSender { e, f } => {
                for &(u, v) in [e, f] {
                    if !self.graph.has_edge(u, v) {
                        return Err(EngineError::MissingEdge(u, v));
                    }
                }
                let shared = [e.0, e.1].iter().any(|x| *x == f.0 || *x == f.1);
                if shared {
                    return Err(EngineError::NotDisjoint(*e, *f));
                }
            }
            GadgetKind::BelGadget {
                template,
                embedding,
                psi,
            } => self.check_template(template, embedding, psi)?,
            GadgetKind::EpsilonComponent { epsilon } => {
                if !(*epsilon > 0.0 && *epsilon <= 1.0) {
                    return Err(EngineError::InvalidEpsilon(*epsilon));
                }
            }
        }
        if let Some(c) = &self.coloring {
            c.check_host(&self.graph)
                .map_err(|e| EngineError::InvalidCertificate(e.to_string()))?;
        }
        Ok(())
    }

    pub(crate) fn check_template(
        &self,
        template: &Graph,
        embedding: &[usize],
        psi: &EdgeColoring,
    ) -> Result<(), EngineError> {
        let bad = |m: String| Err(EngineError::InvalidCertificate(m));
        if embedding.len() != template.n() {
            return bad(format!(
                "embedding has {} entries for a {}-vertex template",
                embedding.len(),
                template.n()
            ));
        }
        let mut seen = vec![false; self.graph.n()];
        for &x in embedding {
            if x >= self.graph.n() || std::mem::replace(&mut seen[x], true) {
                return bad(format!("embedding is not injective into the gadget (vertex {x})"));
            }
        }
        for (u, v) in template.edges() {
            if !self.graph.has_edge(embedding[u], embedding[v]) {
                return bad(format!("template edge ({u}, {v}) is not mapped to a gadget edge"));
            }
        }
        psi.check_host(template)
            .map_err(|e| EngineError::InvalidCertificate(format!("psi: {e}")))
    }
}
