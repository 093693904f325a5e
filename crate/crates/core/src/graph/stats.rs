use serde::{Deserialize, Serialize};

use super::Graph;
use crate::bits::{self, BitMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub clique_number: usize,
    pub independence_number: usize,
    /// `Some(d)` when every vertex has degree `d`.
    pub regular: Option<usize>,
    pub connected: bool,
}

pub fn graph_stats(g: &Graph) -> GraphStats {
    let min_degree = g.min_degree();
    let max_degree = g.max_degree();
    GraphStats {
        vertices: g.n(),
        edges: g.edge_count(),
        min_degree,
        max_degree,
        clique_number: clique_number(g),
        independence_number: independence_number(g),
        regular: (g.n() > 0 && min_degree == max_degree).then_some(min_degree),
        connected: g.is_connected(),
    }
}

/// Exact ω(g) by branch and bound with a greedy-colouring bound.
pub fn clique_number(g: &Graph) -> usize {
    max_clique(g.matrix())
}

/// Exact α(g), computed as ω of the complement.
pub fn independence_number(g: &Graph) -> usize {
    max_clique(g.complement().matrix())
}

fn max_clique(adj: &BitMatrix) -> usize {
    let mut all = vec![0u64; adj.words()];
    bits::fill(&mut all, adj.n());
    let mut best = 0;
    expand(adj, 0, all, &mut best);
    best
}

fn expand(adj: &BitMatrix, size: usize, cand: Vec<u64>, best: &mut usize) {
    if bits::count(&cand) == 0 {
        *best = (*best).max(size);
        return;
    }
    let (order, bounds) = colour_bound(adj, &cand);
    let mut cand = cand;
    for (&v, &bound) in order.iter().zip(&bounds).rev() {
        if size + bound <= *best {
            return;
        }
        let next: Vec<u64> = cand.iter().zip(adj.row(v)).map(|(c, r)| c & r).collect();
        expand(adj, size + 1, next, best);
        bits::clear(&mut cand, v);
    }
}

/// Greedy sequential colouring of the candidate set; returns vertices in
/// colour order with the running colour count as an upper bound on the clique
/// extendable from each prefix.
fn colour_bound(adj: &BitMatrix, cand: &[u64]) -> (Vec<usize>, Vec<usize>) {
    let mut uncoloured = cand.to_vec();
    let mut order = Vec::new();
    let mut bounds = Vec::new();
    let mut colour = 0;
    while bits::count(&uncoloured) > 0 {
        colour += 1;
        let mut q = uncoloured.clone();
        while let Some(v) = bits::ones(&q).next() {
            bits::clear(&mut q, v);
            bits::clear(&mut uncoloured, v);
            for (qw, r) in q.iter_mut().zip(adj.row(v)) {
                *qw &= !r;
            }
            order.push(v);
            bounds.push(colour);
        }
    }
    (order, bounds)
}
