//! Brute-force oracles and random generators shared by the integration tests.
//! Nothing here calls into the crate's search code.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use ramsey_forge::{Color, EdgeColoring, Graph};

pub type Edges = Vec<(usize, usize)>;

/// Every injective map of `h`'s vertices into `0..n`, tried in full.
pub fn naive_contains(h_n: usize, h_edges: &[(usize, usize)], n: usize, edges: &[(usize, usize)]) -> bool {
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    let mut map = Vec::with_capacity(h_n);
    let mut used = vec![false; n];
    fn rec(
        h_n: usize,
        h_edges: &[(usize, usize)],
        adj: &[Vec<bool>],
        map: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        if map.len() == h_n {
            return h_edges.iter().all(|&(a, b)| adj[map[a]][map[b]]);
        }
        for x in 0..adj.len() {
            if used[x] {
                continue;
            }
            used[x] = true;
            map.push(x);
            let found = rec(h_n, h_edges, adj, map, used);
            map.pop();
            used[x] = false;
            if found {
                return true;
            }
        }
        false
    }
    rec(h_n, h_edges, &adj, &mut map, &mut used)
}

pub fn naive_contains_graph(h: &Graph, g: &Graph) -> bool {
    naive_contains(h.n(), &h.edges(), g.n(), &g.edges())
}

/// Colour classes scanned separately with [`naive_contains`].
pub fn naive_mono_free(n: usize, colored: &[((usize, usize), Color)], h: &Graph) -> bool {
    let h_edges = h.edges();
    [Color::Red, Color::Blue].iter().all(|&c| {
        let class: Edges = colored.iter().filter(|(_, x)| *x == c).map(|&(e, _)| e).collect();
        !naive_contains(h.n(), &h_edges, n, &class)
    })
}

/// Unpruned enumeration of all `2^m` colourings.
pub fn naive_arrows(f: &Graph, h: &Graph) -> bool {
    let edges = f.edges();
    let m = edges.len();
    assert!(m <= 20, "naive oracle is exponential");
    (0u32..1 << m).all(|mask| {
        let colored: Vec<_> = edges
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, if mask >> i & 1 == 1 { Color::Blue } else { Color::Red }))
            .collect();
        !naive_mono_free(f.n(), &colored, h)
    })
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Random graph with exactly `min(m, C(n,2))` edges.
pub fn random_graph_m(rng: &mut impl Rng, n: usize, m: usize) -> Graph {
    let mut all: Edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            all.push((u, v));
        }
    }
    all.shuffle(rng);
    all.truncate(m);
    Graph::from_edges(n, all).unwrap()
}

pub fn random_coloring(rng: &mut impl Rng, g: &Graph) -> EdgeColoring {
    EdgeColoring::from_fn(g, |_| if rng.random_bool(0.5) { Color::Red } else { Color::Blue })
}

pub fn random_permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Small connected targets with at least one edge.
pub fn small_targets() -> Vec<(&'static str, Graph)> {
    vec![
        ("K_2", Graph::complete(2)),
        ("P_3", Graph::path(3)),
        ("K_3", Graph::complete(3)),
        ("P_4", Graph::path(4)),
        ("K_1,3", Graph::star(3)),
        ("C_4", Graph::cycle(4)),
    ]
}
