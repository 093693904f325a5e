//! Canonical labelling by colour refinement plus individualisation.
//!
//! The search tree is the usual one: refine the ordered partition to an
//! equitable one, individualise each vertex of the first smallest
//! non-singleton cell, recurse. Leaves are discrete partitions, i.e. vertex
//! orders; the canonical form is the lexicographically smallest relabelled
//! adjacency matrix. Two leaves with equal matrices yield an automorphism,
//! and children of a node that lie in one orbit of the automorphisms fixing
//! the node's individualised prefix have identical subtrees, so only one of
//! them is expanded.

use std::fmt;

use sha2::{Digest, Sha256};

use super::Graph;
use crate::bits::{self, BitMatrix};

/// SHA-256 of a graph's canonical adjacency matrix. Isomorphic graphs get
/// equal digests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphDigest(pub [u8; 32]);

impl fmt::Display for GraphDigest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

pub fn canonical_hash(g: &Graph) -> GraphDigest {
    let (cert, _) = canonical_certificate(g);
    let mut hasher = Sha256::new();
    hasher.update(b"ramsey-forge/canon/1");
    hasher.update((g.n() as u64).to_le_bytes());
    for w in cert {
        hasher.update(w.to_le_bytes());
    }
    let out = hasher.finalize();
    let mut bytes = [0u8; 32];
    bytes.copy_from_slice(&out);
    GraphDigest(bytes)
}

impl Graph {
    /// The graph relabelled into canonical order. Roles are dropped.
    pub fn canonical_form(&self) -> Graph {
        let (_, position) = canonical_certificate(self);
        let mut g = self.relabel(&position);
        g.roles.clear();
        g
    }

    pub fn is_isomorphic_to(&self, other: &Graph) -> bool {
        self.n() == other.n()
            && self.edge_count() == other.edge_count()
            && canonical_certificate(self).0 == canonical_certificate(other).0
    }
}

/// Returns the canonical certificate and the vertex-to-position map.
fn canonical_certificate(g: &Graph) -> (Vec<u64>, Vec<usize>) {
    let n = g.n();
    let mut search = Canon {
        adj: g.matrix(),
        first: None,
        best: None,
        automorphisms: Vec::new(),
    };
    let root: Vec<Vec<usize>> = if n == 0 { Vec::new() } else { vec![(0..n).collect()] };
    let mut prefix = Vec::new();
    search.descend(root, &mut prefix);
    match search.best {
        Some(leaf) => (leaf.cert, leaf.position),
        None => (Vec::new(), Vec::new()),
    }
}

struct Leaf {
    cert: Vec<u64>,
    position: Vec<usize>,
}

struct Canon<'a> {
    adj: &'a BitMatrix,
    first: Option<Leaf>,
    best: Option<Leaf>,
    automorphisms: Vec<Vec<usize>>,
}

impl Canon<'_> {
    fn descend(&mut self, cells: Vec<Vec<usize>>, prefix: &mut Vec<usize>) {
        let cells = refine(self.adj, cells);
        let Some(target) = target_cell(&cells) else {
            self.leaf(&cells);
            return;
        };
        let mut explored: Vec<usize> = Vec::new();
        for &w in &cells[target] {
            if !explored.is_empty() && self.in_explored_orbit(w, &explored, prefix) {
                continue;
            }
            explored.push(w);
            let mut child = Vec::with_capacity(cells.len() + 1);
            for (i, cell) in cells.iter().enumerate() {
                if i == target {
                    child.push(vec![w]);
                    child.push(cell.iter().copied().filter(|&x| x != w).collect());
                } else {
                    child.push(cell.clone());
                }
            }
            prefix.push(w);
            self.descend(child, prefix);
            prefix.pop();
        }
    }

    fn leaf(&mut self, cells: &[Vec<usize>]) {
        let n = self.adj.n();
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let mut position = vec![0; n];
        for (p, &v) in order.iter().enumerate() {
            position[v] = p;
        }
        let cert = certificate(self.adj, &order);
        let leaf = Leaf { cert, position };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                cert: leaf.cert.clone(),
                position: leaf.position.clone(),
            });
            self.first = Some(leaf);
            return;
        };
        if leaf.cert == first.cert {
            let aut = automorphism(&first.position, &order);
            self.automorphisms.push(aut);
            return;
        }
        let best = self.best.as_ref().unwrap();
        match leaf.cert.cmp(&best.cert) {
            std::cmp::Ordering::Equal => {
                let aut = automorphism(&best.position, &order);
                self.automorphisms.push(aut);
            }
            std::cmp::Ordering::Less => self.best = Some(leaf),
            std::cmp::Ordering::Greater => {}
        }
    }

    fn in_explored_orbit(&self, w: usize, explored: &[usize], prefix: &[usize]) -> bool {
        let n = self.adj.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for aut in &self.automorphisms {
            if prefix.iter().any(|&p| aut[p] != p) {
                continue;
            }
            any = true;
            for (v, &image) in aut.iter().enumerate() {
                let (a, b) = (root(&mut parent, v), root(&mut parent, image));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let rw = root(&mut parent, w);
        explored.iter().any(|&e| root(&mut parent, e) == rw)
    }
}

/// `aut[u] = v` where `v` sits at the position `u` had in the reference leaf.
fn automorphism(reference_position: &[usize], order: &[usize]) -> Vec<usize> {
    reference_position.iter().map(|&p| order[p]).collect()
}

fn target_cell(cells: &[Vec<usize>]) -> Option<usize> {
    cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i)
}

/// Upper triangle of the adjacency matrix in the order `order`, row-major.
fn certificate(adj: &BitMatrix, order: &[usize]) -> Vec<u64> {
    let n = order.len();
    let total = n * n.saturating_sub(1) / 2;
    let mut out = vec![0u64; total.div_ceil(64)];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if adj.contains(order[i], order[j]) {
                out[k / 64] |= 1 << (63 - k % 64);
            }
            k += 1;
        }
    }
    out
}

/// Splits cells by neighbour counts into splitter cells until stable.
/// Sub-cells are ordered by count, which keeps the result equivariant under
/// relabelling.
fn refine(adj: &BitMatrix, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let words = adj.words();
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let mut splitter = vec![0u64; words];
            for &v in &cells[s] {
                bits::set(&mut splitter, v);
            }
            let mut next = Vec::with_capacity(cells.len());
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(usize, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let c = adj
                            .row(v)
                            .iter()
                            .zip(&splitter)
                            .map(|(a, b)| (a & b).count_ones() as usize)
                            .sum();
                        (c, v)
                    })
                    .collect();
                keyed.sort_unstable();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
            }
            if next.len() != cells.len() {
                changed = true;
            }
            cells = next;
            s += 1;
        }
        if !changed {
            return cells;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_pentagon_matches() {
        let c5 = Graph::cycle(5);
        let r = c5.relabel(&[3, 0, 4, 1, 2]);
        assert_ne!(c5.edges(), r.edges());
        assert_eq!(canonical_hash(&c5), canonical_hash(&r));
    }

    #[test]
    fn distinguishes_small_graphs() {
        assert_ne!(canonical_hash(&Graph::cycle(5)), canonical_hash(&Graph::path(5)));
        assert_ne!(
            canonical_hash(&Graph::complete_bipartite(3, 3)),
            canonical_hash(&Graph::cycle(6))
        );
        // Same degree sequence, not isomorphic: C_6 vs two triangles.
        let two_triangles = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_ne!(canonical_hash(&Graph::cycle(6)), canonical_hash(&two_triangles));
    }

    #[test]
    fn symmetric_graphs_finish() {
        // Large automorphism groups must be pruned, not enumerated.
        for g in [Graph::complete(12), Graph::empty(12), Graph::petersen(), Graph::complete_bipartite(6, 6)] {
            let perm: Vec<usize> = (0..g.n()).rev().collect();
            assert_eq!(canonical_hash(&g), canonical_hash(&g.relabel(&perm)));
        }
    }

    #[test]
    fn canonical_form_is_isomorphic() {
        let g = Graph::petersen();
        let c = g.canonical_form();
        assert!(g.is_isomorphic_to(&c));
        assert_eq!(c, g.relabel(&[9, 1, 8, 2, 7, 3, 6, 4, 5, 0]).canonical_form());
    }

    #[test]
    fn digest_displays_hex() {
        assert_eq!(canonical_hash(&Graph::empty(0)).to_string().len(), 64);
    }
}
