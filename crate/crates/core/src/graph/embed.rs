//! Subgraph embedding search (not necessarily induced).
//!
//! A pattern vertex order is fixed up front so that every vertex after the
//! first in its component has at least one earlier neighbour. Candidates for a
//! position are the AND of the target rows of the images of its earlier
//! neighbours, minus used vertices, filtered by degree.

use std::sync::OnceLock;

use super::Graph;
use crate::bits::{self, BitMatrix};

/// An injective, edge-preserving map from the vertices of a pattern `h` into a
/// host `g`: `map()[u]` is the image of pattern vertex `u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Embedding {
    map: Vec<usize>,
}

impl Embedding {
    pub fn new(map: Vec<usize>) -> Self {
        Embedding { map }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn image(&self, u: usize) -> usize {
        self.map[u]
    }

    /// Checks injectivity and edge preservation directly.
    pub fn is_valid(&self, h: &Graph, g: &Graph) -> bool {
        if self.map.len() != h.n() || self.map.iter().any(|&x| x >= g.n()) {
            return false;
        }
        let mut seen = vec![false; g.n()];
        for &x in &self.map {
            if std::mem::replace(&mut seen[x], true) {
                return false;
            }
        }
        h.edges()
            .into_iter()
            .all(|(u, w)| g.has_edge(self.map[u], self.map[w]))
    }
}

/// Finds a copy of `h` in `g`, or `None`. Deterministic: the search visits
/// candidates in ascending label order.
pub fn find_embedding(h: &Graph, g: &Graph) -> Option<Embedding> {
    Matcher::new(h).find(g.matrix()).map(Embedding::new)
}

#[derive(Clone, Debug)]
struct Plan {
    order: Vec<usize>,
    /// For each position, the earlier positions adjacent to it in the pattern.
    back: Vec<Vec<usize>>,
}

/// Precomputed search plans for one pattern graph.
#[derive(Debug)]
pub(crate) struct Matcher {
    adj: BitMatrix,
    degree: Vec<usize>,
    isolated: Vec<usize>,
    free: Plan,
    arc_plans: OnceLock<Vec<Plan>>,
    vertex_plans: OnceLock<Vec<Plan>>,
}

impl Matcher {
    pub(crate) fn new(h: &Graph) -> Self {
        let adj = h.matrix().clone();
        let degree: Vec<usize> = (0..adj.n()).map(|v| adj.degree(v)).collect();
        let isolated = (0..adj.n()).filter(|&v| degree[v] == 0).collect();
        let free = make_plan(&adj, &degree, &[]);
        Matcher {
            adj,
            degree,
            isolated,
            free,
            arc_plans: OnceLock::new(),
            vertex_plans: OnceLock::new(),
        }
    }

    pub(crate) fn pattern_edges(&self) -> usize {
        self.adj.edge_count()
    }

    pub(crate) fn find(&self, target: &BitMatrix) -> Option<Vec<usize>> {
        let mut out = None;
        self.search(&self.free, target, &[], &mut |m| {
            out = Some(m.to_vec());
            true
        });
        out
    }

    /// A copy of the pattern that uses `a - b` as the image of a pattern edge.
    /// The edge must be present in `target`.
    #[cfg(test)]
    pub(crate) fn find_with_edge(&self, target: &BitMatrix, a: usize, b: usize) -> Option<Vec<usize>> {
        let plans = self.arc_plans.get_or_init(|| self.orbit_plans(true));
        let mut out = None;
        for plan in plans {
            if self.search(plan, target, &[a, b], &mut |m| {
                out = Some(m.to_vec());
                true
            }) {
                return out;
            }
        }
        None
    }

    /// Whether some copy uses `a - b` as an edge image.
    #[inline]
    pub(crate) fn has_copy_with_edge(&self, target: &BitMatrix, a: usize, b: usize) -> bool {
        let plans = self.arc_plans.get_or_init(|| self.orbit_plans(true));
        plans
            .iter()
            .any(|plan| self.search(plan, target, &[a, b], &mut |_| true))
    }

    /// A copy of the pattern in which `a` is the image of a non-isolated
    /// pattern vertex.
    pub(crate) fn find_with_vertex(&self, target: &BitMatrix, a: usize) -> Option<Vec<usize>> {
        let plans = self.vertex_plans.get_or_init(|| self.orbit_plans(false));
        let mut out = None;
        for plan in plans {
            if self.search(plan, target, &[a], &mut |m| {
                out = Some(m.to_vec());
                true
            }) {
                return out;
            }
        }
        None
    }

    /// Calls `visit` on every embedding (isolated pattern vertices are sent to
    /// the lowest unused labels, so they do not multiply the count). Stops
    /// early when `visit` returns true.
    pub(crate) fn for_each(&self, target: &BitMatrix, visit: &mut dyn FnMut(&[usize]) -> bool) {
        self.search(&self.free, target, &[], visit);
    }

    /// One plan per orbit of arcs (`edges == true`) or of non-isolated
    /// vertices under the pattern's automorphism group.
    fn orbit_plans(&self, edges: bool) -> Vec<Plan> {
        let roots: Vec<Vec<usize>> = if edges {
            self.adj
                .edges()
                .into_iter()
                .flat_map(|(u, v)| [vec![u, v], vec![v, u]])
                .collect()
        } else {
            (0..self.adj.n())
                .filter(|&v| self.degree[v] > 0)
                .map(|v| vec![v])
                .collect()
        };
        let mut reps: Vec<Plan> = Vec::new();
        for r in roots {
            let covered = reps
                .iter()
                .any(|plan| self.search(plan, &self.adj, &r, &mut |_| true));
            if !covered {
                reps.push(make_plan(&self.adj, &self.degree, &r));
            }
        }
        reps
    }

    /// Runs the backtracking search. `fixed` pins the images of the first
    /// `fixed.len()` plan positions. Returns true if `visit` asked to stop.
    fn search(
        &self,
        plan: &Plan,
        target: &BitMatrix,
        fixed: &[usize],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let n = target.n();
        let placed = plan.order.len();
        if placed + self.isolated.len() > n {
            return false;
        }
        let words = target.words();
        let mut images = vec![0usize; placed];
        let mut used = vec![0u64; words];
        for (i, &x) in fixed.iter().enumerate() {
            let u = plan.order[i];
            if x >= n || bits::test(&used, x) || target.degree(x) < self.degree[u] {
                return false;
            }
            if plan.back[i].iter().any(|&j| !target.contains(images[j], x)) {
                return false;
            }
            images[i] = x;
            bits::set(&mut used, x);
        }
        let mut state = SearchState {
            matcher: self,
            plan,
            target,
            images,
            used,
            cand: vec![0u64; placed.max(1) * words],
            map: vec![0usize; self.adj.n()],
            visit,
        };
        state.extend(fixed.len())
    }
}

struct SearchState<'a, 'v> {
    matcher: &'a Matcher,
    plan: &'a Plan,
    target: &'a BitMatrix,
    images: Vec<usize>,
    used: Vec<u64>,
    cand: Vec<u64>,
    map: Vec<usize>,
    visit: &'v mut dyn FnMut(&[usize]) -> bool,
}

impl SearchState<'_, '_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.plan.order.len() {
            return self.emit();
        }
        let words = self.target.words();
        let u = self.plan.order[depth];
        let need = self.matcher.degree[u];
        {
            let cand = &mut self.cand[depth * words..(depth + 1) * words];
            let back = &self.plan.back[depth];
            if back.is_empty() {
                bits::fill(cand, self.target.n());
            } else {
                cand.copy_from_slice(self.target.row(self.images[back[0]]));
                for &j in &back[1..] {
                    let row = self.target.row(self.images[j]);
                    for (c, r) in cand.iter_mut().zip(row) {
                        *c &= r;
                    }
                }
            }
            for (c, r) in cand.iter_mut().zip(&self.used) {
                *c &= !r;
            }
        }
        for wi in 0..words {
            let mut word = self.cand[depth * words + wi];
            while word != 0 {
                let x = wi * bits::WORD_BITS + word.trailing_zeros() as usize;
                word &= word - 1;
                if self.target.degree(x) < need {
                    continue;
                }
                self.images[depth] = x;
                bits::set(&mut self.used, x);
                let stop = self.extend(depth + 1);
                bits::clear(&mut self.used, x);
                if stop {
                    return true;
                }
            }
        }
        false
    }

    fn emit(&mut self) -> bool {
        for (i, &u) in self.plan.order.iter().enumerate() {
            self.map[u] = self.images[i];
        }
        let mut free = (0..self.target.n()).filter(|&x| !bits::test(&self.used, x));
        for &u in &self.matcher.isolated {
            self.map[u] = free.next().expect("checked before the search");
        }
        (self.visit)(&self.map)
    }
}

fn make_plan(adj: &BitMatrix, degree: &[usize], roots: &[usize]) -> Plan {
    let n = adj.n();
    let mut placed = vec![false; n];
    let mut order = roots.to_vec();
    for &r in roots {
        placed[r] = true;
    }
    loop {
        let next = (0..n)
            .filter(|&u| !placed[u] && degree[u] > 0)
            .max_by_key(|&u| {
                let linked = order.iter().filter(|&&w| adj.contains(u, w)).count();
                (linked, degree[u], std::cmp::Reverse(u))
            });
        match next {
            Some(u) => {
                placed[u] = true;
                order.push(u);
            }
            None => break,
        }
    }
    let back = order
        .iter()
        .enumerate()
        .map(|(i, &u)| (0..i).filter(|&j| adj.contains(order[j], u)).collect())
        .collect();
    Plan { order, back }
}
