//! Canonical labeling with the odd-edge sign.
//!
//! The canonical representative of a graph is its lexicographically least
//! sorted edge list over all vertex relabelings. Reading the pairs in the order
//! (0,1),(0,2),…,(1,2),… as bits, a smaller sorted edge list is exactly a
//! larger bit string, so both backends maximize a `u128` key.

use super::{pair_index, permutation_sign, UnorientedGraph, MAX_VERTICES};

/// Result of canonicalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    /// Canonical labeled graph with edges sorted ascending.
    pub graph: UnorientedGraph,
    /// Parity of the edge permutation from the input wedge order to the sorted
    /// order, or 0 when the graph equals minus itself.
    pub sign: i8,
    /// `relabel[old] = new` realizing the canonical graph.
    pub relabel: Vec<usize>,
}

/// Swappable canonical-labeling backend.
pub trait CanonicalLabeler: Sync {
    fn canonicalize(&self, g: &UnorientedGraph) -> Canonical;
}

/// Backend used by [`canonical_form`] and all graph-sum arithmetic.
pub static DEFAULT_LABELER: BranchAndBound = BranchAndBound;

pub fn canonical_form(g: &UnorientedGraph) -> Canonical {
    DEFAULT_LABELER.canonicalize(g)
}

/// Visits every one of the `n!` relabelings. Only sensible for small `n`.
pub struct Exhaustive;

/// Depth-first search over label assignments with an upper-bound cut and
/// twin-vertex symmetry reduction. Returns the same canonical graph and sign as
/// [`Exhaustive`].
pub struct BranchAndBound;

fn key_of(n: usize, edges: &[(u8, u8)], label: &[usize]) -> (u128, Vec<usize>) {
    let total = n * (n - 1) / 2;
    let mut key = 0u128;
    let mut pos = Vec::with_capacity(edges.len());
    for &(a, b) in edges {
        let (x, y) = (label[a as usize], label[b as usize]);
        let (x, y) = if x < y { (x, y) } else { (y, x) };
        let p = pair_index(n, x, y);
        key |= 1u128 << (total - 1 - p);
        pos.push(p);
    }
    (key, pos)
}

fn graph_from_key(n: usize, key: u128) -> UnorientedGraph {
    let total = n * (n - 1) / 2;
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if key >> (total - 1 - pair_index(n, a, b)) & 1 == 1 {
                edges.push((a as u8, b as u8));
            }
        }
    }
    UnorientedGraph { n, edges }
}

#[derive(Default)]
struct Best {
    key: Option<u128>,
    sign: i8,
    zero: bool,
    relabel: Vec<usize>,
}

impl Best {
    fn offer(&mut self, key: u128, sign: i8, relabel: &[usize]) {
        match self.key {
            Some(k) if key < k => {}
            Some(k) if key == k => {
                if sign != self.sign {
                    self.zero = true;
                }
            }
            _ => {
                self.key = Some(key);
                self.sign = sign;
                self.zero = false;
                self.relabel = relabel.to_vec();
            }
        }
    }

    fn finish(self, n: usize) -> Canonical {
        let key = self.key.unwrap_or(0);
        Canonical {
            graph: graph_from_key(n, key),
            sign: if self.zero { 0 } else { self.sign },
            relabel: self.relabel,
        }
    }
}

impl CanonicalLabeler for Exhaustive {
    fn canonicalize(&self, g: &UnorientedGraph) -> Canonical {
        let n = g.n;
        if n == 1 {
            return Canonical {
                graph: g.clone(),
                sign: 1,
                relabel: vec![0],
            };
        }
        let mut best = Best::default();
        // Heap's algorithm over label assignments.
        let mut label: Vec<usize> = (0..n).collect();
        let mut c = vec![0usize; n];
        let mut visit = |label: &[usize]| {
            let (key, pos) = key_of(n, &g.edges, label);
            best.offer(key, permutation_sign(&pos), label);
        };
        visit(&label);
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    label.swap(0, i);
                } else {
                    label.swap(c[i], i);
                }
                visit(&label);
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        best.finish(n)
    }
}

struct Search<'a> {
    n: usize,
    total: usize,
    edges: &'a [(u8, u8)],
    adj: Vec<u16>,
    /// Twin class representative of each vertex.
    twin_rep: Vec<usize>,
    /// Vertices in the order candidates are tried.
    try_order: Vec<usize>,
    order: Vec<usize>,
    used: u16,
    best: Best,
}

impl Search<'_> {
    fn bit(&self, a: usize, b: usize) -> u128 {
        1u128 << (self.total - 1 - pair_index(self.n, a, b))
    }

    /// Largest key any completion of the current partial assignment can reach.
    fn upper_bound(&self) -> u128 {
        let n = self.n;
        let k = self.order.len();
        let mut key = 0u128;
        for i in 0..k {
            let vi = self.order[i];
            for j in i + 1..k {
                if self.adj[vi] >> self.order[j] & 1 == 1 {
                    key |= self.bit(i, j);
                }
            }
            let free = (self.adj[vi] & !self.used).count_ones() as usize;
            for j in k..k + free {
                key |= self.bit(i, j);
            }
        }
        for i in k..n {
            for j in i + 1..n {
                key |= self.bit(i, j);
            }
        }
        key
    }

    fn dfs(&mut self) {
        let k = self.order.len();
        if k == self.n {
            let mut label = vec![0usize; self.n];
            for (l, &v) in self.order.iter().enumerate() {
                label[v] = l;
            }
            let (key, pos) = key_of(self.n, self.edges, &label);
            self.best.offer(key, permutation_sign(&pos), &label);
            return;
        }
        if let Some(best) = self.best.key {
            if self.upper_bound() < best {
                return;
            }
        }
        let mut tried_reps = 0u16;
        for idx in 0..self.try_order.len() {
            let v = self.try_order[idx];
            if self.used >> v & 1 == 1 {
                continue;
            }
            // Interchangeable twins lead to isomorphic subtrees.
            let rep = self.twin_rep[v];
            if tried_reps >> rep & 1 == 1 {
                continue;
            }
            tried_reps |= 1 << rep;
            self.order.push(v);
            self.used |= 1 << v;
            self.dfs();
            self.used &= !(1 << v);
            self.order.pop();
        }
    }
}

impl CanonicalLabeler for BranchAndBound {
    fn canonicalize(&self, g: &UnorientedGraph) -> Canonical {
        let n = g.n;
        debug_assert!(n <= MAX_VERTICES);
        if n == 1 {
            return Canonical {
                graph: g.clone(),
                sign: 1,
                relabel: vec![0],
            };
        }
        let adj = g.adjacency();
        // Twins: N(u)\{w} = N(w)\{u}. Swapping them permutes |N(u)\{w}| edge
        // pairs, so an odd count already makes the graph zero.
        let mut twin_rep: Vec<usize> = (0..n).collect();
        let mut zero_by_twins = false;
        for u in 0..n {
            for w in u + 1..n {
                let nu = adj[u] & !(1 << w);
                let nw = adj[w] & !(1 << u);
                if nu == nw {
                    if nu.count_ones() % 2 == 1 {
                        zero_by_twins = true;
                    } else if twin_rep[w] == w {
                        twin_rep[w] = twin_rep[u];
                    }
                }
            }
        }
        let degrees = g.degrees();
        let mut try_order: Vec<usize> = (0..n).collect();
        try_order.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]).then(a.cmp(&b)));
        let mut search = Search {
            n,
            total: n * (n - 1) / 2,
            edges: &g.edges,
            adj,
            twin_rep,
            try_order,
            order: Vec::with_capacity(n),
            used: 0,
            best: Best::default(),
        };
        search.dfs();
        let mut out = search.best.finish(n);
        if zero_by_twins {
            out.sign = 0;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4_scrambled() -> UnorientedGraph {
        UnorientedGraph::new(4, &[(0, 1), (2, 3), (0, 2), (1, 3), (0, 3), (1, 2)]).unwrap()
    }

    #[test]
    fn stick_is_its_own_form() {
        let c = canonical_form(&UnorientedGraph::stick());
        assert_eq!(c.graph, UnorientedGraph::stick());
        assert_eq!(c.sign, 1);
    }

    #[test]
    fn triangle_is_zero() {
        let c = canonical_form(&UnorientedGraph::cycle(3).unwrap());
        assert_eq!(c.sign, 0);
        assert_eq!(c.graph.edge_count(), 3);
    }

    #[test]
    fn k4_listing_orders_agree_up_to_sign() {
        let a = canonical_form(&UnorientedGraph::tetrahedron());
        let b = canonical_form(&k4_scrambled());
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.graph, UnorientedGraph::tetrahedron());
        assert_eq!(a.sign, 1);
        // Edge listing [01,23,02,13,03,12] against sorted [01,02,03,12,13,23]:
        // positions 0,5,1,4,2,3 have 6 inversions.
        assert_eq!(b.sign, 1);
    }

    #[test]
    fn backends_agree_on_small_graphs() {
        let graphs = [
            UnorientedGraph::path(4).unwrap(),
            UnorientedGraph::cycle(5).unwrap(),
            UnorientedGraph::new(5, &[(0, 1), (2, 3)]).unwrap(),
            UnorientedGraph::new(6, &[(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap(),
            k4_scrambled(),
        ];
        for g in graphs {
            assert_eq!(BranchAndBound.canonicalize(&g).graph, Exhaustive.canonicalize(&g).graph);
            assert_eq!(BranchAndBound.canonicalize(&g).sign, Exhaustive.canonicalize(&g).sign);
        }
    }
}
