//! Unoriented graphs with wedge-ordered edges, canonical labeling with sign,
//! and exact rational linear combinations of graphs.

mod canon;
pub mod io;
mod stats;
mod sum;

use std::fmt;

pub use canon::{
    canonical_form, BranchAndBound, Canonical, CanonicalLabeler, Exhaustive, DEFAULT_LABELER,
};
pub use stats::{graph_stats, GraphStats};
pub use sum::GraphSum;

use crate::error::{Error, Result};

/// Largest vertex count accepted anywhere in the graph layer.
pub const MAX_VERTICES: usize = 16;

/// An unoriented graph on vertices `0..n` whose edge list order is the wedge
/// order of the (odd) edges.
///
/// Edges are stored as `(min, max)`; the list order is significant.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnorientedGraph {
    n: usize,
    edges: Vec<(u8, u8)>,
}

impl UnorientedGraph {
    /// Validating constructor: rejects tadpoles, repeated edges and labels out of range.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::structure("a graph needs at least one vertex"));
        }
        if n > MAX_VERTICES {
            return Err(Error::resource(format!(
                "{n} vertices exceeds the supported maximum of {MAX_VERTICES}"
            )));
        }
        let mut seen = 0u128;
        let mut out = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::structure(format!(
                    "edge {{{u},{v}}} references a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::structure(format!("tadpole at vertex {u}")));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            let bit = 1u128 << pair_index(n, a, b);
            if seen & bit != 0 {
                return Err(Error::structure(format!("repeated edge {{{a},{b}}}")));
            }
            seen |= bit;
            out.push((a as u8, b as u8));
        }
        Ok(UnorientedGraph { n, edges: out })
    }

    /// Permissive variant used while expanding brackets: a repeated edge makes
    /// the graph equal to minus itself, so `None` stands for the zero graph.
    /// Tadpoles and out-of-range labels are still errors.
    pub fn new_permissive(n: usize, edges: &[(usize, usize)]) -> Result<Option<Self>> {
        match Self::new(n, edges) {
            Ok(g) => Ok(Some(g)),
            Err(Error::Structure(msg)) if msg.starts_with("repeated edge") => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// The stick `•–•`.
    pub fn stick() -> Self {
        UnorientedGraph {
            n: 2,
            edges: vec![(0, 1)],
        }
    }

    /// A single vertex without edges.
    pub fn point() -> Self {
        UnorientedGraph {
            n: 1,
            edges: vec![],
        }
    }

    /// Complete graph on `n` vertices, edges in lexicographic order.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        Self::new(n, &edges).expect("complete graph is simple")
    }

    /// The tetrahedron, carrier of the cocycle `γ₃`.
    pub fn tetrahedron() -> Self {
        Self::complete(4)
    }

    /// Cycle `0-1-…-(n-1)-0`.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::structure("a cycle needs at least 3 vertices"));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::new(n, &edges)
    }

    /// Path `0-1-…-(n-1)`.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn bigrading(&self) -> (usize, usize) {
        (self.n, self.edges.len())
    }

    /// Edges in wedge order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(a, b)| (a as usize, b as usize))
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a as usize == v || b as usize == v)
            .count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(a, b) in &self.edges {
            d[a as usize] += 1;
            d[b as usize] += 1;
        }
        d
    }

    /// Adjacency as bitmasks, one per vertex.
    pub fn adjacency(&self) -> Vec<u16> {
        let mut adj = vec![0u16; self.n];
        for &(a, b) in &self.edges {
            adj[a as usize] |= 1 << b;
            adj[b as usize] |= 1 << a;
        }
        adj
    }

    /// Relabels vertices by `perm[old] = new`, keeping the wedge order.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::IndexOutOfRange {
                index: perm.len(),
                len: self.n,
            });
        }
        let edges: Vec<_> = self
            .edges()
            .map(|(a, b)| (perm[a], perm[b]))
            .collect();
        Self::new(self.n, &edges)
    }

    /// Permutes the wedge order: the result's `i`-th edge is `self`'s `order[i]`-th.
    pub fn reorder_edges(&self, order: &[usize]) -> Result<Self> {
        let mut check = order.to_vec();
        check.sort_unstable();
        if check != (0..self.edges.len()).collect::<Vec<_>>() {
            return Err(Error::structure("edge order is not a permutation"));
        }
        Ok(UnorientedGraph {
            n: self.n,
            edges: order.iter().map(|&i| self.edges[i]).collect(),
        })
    }

    /// Disjoint union: `other`'s labels shift by `self.n`, edges concatenate
    /// (first component's edges first).
    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        let shift = self.n;
        let mut edges = self.edge_list();
        edges.extend(other.edges().map(|(a, b)| (a + shift, b + shift)));
        Self::new(self.n + other.n, &edges)
    }

    /// True iff some automorphism induces an odd permutation of the edges.
    pub fn is_zero(&self) -> bool {
        canonical_form(self).sign == 0
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                for w in 0..self.n {
                    if adj[v] >> w & 1 == 1 && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

impl fmt::Display for UnorientedGraph {
    /// The one-line record `n E u v u v …`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.n, self.edges.len())?;
        for &(a, b) in &self.edges {
            write!(f, " {a} {b}")?;
        }
        Ok(())
    }
}

/// Position of the pair `{a < b}` in the order (0,1),(0,2),…,(0,n-1),(1,2),….
pub(crate) fn pair_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < n);
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

/// Parity of a sequence of distinct keys: +1 if even number of inversions.
pub(crate) fn permutation_sign<T: Ord>(seq: &[T]) -> i8 {
    let mut inv = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_structure() {
        assert!(UnorientedGraph::new(2, &[(0, 0)]).is_err());
        assert!(UnorientedGraph::new(2, &[(0, 1), (1, 0)]).is_err());
        assert!(UnorientedGraph::new(2, &[(0, 2)]).is_err());
        assert!(UnorientedGraph::new(0, &[]).is_err());
        assert!(matches!(
            UnorientedGraph::new_permissive(2, &[(0, 1), (1, 0)]),
            Ok(None)
        ));
        assert!(UnorientedGraph::new_permissive(2, &[(1, 1)]).is_err());
    }

    #[test]
    fn pair_index_is_dense() {
        let n = 6;
        let mut k = 0;
        for a in 0..n {
            for b in a + 1..n {
                assert_eq!(pair_index(n, a, b), k);
                k += 1;
            }
        }
    }

    #[test]
    fn components_of_union() {
        let k4 = UnorientedGraph::tetrahedron();
        let u = k4.disjoint_union(&k4).unwrap();
        assert_eq!(u.components().len(), 2);
        assert_eq!(u.bigrading(), (8, 12));
    }

    #[test]
    fn zero_graphs() {
        assert!(UnorientedGraph::cycle(3).unwrap().is_zero());
        assert!(UnorientedGraph::path(3).unwrap().is_zero());
        assert!(!UnorientedGraph::tetrahedron().is_zero());
        assert!(!UnorientedGraph::stick().is_zero());
    }
}
