use std::fmt;

use crate::error::{Error, Result};
use crate::graph::permutation_sign;
use crate::superpoly::SuperPoly;

use super::eval::{evaluate_ops, EdgeOp};

/// Next permutation in lexicographic order; false after the last one.
pub(crate) fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Lex-least relabeled edge list over relabelings that fix the first `fixed`
/// vertices, with the parity of the edge reordering; sign 0 for zero graphs.
pub(crate) fn canonical_directed(n: usize, fixed: usize, edges: &[(u8, u8)]) -> (Vec<(u8, u8)>, i8) {
    let mut tail: Vec<usize> = (fixed..n).collect();
    let mut best: Option<(Vec<(u8, u8)>, i8)> = None;
    loop {
        let label = |v: u8| -> u8 {
            let v = v as usize;
            if v < fixed {
                v as u8
            } else {
                tail[v - fixed] as u8
            }
        };
        let mapped: Vec<(u8, u8)> = edges.iter().map(|&(u, v)| (label(u), label(v))).collect();
        let sign = permutation_sign(&mapped);
        let mut sorted = mapped;
        sorted.sort_unstable();
        match &mut best {
            None => best = Some((sorted, sign)),
            Some((b, s)) => {
                if sorted < *b {
                    *b = sorted;
                    *s = sign;
                } else if sorted == *b && *s != sign {
                    *s = 0;
                }
            }
        }
        if !next_permutation(&mut tail) {
            break;
        }
    }
    best.expect("at least one labeling")
}

/// Kontsevich oriented graph: every vertex carries the bivector; edges are
/// odd directed derivations in wedge order; unused ξ-slots are the output.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrGraph {
    n: u8,
    edges: Vec<(u8, u8)>,
}

impl OrGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 || n > 12 {
            return Err(Error::structure(format!("oriented graph with {n} vertices")));
        }
        let mut out = vec![0usize; n];
        let mut seen = Vec::new();
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::IndexOutOfRange { index: u.max(v), len: n });
            }
            if u == v {
                return Err(Error::structure(format!("tadpole at {u}")));
            }
            if seen.contains(&(u, v)) {
                return Err(Error::structure(format!("repeated edge {u}->{v}")));
            }
            seen.push((u, v));
            out[u] += 1;
        }
        Ok(OrGraph {
            n: n as u8,
            edges: edges.iter().map(|&(u, v)| (u as u8, v as u8)).collect(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n as usize
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(u, v)| (u as usize, v as usize))
    }

    /// Canonical representative and sign; `None` for zero graphs or graphs
    /// with a vertex of out-degree above 2 (which evaluate to zero).
    pub fn canonical(&self) -> Option<(OrGraph, i8)> {
        let mut out = vec![0; self.n as usize];
        for &(u, _) in &self.edges {
            out[u as usize] += 1;
            if out[u as usize] > 2 {
                return None;
            }
        }
        let (edges, sign) = canonical_directed(self.n as usize, 0, &self.edges);
        (sign != 0).then_some((OrGraph { n: self.n, edges }, sign))
    }

    pub fn evaluate(&self, p: &SuperPoly) -> Result<SuperPoly> {
        let ops: Vec<EdgeOp> = self.edges().map(|(u, v)| EdgeOp::Directed(u, v)).collect();
        evaluate_ops(&vec![p.clone(); self.n as usize], &ops)
    }
}

impl fmt::Display for OrGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.n, self.edges.len())?;
        for (u, v) in &self.edges {
            write!(f, " {u}>{v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_cover_all() {
        let mut p = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 24);
    }

    #[test]
    fn symmetric_wedge_is_zero() {
        // 0->1, 0->2: swapping 1 and 2 swaps the two edges
        assert!(OrGraph::new(3, &[(0, 1), (0, 2)]).unwrap().canonical().is_none());
        // 0->1, 1->2: no symmetry
        assert!(OrGraph::new(3, &[(0, 1), (1, 2)]).unwrap().canonical().is_some());
    }

    #[test]
    fn relabeling_keeps_canonical_form() {
        let a = OrGraph::new(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let b = OrGraph::new(3, &[(1, 2), (2, 0), (0, 1)]).unwrap();
        let (ca, sa) = a.canonical().unwrap();
        let (cb, sb) = b.canonical().unwrap();
        assert_eq!(ca, cb);
        // rotating the cyclic edge list by one is an even permutation of 3 edges
        assert_eq!(sa, sb);
    }
}
