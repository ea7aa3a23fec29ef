//! The graph complex: insertion bracket, differential `d = [•–•, ·]`,
//! disjoint unions, enumeration of nonzero graphs and the cocycle library.

mod cohomology;
mod enumerate;
mod library;

use num_traits::One;
use rayon::prelude::*;

pub use cohomology::{cocycle_space, cohomology_representatives, coboundary_space, MAX_COHOMOLOGY_VERTICES};
pub use enumerate::{enumerate_graphs, enumerate_graphs_with, EnumerationStrategy, MAX_ENUMERATION_VERTICES};
pub use library::{CocycleLibrary, CocycleRecord, DATA_ENV};

use crate::error::{Error, Result};
use crate::graph::{GraphSum, UnorientedGraph};
use crate::rational::Q;

/// Raw (uncanonicalized) terms of inserting `g1` into vertex `at` of `g2`.
///
/// Every edge end at `at` is reattached to each vertex of `g1` in turn, so
/// there are `n(g1)^deg(at)` terms. Vertices of `g2` keep their order with
/// `at` removed, `g1`'s vertices follow. Wedge order: `g2`'s edges (reattached)
/// then `g1`'s edges.
pub fn insert_raw(g1: &UnorientedGraph, g2: &UnorientedGraph, at: usize) -> Result<Vec<UnorientedGraph>> {
    let (n1, n2) = (g1.vertex_count(), g2.vertex_count());
    if at >= n2 {
        return Err(Error::IndexOutOfRange { index: at, len: n2 });
    }
    let n = n2 - 1 + n1;
    let remap = |w: usize| if w < at { w } else { w - 1 };
    let base = n2 - 1;
    let g2_edges = g2.edge_list();
    let ends: Vec<usize> = g2_edges
        .iter()
        .enumerate()
        .filter(|(_, &(a, b))| a == at || b == at)
        .map(|(i, _)| i)
        .collect();
    let g1_edges: Vec<_> = g1.edges().map(|(a, b)| (a + base, b + base)).collect();

    let mut choice = vec![0usize; ends.len()];
    let mut out = Vec::new();
    loop {
        let mut edges = Vec::with_capacity(g2_edges.len() + g1_edges.len());
        let mut k = 0;
        for (i, &(a, b)) in g2_edges.iter().enumerate() {
            if k < ends.len() && ends[k] == i {
                let other = if a == at { b } else { a };
                edges.push((remap(other), base + choice[k]));
                k += 1;
            } else {
                edges.push((remap(a), remap(b)));
            }
        }
        edges.extend_from_slice(&g1_edges);
        if let Some(g) = UnorientedGraph::new_permissive(n, &edges)? {
            out.push(g);
        }
        // odometer over reattachments
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return Ok(out);
            }
            choice[pos] += 1;
            if choice[pos] < n1 {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

/// Insertion of `g1` into vertex `at` of `g2`, canonicalized with signs.
pub fn insert(g1: &UnorientedGraph, g2: &UnorientedGraph, at: usize) -> Result<GraphSum> {
    let mut s = GraphSum::new();
    for g in insert_raw(g1, g2, at)? {
        s.add_graph(&g, Q::one());
    }
    Ok(s)
}

/// `g1 ∘ g2`: insertion of `g1` into every vertex of `g2`.
fn compose_graphs(g1: &UnorientedGraph, g2: &UnorientedGraph) -> GraphSum {
    let mut s = GraphSum::new();
    for v in 0..g2.vertex_count() {
        for g in insert_raw(g1, g2, v).expect("vertex in range") {
            s.add_graph(&g, Q::one());
        }
    }
    s
}

/// `s1 ∘ s2`, bilinear.
pub fn compose(s1: &GraphSum, s2: &GraphSum) -> GraphSum {
    let pairs: Vec<_> = s1
        .iter()
        .flat_map(|a| s2.iter().map(move |b| (a, b)))
        .collect();
    let parts: Vec<GraphSum> = pairs
        .par_iter()
        .map(|((g1, c1), (g2, c2))| compose_graphs(g1, g2).scale(&(*c1 * *c2)))
        .collect();
    let mut out = GraphSum::new();
    for p in &parts {
        out += p;
    }
    out
}

/// Graded commutator `[s1, s2] = s1∘s2 − (−1)^(E₁E₂) s2∘s1`, extended
/// bilinearly over homogeneous terms.
pub fn lie_bracket(s1: &GraphSum, s2: &GraphSum) -> GraphSum {
    let pairs: Vec<_> = s1
        .iter()
        .flat_map(|a| s2.iter().map(move |b| (a, b)))
        .collect();
    let parts: Vec<GraphSum> = pairs
        .par_iter()
        .map(|((g1, c1), (g2, c2))| {
            let c = *c1 * *c2;
            let forward = compose_graphs(g1, g2);
            let backward = compose_graphs(g2, g1);
            let odd = (g1.edge_count() * g2.edge_count()) % 2 == 1;
            let term = if odd { forward.add(&backward) } else { forward.add(&backward.neg()) };
            term.scale(&c)
        })
        .collect();
    let mut out = GraphSum::new();
    for p in &parts {
        out += p;
    }
    out
}

/// `d(s) = [•–•, s]`; raises the bigrading by (1, 1).
pub fn differential(s: &GraphSum) -> GraphSum {
    lie_bracket(&GraphSum::single(&UnorientedGraph::stick()), s)
}

pub fn is_cocycle(s: &GraphSum) -> bool {
    differential(s).is_empty()
}

/// Termwise disjoint union, bilinear; the first factor's edges come first.
pub fn disjoint_union(s1: &GraphSum, s2: &GraphSum) -> GraphSum {
    let mut out = GraphSum::new();
    for (g1, c1) in s1.iter() {
        for (g2, c2) in s2.iter() {
            let g = g1.disjoint_union(g2).expect("union of simple graphs is simple");
            out.add_graph(&g, c1 * c2);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn stick() -> UnorientedGraph {
        UnorientedGraph::stick()
    }

    #[test]
    fn insert_into_isolated_vertex() {
        let s = insert(&stick(), &UnorientedGraph::point(), 0).unwrap();
        assert_eq!(s, GraphSum::single(&stick()));
    }

    #[test]
    fn insert_stick_into_stick() {
        let raw = insert_raw(&stick(), &stick(), 0).unwrap();
        // one edge end, two target vertices
        assert_eq!(raw.len(), 2);
        assert!(raw.iter().all(|g| g.bigrading() == (3, 2) && g.is_zero()));
        assert!(insert(&stick(), &stick(), 0).unwrap().is_empty());
    }

    #[test]
    fn insert_raw_term_count() {
        let k4 = UnorientedGraph::tetrahedron();
        // the stick vertex 1 carries one edge end; K4 has 4 vertices
        assert_eq!(insert_raw(&k4, &stick(), 1).unwrap().len(), 4);
        // K4 vertex carries 3 edge ends; the stick has 2 vertices
        assert_eq!(insert_raw(&stick(), &k4, 0).unwrap().len(), 8);
        assert!(insert_raw(&stick(), &k4, 4).is_err());
    }

    #[test]
    fn stick_and_tetrahedron_are_cocycles() {
        assert!(differential(&GraphSum::single(&stick())).is_empty());
        assert!(is_cocycle(&GraphSum::single(&UnorientedGraph::tetrahedron())));
    }

    #[test]
    fn bracket_with_empty() {
        let s = GraphSum::single(&UnorientedGraph::tetrahedron());
        assert!(lie_bracket(&s, &GraphSum::new()).is_empty());
        assert!(disjoint_union(&s, &GraphSum::new()).is_empty());
    }

    #[test]
    fn differential_raises_bigrading() {
        let g = UnorientedGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        let d = differential(&GraphSum::single(&g));
        for h in d.graphs() {
            assert_eq!(h.bigrading(), (5, 6));
        }
        assert!(differential(&d).is_empty());
    }

    #[test]
    fn union_of_tetrahedra() {
        let g3 = GraphSum::single(&UnorientedGraph::tetrahedron());
        let u = disjoint_union(&g3, &g3);
        assert_eq!(u.len(), 1);
        assert_eq!(u.bigrading(), Some((8, 12)));
        let _ = q(1);
    }
}
