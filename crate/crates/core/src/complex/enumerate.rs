use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{canonical_form, UnorientedGraph};

/// Enumeration is exhaustive, so it is capped at desk scale.
pub const MAX_ENUMERATION_VERTICES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationStrategy {
    /// Grow isomorphism classes one edge at a time, deduplicating by canonical form.
    Augmentation,
    /// Filter every `E`-subset of vertex pairs.
    Bitmask,
}

/// All simple tadpole-free graphs with `n` vertices and `e` edges, up to
/// isomorphism, that are not equal to minus themselves. Canonical, sorted.
pub fn enumerate_graphs(n: usize, e: usize) -> Result<Vec<UnorientedGraph>> {
    enumerate_graphs_with(n, e, EnumerationStrategy::Augmentation)
}

pub fn enumerate_graphs_with(n: usize, e: usize, strategy: EnumerationStrategy) -> Result<Vec<UnorientedGraph>> {
    if n == 0 {
        return Err(Error::structure("a graph needs at least one vertex"));
    }
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::resource(format!(
            "enumeration is limited to {MAX_ENUMERATION_VERTICES} vertices, asked for {n}"
        )));
    }
    let pairs = n * (n - 1) / 2;
    if e > pairs {
        return Ok(Vec::new());
    }
    let classes = match strategy {
        EnumerationStrategy::Augmentation => by_augmentation(n, e),
        EnumerationStrategy::Bitmask => by_bitmask(n, e, pairs),
    };
    Ok(classes
        .into_iter()
        .filter(|g| canonical_form(g).sign != 0)
        .collect())
}

fn by_augmentation(n: usize, e: usize) -> BTreeSet<UnorientedGraph> {
    let mut level: BTreeSet<UnorientedGraph> = BTreeSet::new();
    level.insert(UnorientedGraph::new(n, &[]).expect("edgeless graph"));
    for _ in 0..e {
        let mut next = BTreeSet::new();
        for g in &level {
            let adj = g.adjacency();
            let base = g.edge_list();
            for a in 0..n {
                for b in a + 1..n {
                    if adj[a] >> b & 1 == 1 {
                        continue;
                    }
                    let mut edges = base.clone();
                    edges.push((a, b));
                    let h = UnorientedGraph::new(n, &edges).expect("new edge is fresh");
                    next.insert(canonical_form(&h).graph);
                }
            }
        }
        level = next;
    }
    level
}

fn by_bitmask(n: usize, e: usize, pairs: usize) -> BTreeSet<UnorientedGraph> {
    let all: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let mut out = BTreeSet::new();
    // Gosper's hack over e-subsets of the pair set.
    if e == 0 {
        out.insert(UnorientedGraph::new(n, &[]).expect("edgeless graph"));
        return out;
    }
    let mut mask: u64 = (1u64 << e) - 1;
    let limit = 1u64 << pairs;
    while mask < limit {
        let edges: Vec<_> = (0..pairs).filter(|i| mask >> i & 1 == 1).map(|i| all[i]).collect();
        let g = UnorientedGraph::new(n, &edges).expect("distinct pairs");
        out.insert(canonical_form(&g).graph);
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    out
}
