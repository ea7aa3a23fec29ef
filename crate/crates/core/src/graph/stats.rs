use std::collections::BTreeMap;
use std::fmt;

use super::{GraphSum, UnorientedGraph};
use crate::rational::{format_short, Q};

/// Combinatorial statistics of one graph of a sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphStats {
    pub graph: UnorientedGraph,
    pub coefficient: Q,
    /// Longest shortest path; `None` when disconnected.
    pub diameter: Option<usize>,
    /// Vertex degrees, sorted descending.
    pub valencies: Vec<usize>,
    pub connected: bool,
    pub components: usize,
    /// Bridges: edges whose removal increases the number of components.
    pub bottlenecks: usize,
    /// Vertices whose removal increases the number of components.
    pub cut_vertices: usize,
}

/// One report row per term, in canonical order.
pub fn graph_stats(s: &GraphSum) -> Vec<GraphStats> {
    s.iter().map(|(g, c)| stats_of(g, c.clone())).collect()
}

fn distances_from(adj: &[u16], src: usize) -> Vec<Option<usize>> {
    let n = adj.len();
    let mut dist = vec![None; n];
    dist[src] = Some(0);
    let mut queue = vec![src];
    let mut head = 0;
    while head < queue.len() {
        let v = queue[head];
        head += 1;
        let d = dist[v].unwrap();
        for w in 0..n {
            if adj[v] >> w & 1 == 1 && dist[w].is_none() {
                dist[w] = Some(d + 1);
                queue.push(w);
            }
        }
    }
    dist
}

fn component_count(n: usize, edges: &[(usize, usize)], skip_vertex: Option<usize>) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut x = x;
        while p[x] != r {
            let next = p[x];
            p[x] = r;
            x = next;
        }
        r
    }
    for &(a, b) in edges {
        if Some(a) == skip_vertex || Some(b) == skip_vertex {
            continue;
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    (0..n)
        .filter(|&v| Some(v) != skip_vertex)
        .filter(|&v| find(&mut parent, v) == v)
        .count()
}

fn stats_of(g: &UnorientedGraph, coefficient: Q) -> GraphStats {
    let n = g.vertex_count();
    let adj = g.adjacency();
    let edges = g.edge_list();
    let components = component_count(n, &edges, None);
    let connected = components == 1;
    let diameter = if connected {
        (0..n)
            .map(|s| distances_from(&adj, s).into_iter().flatten().max().unwrap_or(0))
            .max()
    } else {
        None
    };
    let mut valencies = g.degrees();
    valencies.sort_unstable_by(|a, b| b.cmp(a));
    let bottlenecks = (0..edges.len())
        .filter(|&i| {
            let rest: Vec<_> = edges
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &e)| e)
                .collect();
            component_count(n, &rest, None) > components
        })
        .count();
    let cut_vertices = (0..n)
        .filter(|&v| g.degree(v) > 0 && component_count(n, &edges, Some(v)) > components)
        .count();
    GraphStats {
        graph: g.clone(),
        coefficient,
        diameter,
        valencies,
        connected,
        components,
        bottlenecks,
        cut_vertices,
    }
}

impl GraphStats {
    /// Valency histogram: degree → number of vertices.
    pub fn valency_distribution(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &d in &self.valencies {
            *h.entry(d).or_insert(0) += 1;
        }
        h
    }
}

impl fmt::Display for GraphStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let diam = self
            .diameter
            .map(|d| d.to_string())
            .unwrap_or_else(|| "inf".into());
        let val: Vec<String> = self.valencies.iter().map(|v| v.to_string()).collect();
        write!(
            f,
            "[{}]\tcoeff={}\tdiameter={}\tvalencies={}\tconnected={}\tcomponents={}\tbottlenecks={}\tcut_vertices={}",
            self.graph,
            format_short(&self.coefficient),
            diam,
            val.join(","),
            self.connected,
            self.components,
            self.bottlenecks,
            self.cut_vertices
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tetrahedron_stats() {
        let s = GraphSum::single(&UnorientedGraph::tetrahedron());
        let r = &graph_stats(&s)[0];
        assert_eq!(r.diameter, Some(1));
        assert_eq!(r.valencies, vec![3, 3, 3, 3]);
        assert!(r.connected);
        assert_eq!(r.bottlenecks, 0);
        assert_eq!(r.cut_vertices, 0);
    }

    #[test]
    fn stick_stats() {
        let r = &graph_stats(&GraphSum::single(&UnorientedGraph::stick()))[0];
        assert_eq!(r.diameter, Some(1));
        assert_eq!(r.valencies, vec![1, 1]);
        assert_eq!(r.bottlenecks, 1);
    }

    #[test]
    fn union_is_disconnected() {
        let k4 = UnorientedGraph::tetrahedron();
        let u = k4.disjoint_union(&k4).unwrap();
        let r = &graph_stats(&GraphSum::single(&u))[0];
        assert!(!r.connected);
        assert_eq!(r.components, 2);
        assert_eq!(r.diameter, None);
    }
}
