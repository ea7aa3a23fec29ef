use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use super::digraph::OrGraph;
use super::leibniz::{Diamond, LeibnizGraph};

/// Leibniz graphs joined when their expansions share a Kontsevich orgraph.
#[derive(Clone, Debug)]
pub struct Metagraph {
    pub nodes: Vec<LeibnizGraph>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport {
    pub size: usize,
    pub edges: usize,
    pub diameter: usize,
    /// Independent cycles, `edges − size + 1`.
    pub cycle_rank: usize,
    pub leaves: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetagraphReport {
    pub nodes: usize,
    pub edges: usize,
    pub components: Vec<ComponentReport>,
}

impl MetagraphReport {
    pub fn is_connected(&self) -> bool {
        self.components.len() <= 1
    }
}

impl fmt::Display for MetagraphReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "nodes: {}", self.nodes)?;
        writeln!(f, "edges: {}", self.edges)?;
        writeln!(f, "components: {}", self.components.len())?;
        writeln!(f, "connected: {}", self.is_connected())?;
        for (k, c) in self.components.iter().enumerate() {
            writeln!(
                f,
                "component {k}: size {} edges {} diameter {} cycle_rank {} leaves {}",
                c.size, c.edges, c.diameter, c.cycle_rank, c.leaves
            )?;
        }
        Ok(())
    }
}

/// Builds the adjacency over all graphs occurring in `solutions`.
pub fn leibniz_metagraph(solutions: &[Diamond]) -> Metagraph {
    let nodes: Vec<LeibnizGraph> = solutions
        .iter()
        .flat_map(|d| d.graphs().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut by_orgraph: BTreeMap<OrGraph, Vec<usize>> = BTreeMap::new();
    for (k, g) in nodes.iter().enumerate() {
        for o in g.expansion_support().into_keys() {
            by_orgraph.entry(o).or_default().push(k);
        }
    }
    let mut edges = BTreeSet::new();
    for users in by_orgraph.values() {
        for (i, &a) in users.iter().enumerate() {
            for &b in &users[i + 1..] {
                edges.insert((a.min(b), a.max(b)));
            }
        }
    }
    Metagraph {
        nodes,
        edges: edges.into_iter().collect(),
    }
}

impl Metagraph {
    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    fn distances(adj: &[Vec<usize>], from: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; adj.len()];
        dist[from] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            for &w in &adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn report(&self) -> MetagraphReport {
        let adj = self.neighbours();
        let mut seen = vec![false; self.nodes.len()];
        let mut components = Vec::new();
        for s in 0..self.nodes.len() {
            if seen[s] {
                continue;
            }
            let dist = Self::distances(&adj, s);
            let members: Vec<usize> = (0..dist.len()).filter(|&v| dist[v].is_some()).collect();
            for &v in &members {
                seen[v] = true;
            }
            let diameter = members
                .iter()
                .map(|&v| Self::distances(&adj, v).into_iter().flatten().max().unwrap_or(0))
                .max()
                .unwrap_or(0);
            let edges = members.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
            components.push(ComponentReport {
                size: members.len(),
                edges,
                diameter,
                cycle_rank: edges + 1 - members.len(),
                leaves: members.iter().filter(|&&v| adj[v].len() == 1).count(),
            });
        }
        MetagraphReport {
            nodes: self.nodes.len(),
            edges: self.edges.len(),
            components,
        }
    }
}
