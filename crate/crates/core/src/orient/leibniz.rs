use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::GraphSum;
use crate::rational::{format_pq, parse_q, q, Q};
use crate::superpoly::{jacobiator, SuperPoly};

use super::digraph::{canonical_directed, OrGraph};
use super::eval::{evaluate_ops, EdgeOp};

pub const JACOBIATOR_SLOTS: usize = 3;
pub const BIVECTOR_SLOTS: usize = 2;

/// Oriented graph with the Jacobiator at vertex 0 and bivectors at `1..=m`.
/// Edges `u -> v` are in wedge order; free slots go to sinks.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LeibnizGraph {
    m: u8,
    edges: Vec<(u8, u8)>,
}

impl LeibnizGraph {
    pub fn new(m: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let n = m + 1;
        if n > 10 {
            return Err(Error::resource(format!("Leibniz graph with {m} bivector vertices")));
        }
        let mut out = vec![0usize; n];
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::IndexOutOfRange { index: u.max(v), len: n });
            }
            if u == v {
                return Err(Error::structure(format!("tadpole at {u}")));
            }
            if !seen.insert((u, v)) {
                return Err(Error::structure(format!("repeated edge {u}->{v}")));
            }
            out[u] += 1;
        }
        if out[0] > JACOBIATOR_SLOTS {
            return Err(Error::structure("Jacobiator vertex has more than 3 outgoing edges"));
        }
        if let Some(v) = (1..n).find(|&v| out[v] > BIVECTOR_SLOTS) {
            return Err(Error::structure(format!("bivector vertex {v} has more than 2 outgoing edges")));
        }
        Ok(LeibnizGraph {
            m: m as u8,
            edges: edges.iter().map(|&(u, v)| (u as u8, v as u8)).collect(),
        })
    }

    pub fn bivector_count(&self) -> usize {
        self.m as usize
    }

    pub fn vertex_count(&self) -> usize {
        self.m as usize + 1
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of sinks, i.e. the ξ-degree of the value.
    pub fn sink_count(&self) -> usize {
        JACOBIATOR_SLOTS + BIVECTOR_SLOTS * self.m as usize - self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(u, v)| (u as usize, v as usize))
    }

    /// Canonical form under relabeling of bivector vertices, with sign; `None` for zero graphs.
    pub fn canonical(&self) -> Option<(LeibnizGraph, i8)> {
        let (edges, sign) = canonical_directed(self.vertex_count(), 1, &self.edges);
        (sign != 0).then_some((LeibnizGraph { m: self.m, edges }, sign))
    }

    /// Direct value with content `½⟦P,P⟧` at the Jacobiator vertex.
    pub fn evaluate(&self, p: &SuperPoly) -> Result<SuperPoly> {
        let mut contents = vec![p.clone(); self.vertex_count()];
        contents[0] = jacobiator(p)?;
        let ops: Vec<EdgeOp> = self.edges().map(|(u, v)| EdgeOp::Directed(u, v)).collect();
        evaluate_ops(&contents, &ops)
    }

    /// Kontsevich orgraphs obtained by splitting the Jacobiator into two
    /// bivectors `a = 0`, `b = m+1` joined by a last edge `a -> b`.
    /// Edge ends at the Jacobiator are distributed over `a` and `b` in all ways.
    pub fn expand(&self) -> Vec<(OrGraph, Q)> {
        let b = self.m as usize + 1;
        let incident: Vec<usize> = (0..self.edges.len())
            .filter(|&k| self.edges[k].0 == 0 || self.edges[k].1 == 0)
            .collect();
        let mut out = Vec::new();
        for mask in 0u32..(1 << incident.len()) {
            let mut edges: Vec<(usize, usize)> = self.edges().collect();
            for (bit, &k) in incident.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    let (u, v) = edges[k];
                    edges[k] = if u == 0 { (b, v) } else { (u, b) };
                }
            }
            edges.push((0, b));
            match OrGraph::new(b + 1, &edges) {
                Ok(g) => out.push((g, q(-1))),
                // a doubled edge: the two copies anticommute
                Err(_) => continue,
            }
        }
        out
    }

    /// Value via the orgraph expansion; equals `evaluate`.
    pub fn evaluate_expanded(&self, p: &SuperPoly) -> Result<SuperPoly> {
        let mut out = SuperPoly::zero(p.dim());
        for (g, c) in self.expand() {
            out.add_scaled(&g.evaluate(p)?, &c);
        }
        Ok(out)
    }

    /// Canonical orgraphs of the expansion with collected coefficients.
    pub fn expansion_support(&self) -> BTreeMap<OrGraph, Q> {
        let mut out: BTreeMap<OrGraph, Q> = BTreeMap::new();
        for (g, c) in self.expand() {
            if let Some((cg, s)) = g.canonical() {
                let e = out.entry(cg).or_insert_with(Q::zero);
                *e += c * q(s as i64);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

impl fmt::Display for LeibnizGraph {
    /// `k ; J t t t ; P t t ; …`, targets in edge order per source, `s` for a sink.
    /// Exact for graphs whose edges are sorted by source, as canonical forms are.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sink_count())?;
        for v in 0..self.vertex_count() {
            let (tag, slots) = if v == 0 { ("J", JACOBIATOR_SLOTS) } else { ("P", BIVECTOR_SLOTS) };
            write!(f, " ; {tag}")?;
            let targets: Vec<u8> = self.edges.iter().filter(|e| e.0 as usize == v).map(|e| e.1).collect();
            for t in &targets {
                write!(f, " {t}")?;
            }
            for _ in targets.len()..slots {
                write!(f, " s")?;
            }
        }
        Ok(())
    }
}

pub fn parse_leibniz(text: &str) -> Result<LeibnizGraph> {
    let bad = |msg: String| Error::Parse { pos: 0, msg };
    let mut parts = text.split(';').map(str::trim);
    let k: usize = parts
        .next()
        .and_then(|h| h.parse().ok())
        .ok_or_else(|| bad("expected sink count".into()))?;
    let mut edges = Vec::new();
    let mut v = 0usize;
    for part in parts {
        let mut tok = part.split_whitespace();
        let (want, slots) = if v == 0 { ("J", JACOBIATOR_SLOTS) } else { ("P", BIVECTOR_SLOTS) };
        if tok.next() != Some(want) {
            return Err(bad(format!("vertex {v}: expected `{want}`")));
        }
        let targets: Vec<&str> = tok.collect();
        if targets.len() != slots {
            return Err(bad(format!("vertex {v}: expected {slots} slots, found {}", targets.len())));
        }
        for t in targets {
            if t != "s" {
                let w: usize = t.parse().map_err(|_| bad(format!("vertex {v}: bad target `{t}`")))?;
                edges.push((v, w));
            }
        }
        v += 1;
    }
    if v == 0 {
        return Err(bad("missing Jacobiator vertex".into()));
    }
    let g = LeibnizGraph::new(v - 1, &edges)?;
    if g.sink_count() != k {
        return Err(bad(format!("header says {k} sinks, slots give {}", g.sink_count())));
    }
    Ok(g)
}

/// Rational combination of canonical Leibniz graphs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diamond {
    terms: BTreeMap<LeibnizGraph, Q>,
}

impl Diamond {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_graph(&mut self, g: &LeibnizGraph, c: Q) {
        let Some((cg, s)) = g.canonical() else { return };
        let e = self.terms.entry(cg.clone()).or_insert_with(Q::zero);
        *e += c * q(s as i64);
        if e.is_zero() {
            self.terms.remove(&cg);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LeibnizGraph, &Q)> {
        self.terms.iter()
    }

    pub fn graphs(&self) -> impl Iterator<Item = &LeibnizGraph> {
        self.terms.keys()
    }

    pub fn evaluate(&self, p: &SuperPoly) -> Result<SuperPoly> {
        let parts: Vec<SuperPoly> = self
            .terms
            .par_iter()
            .map(|(g, c)| g.evaluate(p).map(|v| v.scale(c)))
            .collect::<Result<_>>()?;
        let mut out = SuperPoly::zero(p.dim());
        for v in &parts {
            out.add_assign(v);
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (g, c) in &self.terms {
            s.push_str(&format!("{}\t{}\n", format_pq(c), g));
        }
        s
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut d = Diamond::new();
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (c, rec) = line
                .split_once('\t')
                .ok_or_else(|| Error::format(origin, k + 1, "expected `coefficient<TAB>record`"))?;
            let c = parse_q(c).map_err(|e| Error::format(origin, k + 1, e.to_string()))?;
            let g = parse_leibniz(rec).map_err(|e| Error::format(origin, k + 1, e.to_string()))?;
            d.add_graph(&g, c);
        }
        Ok(d)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?, &path.display().to_string())
    }
}

impl FromIterator<(LeibnizGraph, Q)> for Diamond {
    fn from_iter<I: IntoIterator<Item = (LeibnizGraph, Q)>>(iter: I) -> Self {
        let mut d = Diamond::new();
        for (g, c) in iter {
            d.add_graph(&g, c);
        }
        d
    }
}

/// All nonzero canonical Leibniz graphs with `m` bivector vertices and `sinks` free slots,
/// sorted by canonical encoding.
pub fn enumerate_leibniz(m: usize, sinks: usize) -> Result<Vec<LeibnizGraph>> {
    if m > 5 {
        return Err(Error::resource(format!("Leibniz enumeration with {m} bivector vertices")));
    }
    let n = m + 1;
    let total = JACOBIATOR_SLOTS + BIVECTOR_SLOTS * m;
    if sinks > total {
        return Ok(Vec::new());
    }
    let e = total - sinks;
    // target subsets per vertex
    let choices: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|v| {
            let cap = if v == 0 { JACOBIATOR_SLOTS } else { BIVECTOR_SLOTS };
            let others: Vec<usize> = (0..n).filter(|&w| w != v).collect();
            (0u32..(1 << others.len()))
                .filter(|s| s.count_ones() as usize <= cap)
                .map(|s| (0..others.len()).filter(|&k| s >> k & 1 == 1).map(|k| others[k]).collect())
                .collect()
        })
        .collect();
    let mut found = BTreeSet::new();
    let mut pick = vec![0usize; n];
    fn rec(
        v: usize,
        left: usize,
        choices: &[Vec<Vec<usize>>],
        pick: &mut Vec<usize>,
        m: usize,
        found: &mut BTreeSet<LeibnizGraph>,
    ) {
        if v == choices.len() {
            if left == 0 {
                let edges: Vec<(usize, usize)> = (0..choices.len())
                    .flat_map(|u| choices[u][pick[u]].iter().map(move |&w| (u, w)))
                    .collect();
                if let Some((g, _)) = LeibnizGraph::new(m, &edges).ok().and_then(|g| g.canonical()) {
                    found.insert(g);
                }
            }
            return;
        }
        for (k, c) in choices[v].iter().enumerate() {
            if c.len() <= left {
                pick[v] = k;
                rec(v + 1, left - c.len(), choices, pick, m, found);
            }
        }
    }
    rec(0, e, &choices, &mut pick, m, &mut found);
    Ok(found.into_iter().collect())
}

/// `Σ_i Or(γ)(P, …, ⟦P,P⟧_i, …, P)` written as Leibniz graphs.
pub fn tautological_diamond(gamma: &GraphSum) -> Result<Diamond> {
    let mut d = Diamond::new();
    for (g, c) in gamma.iter() {
        let n = g.vertex_count();
        let edges: Vec<(usize, usize)> = g.edges().collect();
        for i in 0..n {
            // move vertex i to position 0
            let relabel = |v: usize| if v == i { 0 } else if v == 0 { i } else { v };
            for mask in 0u32..(1 << edges.len()) {
                let directed: Vec<(usize, usize)> = edges
                    .iter()
                    .enumerate()
                    .map(|(k, &(u, v))| if mask >> k & 1 == 1 { (relabel(v), relabel(u)) } else { (relabel(u), relabel(v)) })
                    .collect();
                if let Ok(l) = LeibnizGraph::new(n - 1, &directed) {
                    // ⟦P,P⟧ = 2·Jacobiator
                    d.add_graph(&l, c * q(2));
                }
            }
        }
    }
    Ok(d)
}
