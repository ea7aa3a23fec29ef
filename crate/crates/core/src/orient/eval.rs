use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{GraphSum, UnorientedGraph};
use crate::rational::{q, Q};
use crate::superpoly::{schouten, Monomial, SuperPoly, Symbol, Term, Var, XiSet};

/// One odd edge operator acting on private vertex copies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeOp {
    /// `Σ_i ∂/∂ξ_{u,i} ∂/∂x_{v,i}`: differentiate the content at `v` along an odd slot of `u`.
    Directed(usize, usize),
    /// Sum of both directions.
    Undirected(usize, usize),
}

impl EdgeOp {
    fn endpoints(self) -> (usize, usize) {
        match self {
            EdgeOp::Directed(u, v) | EdgeOp::Undirected(u, v) => (u, v),
        }
    }
}

type Tensor = HashMap<Vec<Term>, Q>;

fn push(t: &mut Tensor, key: Vec<Term>, c: Q) {
    use std::collections::hash_map::Entry;
    match t.entry(key) {
        Entry::Vacant(e) => {
            e.insert(c);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn apply_directed(input: &Tensor, u: usize, v: usize, r: usize, out: &mut Tensor) {
    for (key, c) in input {
        let prefix: usize = key[..u].iter().map(|t| t.xi.degree()).sum();
        for i in 0..r {
            let Some((xi_u, flip)) = key[u].xi.remove(i) else { continue };
            let neg = flip ^ (prefix % 2 == 1);
            for (mult, mono) in key[v].mono.derivative(i) {
                let mut next = key.clone();
                next[u].xi = xi_u;
                next[v].mono = mono;
                let k = c * q(mult as i64);
                push(out, next, if neg { -k } else { k });
            }
        }
    }
}

/// ξ-demand still to be met by each vertex when `ops[..=k]` remain.
fn feasible(key: &[Term], pending_out: &[usize], pending_total: usize) -> bool {
    let mut total = 0;
    for (t, &need) in key.iter().zip(pending_out) {
        let d = t.xi.degree();
        if d < need {
            return false;
        }
        total += d;
    }
    total >= pending_total
}

fn run_ops(mut tensor: Tensor, n: usize, r: usize, ops: &[EdgeOp]) -> Tensor {
    // operators act right to left: the last edge in wedge order acts first
    for k in (0..ops.len()).rev() {
        let mut out = Tensor::new();
        match ops[k] {
            EdgeOp::Directed(u, v) => apply_directed(&tensor, u, v, r, &mut out),
            EdgeOp::Undirected(u, v) => {
                apply_directed(&tensor, u, v, r, &mut out);
                apply_directed(&tensor, v, u, r, &mut out);
            }
        }
        if k > 0 {
            let mut pending_out = vec![0usize; n];
            for op in &ops[..k] {
                if let EdgeOp::Directed(u, _) = op {
                    pending_out[*u] += 1;
                }
            }
            out.retain(|key, _| feasible(key, &pending_out, k));
        }
        tensor = out;
    }
    tensor
}

fn diagonal(tensor: &Tensor, r: usize) -> SuperPoly {
    let mut out = SuperPoly::zero(r);
    for (key, c) in tensor {
        let mut xi = XiSet::empty();
        let mut mono = Monomial::one();
        let mut neg = false;
        let mut dead = false;
        for t in key {
            match xi.wedge(t.xi) {
                Some((w, flip)) => {
                    xi = w;
                    neg ^= flip;
                }
                None => {
                    dead = true;
                    break;
                }
            }
            mono = mono.mul(&t.mono);
        }
        if !dead {
            out.add_term(xi, mono, if neg { -c.clone() } else { c.clone() });
        }
    }
    out
}

/// Degree bound on a parameter, used to evaluate on truncated series.
#[derive(Clone, Copy, Debug)]
pub struct Truncation {
    pub param: Symbol,
    pub max_degree: usize,
}

fn param_degree(t: &Term, param: Symbol) -> usize {
    t.mono.degree_in(|v| matches!(v, Var::Param(s) if *s == param))
}

fn initial_terms(contents: &[SuperPoly], trunc: Option<Truncation>) -> Vec<(Vec<Term>, Q)> {
    let mut acc: Vec<(Vec<Term>, Q, usize)> = vec![(Vec::new(), Q::from_integer(1.into()), 0)];
    for p in contents {
        let mut next = Vec::with_capacity(acc.len() * p.len());
        for (key, c, deg) in &acc {
            for (t, d) in p.terms() {
                let deg = deg + trunc.map_or(0, |tr| param_degree(t, tr.param));
                if trunc.is_some_and(|tr| deg > tr.max_degree) {
                    continue;
                }
                let mut k = key.clone();
                k.push(t.clone());
                next.push((k, c * d, deg));
            }
        }
        acc = next;
    }
    acc.into_iter().map(|(k, c, _)| (k, c)).collect()
}

/// Applies `ops` (in wedge order) to `contents[0] ⊗ … ⊗ contents[n−1]` and restricts to the diagonal.
pub fn evaluate_ops(contents: &[SuperPoly], ops: &[EdgeOp]) -> Result<SuperPoly> {
    evaluate_ops_truncated(contents, ops, None)
}

/// As `evaluate_ops`, dropping every product term whose degree in the
/// truncation parameter exceeds the bound.
pub fn evaluate_ops_truncated(contents: &[SuperPoly], ops: &[EdgeOp], trunc: Option<Truncation>) -> Result<SuperPoly> {
    let n = contents.len();
    let Some(first) = contents.first() else {
        return Err(Error::structure("no vertex contents"));
    };
    let r = first.dim();
    if let Some(p) = contents.iter().find(|p| p.dim() != r) {
        return Err(Error::Dimension {
            expected: r,
            found: p.dim(),
        });
    }
    for op in ops {
        let (u, v) = op.endpoints();
        if u >= n || v >= n {
            return Err(Error::IndexOutOfRange {
                index: u.max(v),
                len: n,
            });
        }
        if u == v {
            return Err(Error::structure("edge operator on a single vertex"));
        }
    }
    let caps: Vec<usize> = contents.iter().map(|p| p.xi_degrees().last().copied().unwrap_or(0)).collect();
    let orientations = orientations(ops, &caps);
    let terms = initial_terms(contents, trunc);
    let parts: Vec<SuperPoly> = orientations
        .par_iter()
        .map(|directed| {
            let mut t = Tensor::new();
            for (k, c) in &terms {
                push(&mut t, k.clone(), c.clone());
            }
            diagonal(&run_ops(t, n, r, directed), r)
        })
        .collect();
    let mut out = SuperPoly::zero(r);
    for p in &parts {
        out.add_assign(p);
    }
    Ok(out)
}

/// Splits undirected operators into both directions, keeping only choices in
/// which no vertex is asked for more odd slots than its content has.
fn orientations(ops: &[EdgeOp], caps: &[usize]) -> Vec<Vec<EdgeOp>> {
    fn rec(k: usize, ops: &[EdgeOp], caps: &[usize], used: &mut Vec<usize>, cur: &mut Vec<EdgeOp>, out: &mut Vec<Vec<EdgeOp>>) {
        if k == ops.len() {
            out.push(cur.clone());
            return;
        }
        let dirs: &[(usize, usize)] = &match ops[k] {
            EdgeOp::Directed(u, v) => vec![(u, v)],
            EdgeOp::Undirected(u, v) => vec![(u, v), (v, u)],
        };
        for &(u, v) in dirs {
            if used[u] < caps[u] {
                used[u] += 1;
                cur.push(EdgeOp::Directed(u, v));
                rec(k + 1, ops, caps, used, cur, out);
                cur.pop();
                used[u] -= 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(0, ops, caps, &mut vec![0; caps.len()], &mut Vec::new(), &mut out);
    out
}

/// Or(γ) on one graph with the given contents, one per vertex.
pub fn evaluate(g: &UnorientedGraph, contents: &[SuperPoly]) -> Result<SuperPoly> {
    if contents.len() != g.vertex_count() {
        return Err(Error::Dimension {
            expected: g.vertex_count(),
            found: contents.len(),
        });
    }
    let ops: Vec<EdgeOp> = g.edges().map(|(u, v)| EdgeOp::Undirected(u, v)).collect();
    evaluate_ops(contents, &ops)
}

/// `Q(P) = Or(γ)(P, …, P)`.
pub fn orient_flow(gamma: &GraphSum, p: &SuperPoly) -> Result<SuperPoly> {
    orient_flow_truncated(gamma, p, None)
}

/// `orient_flow` on a series in a parameter, modulo a power of that parameter.
pub fn orient_flow_truncated(gamma: &GraphSum, p: &SuperPoly, trunc: Option<Truncation>) -> Result<SuperPoly> {
    let mut out = SuperPoly::zero(p.dim());
    for (g, c) in gamma.iter() {
        let contents = vec![p.clone(); g.vertex_count()];
        let ops: Vec<EdgeOp> = g.edges().map(|(u, v)| EdgeOp::Undirected(u, v)).collect();
        out.add_scaled(&evaluate_ops_truncated(&contents, &ops, trunc)?, c);
    }
    Ok(out)
}

/// `Or(γ)(P, …, ⟦P,P⟧_i, …, P)`.
pub fn jacobiator_insertion(gamma: &GraphSum, p: &SuperPoly, i: usize) -> Result<SuperPoly> {
    require_bivector(p)?;
    let pp = schouten(p, p)?;
    let mut out = SuperPoly::zero(p.dim());
    for (g, c) in gamma.iter() {
        let n = g.vertex_count();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, len: n });
        }
        let mut contents = vec![p.clone(); n];
        contents[i] = pp.clone();
        out.add_scaled(&evaluate(g, &contents)?, c);
    }
    Ok(out)
}

/// `Σ_i Or(γ)(P, …, ⟦P,P⟧_i, …, P)`.
pub fn jacobiator_insertion_sum(gamma: &GraphSum, p: &SuperPoly) -> Result<SuperPoly> {
    let n = gamma.graphs().map(|g| g.vertex_count()).max().unwrap_or(0);
    let mut out = SuperPoly::zero(p.dim());
    for i in 0..n {
        let part: GraphSum = gamma
            .iter()
            .filter(|(g, _)| g.vertex_count() > i)
            .map(|(g, c)| (g.clone(), c.clone()))
            .collect();
        out.add_assign(&jacobiator_insertion(&part, p, i)?);
    }
    Ok(out)
}

pub(crate) fn require_bivector(p: &SuperPoly) -> Result<()> {
    match p.xi_degree() {
        Some(2) => Ok(()),
        _ if p.is_zero() => Ok(()),
        Some(d) => Err(Error::Degree { expected: 2, found: d }),
        None => Err(Error::Degree {
            expected: 2,
            found: *p.xi_degrees().iter().find(|&&d| d != 2).unwrap_or(&0),
        }),
    }
}
