use std::fmt;


use crate::complex::CocycleRecord;
use crate::error::{Error, Result};
use crate::graph::GraphSum;
use crate::orient::{evaluate, orient_flow, orient_flow_truncated, Truncation};
use crate::rational::{q, ratio};
use crate::superpoly::SuperPoly;

use super::model::PoissonModel;

/// Right-hand side `Q(P)` of a flow `dP/dε = Q(P)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Flow {
    /// `Q(P) = P`.
    Scaling,
    /// `Q(P) = Or(γ)(P, …, P)`.
    Graph(GraphSum),
}

impl Flow {
    pub fn from_cocycle(c: &CocycleRecord) -> Self {
        Flow::Graph(c.sum.clone())
    }

    pub fn apply(&self, p: &SuperPoly) -> Result<SuperPoly> {
        match self {
            Flow::Scaling => Ok(p.clone()),
            Flow::Graph(g) => orient_flow(g, p),
        }
    }
}

impl fmt::Display for Flow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flow::Scaling => f.write_str("scaling"),
            Flow::Graph(g) => write!(f, "graph flow with {} term(s)", g.len()),
        }
    }
}

/// `Or(γ)(P)` for the model's bivector.
pub fn apply_symmetry(model: &PoissonModel, gamma: &CocycleRecord) -> Result<SuperPoly> {
    orient_flow(&gamma.sum, &model.bivector)
}

/// Highest ε-order accepted by `picard_integrate`.
pub const MAX_PICARD_ORDER: usize = 6;
pub const DEFAULT_PICARD_ORDER: usize = 3;

/// Compositions of `total` into `parts` non-negative parts, in lexicographic order.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Coefficients `P_0..P_k` of the formal solution `P(ε) = Σ ε^m P_m` with
/// `P_0 = model.bivector`, from `(m+1)·P_{m+1} = [ε^m] Q(P(ε))`.
pub fn picard_integrate(model: &PoissonModel, flow: &Flow, k: usize) -> Result<Vec<SuperPoly>> {
    if k > MAX_PICARD_ORDER {
        return Err(Error::resource(format!("order {k} exceeds the limit {MAX_PICARD_ORDER}")));
    }
    let mut coeffs = vec![model.bivector.clone()];
    for m in 0..k {
        let next = match flow {
            Flow::Scaling => coeffs[m].clone(),
            Flow::Graph(gamma) => {
                let mut acc = SuperPoly::zero(model.dim);
                for (g, c) in gamma.iter() {
                    let n = g.vertex_count();
                    for comp in compositions(m, n) {
                        if comp.iter().any(|&i| coeffs[i].is_zero()) {
                            continue;
                        }
                        let contents: Vec<SuperPoly> = comp.iter().map(|&i| coeffs[i].clone()).collect();
                        acc.add_scaled(&evaluate(g, &contents)?, c);
                    }
                }
                acc
            }
        };
        coeffs.push(next.scale(&ratio(1, m as i64 + 1)));
    }
    Ok(coeffs)
}

/// `Σ ε^m P_m` with `ε` as the parameter `eps`.
pub fn series(coeffs: &[SuperPoly], eps: &str) -> SuperPoly {
    let r = coeffs.first().map_or(1, |p| p.dim());
    let e = SuperPoly::param(r, eps);
    let mut out = SuperPoly::zero(r);
    for (m, p) in coeffs.iter().enumerate() {
        out.add_assign(&p.mul(&e.pow(m as u32)));
    }
    out
}

/// Coefficient of `eps^m` in a polynomial in the parameter `eps`.
pub fn series_coefficient(s: &SuperPoly, eps: &str, m: usize) -> SuperPoly {
    let sym = crate::superpoly::Symbol::new(eps);
    let mut out = SuperPoly::zero(s.dim());
    for (t, c) in s.terms() {
        let is_eps = |v: &crate::superpoly::Var| matches!(v, crate::superpoly::Var::Param(p) if *p == sym);
        if t.mono.degree_in(is_eps) == m {
            let (_, rest) = t.mono.split(is_eps);
            out.add_term(t.xi, rest, c.clone());
        }
    }
    out
}

/// Checks `dP/dε = Q(P)` modulo `ε^k` by substituting the truncated series.
pub fn verify_picard(flow: &Flow, coeffs: &[SuperPoly]) -> Result<bool> {
    let k = coeffs.len().saturating_sub(1);
    let eps = "eps";
    let p = series(coeffs, eps);
    let qp = match flow {
        Flow::Scaling => p,
        Flow::Graph(g) => orient_flow_truncated(
            g,
            &p,
            Some(Truncation {
                param: crate::superpoly::Symbol::new(eps),
                max_degree: k.saturating_sub(1),
            }),
        )?,
    };
    for m in 0..k {
        let lhs = coeffs[m + 1].scale(&q(m as i64 + 1));
        if !lhs.sub(&series_coefficient(&qp, eps, m)).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::factorial;

    #[test]
    fn scaling_flow_is_exponential() {
        let m = PoissonModel::builtin("so3").unwrap();
        let c = picard_integrate(&m, &Flow::Scaling, 5).unwrap();
        for (k, pk) in c.iter().enumerate() {
            assert_eq!(*pk, m.bivector.scale(&factorial(k as u32).recip()));
        }
        assert!(verify_picard(&Flow::Scaling, &c).unwrap());
    }

    #[test]
    fn guard() {
        let m = PoissonModel::builtin("so3").unwrap();
        assert!(matches!(picard_integrate(&m, &Flow::Scaling, 7), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(2, 3).len(), 6);
        assert_eq!(compositions(0, 4), vec![vec![0; 4]]);
    }
}
