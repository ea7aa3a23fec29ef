use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::{solve, SparseVec};
use crate::rational::q;
use crate::superpoly::{Derivs, Monomial, SuperPoly, Symbol, Term, Var, XiSet};

use super::flow::Flow;
use super::nambu::{nambu_bivector, NambuDatum};

/// Hard cap on generated ansatz monomials before any reduction.
pub const MAX_ANSATZ: usize = 400_000;

#[derive(Clone, Debug)]
pub struct LiftOptions {
    /// Highest derivative order of a single jet in the ansatz.
    pub max_jet_order: usize,
    /// Cap on columns that actually enter the linear solve.
    pub max_columns: usize,
}

impl Default for LiftOptions {
    fn default() -> Self {
        LiftOptions {
            max_jet_order: 3,
            max_columns: 20_000,
        }
    }
}

/// Outcome of searching `(ȧ, ρ̇) = (A, R)` whose push-forward to bivectors is the flow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    pub solvable: bool,
    pub a_dot: SuperPoly,
    pub rho_dot: SuperPoly,
    pub a_columns: usize,
    pub rho_columns: usize,
    /// Columns connected to the target's support; only these enter the solve.
    pub connected_columns: usize,
    pub kernel_dim: usize,
    pub residual_terms: usize,
}

impl fmt::Display for LiftReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "solvable at this ansatz: {}", self.solvable)?;
        writeln!(f, "ansatz columns: A {}, R {}", self.a_columns, self.rho_columns)?;
        writeln!(f, "connected columns: {}", self.connected_columns)?;
        writeln!(f, "kernel dimension: {}", self.kernel_dim)?;
        writeln!(f, "residual terms: {}", self.residual_terms)?;
        if self.solvable {
            writeln!(f, "A = {}", self.a_dot)?;
            writeln!(f, "R = {}", self.rho_dot)?;
        }
        Ok(())
    }
}

/// Jets of `sym` with order at most `max`, ordered by `Derivs`.
fn jets(max: usize) -> Vec<Derivs> {
    let mut out = BTreeSet::new();
    out.insert(Derivs::none());
    let mut layer = vec![Derivs::none()];
    for _ in 0..max {
        let mut next = BTreeSet::new();
        for d in &layer {
            for i in 0..3 {
                next.insert(d.bump(i));
            }
        }
        out.extend(next.iter().copied());
        layer = next.into_iter().collect();
    }
    out.into_iter().collect()
}

/// Multisets of `count` jets of `sym` with total order `order`.
fn jet_products(sym: Symbol, count: usize, order: usize, max: usize) -> Vec<Monomial> {
    let js = jets(max);
    let mut out = Vec::new();
    fn rec(js: &[Derivs], from: usize, left: usize, order: usize, cur: &mut Vec<Derivs>, sym: Symbol, out: &mut Vec<Monomial>) {
        if left == 0 {
            if order == 0 {
                out.push(Monomial::from_factors(cur.iter().map(|&d| (Var::Jet(sym, d), 1)).collect()));
            }
            return;
        }
        for k in from..js.len() {
            let o = js[k].order();
            if o <= order {
                cur.push(js[k]);
                rec(js, k, left - 1, order - o, cur, sym, out);
                cur.pop();
            }
        }
    }
    rec(&js, 0, count, order, &mut Vec::new(), sym, &mut out);
    out
}

/// Monomials with `nr` jets of ρ and `na` jets of `a`, total derivative order `order`.
fn ansatz(nr: usize, na: usize, order: usize, max: usize) -> Vec<Monomial> {
    let (rho, a) = (Symbol::new("rho"), Symbol::new("a"));
    let mut out = Vec::new();
    for split in 0..=order {
        for mr in jet_products(rho, nr, split, max) {
            for ma in jet_products(a, na, order - split, max) {
                out.push(mr.mul(&ma));
            }
        }
    }
    out.sort();
    out
}

/// `(ρ-degree, a-degree, derivative order)` of a term, or an error for explicit coordinates.
fn grading(t: &Term) -> Result<(usize, usize, usize)> {
    let (rho, a) = (Symbol::new("rho"), Symbol::new("a"));
    let (mut nr, mut na, mut ord) = (0, 0, 0);
    for (v, e) in t.mono.factors() {
        let e = *e as usize;
        match v {
            Var::Jet(s, d) if *s == rho => {
                nr += e;
                ord += e * d.order();
            }
            Var::Jet(s, d) if *s == a => {
                na += e;
                ord += e * d.order();
            }
            _ => return Err(Error::structure(format!("flow term depends on `{v}`"))),
        }
    }
    Ok((nr, na, ord))
}

/// Sets up `τ'(A, R) = Q(P(a, ρ))` for `τ(a, ρ) = ρ ε ∂a` over a finite ansatz and solves it exactly.
pub fn nambu_lift_conditions(flow: &Flow, opts: &LiftOptions) -> Result<LiftReport> {
    let datum = NambuDatum::abstract_datum();
    let p = nambu_bivector("nambu-abstract", &datum)?.bivector;
    let target = flow.apply(&p)?;
    let zero = SuperPoly::zero(3);
    if target.is_zero() {
        return Ok(LiftReport {
            solvable: true,
            a_dot: zero.clone(),
            rho_dot: zero,
            a_columns: 0,
            rho_columns: 0,
            connected_columns: 0,
            kernel_dim: 0,
            residual_terms: 0,
        });
    }
    let grades: BTreeSet<(usize, usize, usize)> = target.terms().map(|(t, _)| grading(t)).collect::<Result<_>>()?;
    if grades.len() != 1 {
        return Err(Error::structure("flow is not homogeneous in (rho, a, derivatives)"));
    }
    let (nr, na, ord) = *grades.iter().next().unwrap();
    if ord == 0 {
        return Err(Error::structure("flow carries no derivatives"));
    }
    let r_ans = if na >= 1 { ansatz(nr, na - 1, ord - 1, opts.max_jet_order) } else { Vec::new() };
    let a_ans = if nr >= 1 { ansatz(nr - 1, na, ord - 1, opts.max_jet_order) } else { Vec::new() };
    if r_ans.len() + a_ans.len() > MAX_ANSATZ {
        return Err(Error::resource(format!(
            "lift ansatz has {} columns, limit {MAX_ANSATZ}",
            r_ans.len() + a_ans.len()
        )));
    }
    let to_vec = |p: &SuperPoly| -> SparseVec<Term> { p.terms().map(|(t, c)| (t.clone(), c.clone())).collect() };
    let scalar = |m: &Monomial| SuperPoly::term(3, XiSet::empty(), m.clone(), q(1));
    let mut columns = Vec::new();
    for m in &r_ans {
        let d = NambuDatum::new(datum.a.clone(), scalar(m))?;
        columns.push(to_vec(&nambu_bivector("", &d)?.bivector));
    }
    for m in &a_ans {
        let d = NambuDatum::new(scalar(m), datum.rho.clone())?;
        columns.push(to_vec(&nambu_bivector("", &d)?.bivector));
    }
    // Columns outside the connected component of the target's support (terms
    // linked through shared columns) cannot contribute, so drop them first.
    let target_vec = to_vec(&target);
    let mut by_term: HashMap<&Term, Vec<usize>> = HashMap::new();
    for (k, col) in columns.iter().enumerate() {
        for t in col.keys() {
            by_term.entry(t).or_default().push(k);
        }
    }
    let mut used = vec![false; columns.len()];
    let mut seen: HashSet<&Term> = target_vec.keys().collect();
    let mut frontier: Vec<&Term> = seen.iter().copied().collect();
    while let Some(t) = frontier.pop() {
        for &k in by_term.get(t).map(Vec::as_slice).unwrap_or(&[]) {
            if !used[k] {
                used[k] = true;
                for u in columns[k].keys() {
                    if seen.insert(u) {
                        frontier.push(u);
                    }
                }
            }
        }
    }
    let kept: Vec<usize> = (0..columns.len()).filter(|&k| used[k]).collect();
    if kept.len() > opts.max_columns {
        return Err(Error::resource(format!(
            "lift system has {} connected columns, limit {}",
            kept.len(),
            opts.max_columns
        )));
    }
    let reduced: Vec<SparseVec<Term>> = kept.iter().map(|&k| columns[k].clone()).collect();
    let mut sol = solve(&reduced, &target_vec);
    sol.coefficients = sol.coefficients.into_iter().map(|(k, c)| (kept[k], c)).collect();
    let mut a_dot = SuperPoly::zero(3);
    let mut rho_dot = SuperPoly::zero(3);
    for (&k, c) in &sol.coefficients {
        if c.is_zero() {
            continue;
        }
        if k < r_ans.len() {
            rho_dot.add_term(XiSet::empty(), r_ans[k].clone(), c.clone());
        } else {
            a_dot.add_term(XiSet::empty(), a_ans[k - r_ans.len()].clone(), c.clone());
        }
    }
    Ok(LiftReport {
        solvable: sol.residual.is_empty(),
        a_dot,
        rho_dot,
        a_columns: a_ans.len(),
        rho_columns: r_ans.len(),
        connected_columns: kept.len(),
        kernel_dim: sol.relations.len(),
        residual_terms: sol.residual.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphSum;

    #[test]
    fn scaling_lifts_to_rho() {
        let rep = nambu_lift_conditions(&Flow::Scaling, &LiftOptions::default()).unwrap();
        assert!(rep.solvable);
        assert!(rep.a_dot.is_zero());
        assert_eq!(rep.rho_dot, SuperPoly::function(3, "rho"));
    }

    #[test]
    fn empty_cocycle_lifts_trivially() {
        let rep = nambu_lift_conditions(&Flow::Graph(GraphSum::new()), &LiftOptions::default()).unwrap();
        assert!(rep.solvable && rep.a_dot.is_zero() && rep.rho_dot.is_zero());
    }

    #[test]
    fn ansatz_sizes() {
        // one first-order jet of a: three choices
        assert_eq!(ansatz(0, 1, 1, 3).len(), 3);
        assert_eq!(ansatz(1, 0, 0, 3).len(), 1);
    }
}
