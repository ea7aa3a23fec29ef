use std::collections::{BTreeMap, BTreeSet};

use crate::complex::CocycleRecord;
use crate::error::Result;
use crate::superpoly::{Monomial, SuperPoly, Symbol, Var, XiSet};

use super::flow::apply_symmetry;
use super::model::PoissonModel;

/// Polynomial conditions on the model parameters under which `Or(γ)(P) = 0`.
/// One condition per `(ξ-monomial, parameter-free monomial)` coefficient,
/// normalized to leading coefficient 1, deduplicated and sorted. Monomial
/// conditions are replaced by their squarefree part, and conditions lying in
/// the ideal those monomials generate are dropped.
pub fn invariance_conditions(family: &PoissonModel, gamma: &CocycleRecord) -> Result<Vec<SuperPoly>> {
    let q = apply_symmetry(family, gamma)?;
    Ok(coefficient_conditions(&q, &family.params))
}

pub(crate) fn coefficient_conditions(q: &SuperPoly, params: &[String]) -> Vec<SuperPoly> {
    let syms: BTreeSet<Symbol> = params.iter().map(|p| Symbol::new(p)).collect();
    let is_param = |v: &Var| matches!(v, Var::Param(s) if syms.contains(s));
    let mut groups: BTreeMap<(XiSet, Monomial), SuperPoly> = BTreeMap::new();
    for (t, c) in q.terms() {
        let (par, rest) = t.mono.split(is_param);
        groups
            .entry((t.xi, rest))
            .or_insert_with(|| SuperPoly::zero(q.dim()))
            .add_term(XiSet::empty(), par, c.clone());
    }
    let mut out: BTreeSet<Vec<(Monomial, num_rational::BigRational)>> = BTreeSet::new();
    for poly in groups.into_values() {
        if poly.is_zero() {
            continue;
        }
        let lead = poly.terms().last().map(|(_, c)| c.clone()).expect("nonzero");
        let monic = poly.scale(&lead.recip());
        out.insert(monic.terms().map(|(t, c)| (t.mono.clone(), c.clone())).collect());
    }
    let radical = |m: &Monomial| Monomial::from_factors(m.factors().iter().map(|(v, _)| (*v, 1)).collect());
    let mut gens: BTreeSet<Monomial> = out
        .iter()
        .filter(|t| t.len() == 1)
        .map(|t| radical(&t[0].0))
        .collect();
    let snapshot: Vec<Monomial> = gens.iter().cloned().collect();
    gens.retain(|m| !snapshot.iter().any(|g| g != m && divides(g, m)));
    let mut kept: BTreeSet<Vec<(Monomial, num_rational::BigRational)>> = gens
        .iter()
        .map(|m| vec![(m.clone(), num_rational::BigRational::from_integer(1.into()))])
        .collect();
    for terms in out {
        if !terms.iter().all(|(m, _)| gens.iter().any(|g| divides(g, m))) {
            kept.insert(terms);
        }
    }
    kept.into_iter()
        .map(|terms| {
            let mut p = SuperPoly::zero(q.dim());
            for (m, c) in terms {
                p.add_term(XiSet::empty(), m, c);
            }
            p
        })
        .filter(|p| !p.is_zero())
        .collect()
}

fn divides(a: &Monomial, b: &Monomial) -> bool {
    a.factors()
        .iter()
        .all(|(v, e)| b.factors().iter().any(|(w, f)| w == v && f >= e))
}

/// Substitutes rational values for parameters.
pub fn bind_params(p: &SuperPoly, values: &BTreeMap<String, num_rational::BigRational>) -> Result<SuperPoly> {
    let bindings = values
        .iter()
        .map(|(k, v)| (Symbol::new(k), SuperPoly::constant(p.dim(), v.clone())))
        .collect();
    crate::superpoly::substitute(p, &bindings)
}

