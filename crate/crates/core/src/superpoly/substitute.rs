use std::collections::BTreeMap;

use super::monomial::{Monomial, Var};
use super::poly::{SuperPoly, XiSet};
use super::symbol::Symbol;
use crate::error::{Error, Result};

/// Replaces bound function symbols (with all their derivatives) and parameters
/// by ξ-free expressions. Unbound symbols are kept.
pub fn substitute(a: &SuperPoly, bindings: &BTreeMap<Symbol, SuperPoly>) -> Result<SuperPoly> {
    for (s, v) in bindings {
        if v.xi_degree() != Some(0) {
            return Err(Error::structure(format!("binding for `{s}` must be ξ-free")));
        }
        if v.dim() != a.dim() {
            return Err(Error::Dimension {
                expected: a.dim(),
                found: v.dim(),
            });
        }
    }
    let mut jets: BTreeMap<Var, SuperPoly> = BTreeMap::new();
    let mut image = |v: &Var| -> Option<SuperPoly> {
        match v {
            Var::Coord(_) => None,
            Var::Param(s) => bindings.get(s).cloned(),
            Var::Jet(s, d) => {
                let base = bindings.get(s)?;
                if let Some(done) = jets.get(v) {
                    return Some(done.clone());
                }
                let mut out = base.clone();
                for i in d.indices() {
                    out = out.d_dx(i);
                }
                jets.insert(*v, out.clone());
                Some(out)
            }
        }
    };
    Ok(a.map_monomials(|m| {
        let mut out = SuperPoly::one(a.dim());
        let mut rest = Vec::new();
        for (v, e) in m.factors() {
            match image(v) {
                Some(img) => out = out.mul(&img.pow(*e as u32)),
                None => rest.push((*v, *e)),
            }
        }
        out.mul(&SuperPoly::term(a.dim(), XiSet::empty(), Monomial::from_factors(rest), crate::rational::q(1)))
    }))
}

/// As `substitute`, but every function symbol in `a` must be bound.
pub fn substitute_strict(a: &SuperPoly, bindings: &BTreeMap<Symbol, SuperPoly>) -> Result<SuperPoly> {
    let (funcs, _) = a.symbols();
    if let Some(s) = funcs.iter().find(|s| !bindings.contains_key(s)) {
        return Err(Error::UnboundSymbol(s.name().to_string()));
    }
    substitute(a, bindings)
}
