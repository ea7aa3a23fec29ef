use std::collections::BTreeMap;


use crate::error::{Error, Result};
use crate::linalg::{solve, SparseVec};
use crate::rational::q as rq;
use crate::superpoly::{schouten, Monomial, SuperPoly, Term, Var, XiSet};

use super::model::PoissonModel;

pub const MAX_TRIVIALIZE_DEGREE: usize = 6;

/// `Q = ⟦P, X⟧` with polynomial `X`, plus a basis of `{G : ⟦P,G⟧ = 0}` at the same degree bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trivialization {
    pub x: SuperPoly,
    pub gauge: Vec<SuperPoly>,
}

/// Coordinate monomials of total degree `<= d`, ascending by degree.
pub(crate) fn coordinate_monomials(r: usize, d: usize) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    let mut layer = vec![Monomial::one()];
    for _ in 0..d {
        let mut next = std::collections::BTreeSet::new();
        for m in &layer {
            for i in 0..r {
                next.insert(m.mul(&Monomial::var(Var::Coord(i as u8))));
            }
        }
        layer = next.into_iter().collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn require_polynomial(p: &SuperPoly, what: &str) -> Result<()> {
    let (funcs, params) = p.symbols();
    if let Some(s) = funcs.first().or(params.first()) {
        return Err(Error::NonPolynomial(format!("{what} depends on `{s}`")));
    }
    Ok(())
}

/// Searches `X = Σ X^i(x) ξ_i` with `deg X^i <= degree` such that `Q − ⟦P,X⟧ = 0`.
/// `None` means no solution at this degree, which says nothing about larger ones.
pub fn trivialize(model: &PoissonModel, q: &SuperPoly, degree: usize) -> Result<Option<Trivialization>> {
    if degree > MAX_TRIVIALIZE_DEGREE {
        return Err(Error::resource(format!("ansatz degree {degree} exceeds {MAX_TRIVIALIZE_DEGREE}")));
    }
    require_polynomial(&model.bivector, "the bivector")?;
    require_polynomial(q, "the flow")?;
    let r = model.dim;
    let mut unknowns = Vec::new();
    for m in coordinate_monomials(r, degree) {
        for i in 0..r {
            unknowns.push(SuperPoly::term(r, XiSet::single(i), m.clone(), rq(1)));
        }
    }
    let to_vec = |p: &SuperPoly| -> SparseVec<Term> { p.terms().map(|(t, c)| (t.clone(), c.clone())).collect() };
    let columns: Vec<SparseVec<Term>> = unknowns
        .iter()
        .map(|u| schouten(&model.bivector, u).map(|v| to_vec(&v)))
        .collect::<Result<_>>()?;
    let sol = solve(&columns, &to_vec(q));
    if !sol.residual.is_empty() {
        return Ok(None);
    }
    let assemble = |coeffs: &BTreeMap<usize, num_rational::BigRational>| {
        let mut x = SuperPoly::zero(r);
        for (&k, c) in coeffs {
            x.add_scaled(&unknowns[k], c);
        }
        x
    };
    let gauge = sol
        .relations
        .iter()
        .map(assemble)
        .filter(|g| !g.is_zero())
        .collect();
    Ok(Some(Trivialization {
        x: assemble(&sol.coefficients),
        gauge,
    }))
}

/// Euler field `Σ x^i ξ_i`.
pub fn euler_field(r: usize) -> SuperPoly {
    let mut e = SuperPoly::zero(r);
    for i in 0..r {
        e.add_assign(&SuperPoly::coord(r, i).mul(&SuperPoly::xi(r, i)));
    }
    e
}
