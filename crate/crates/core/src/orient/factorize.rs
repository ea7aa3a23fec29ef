use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{Echelon, SparseVec};
use crate::rational::Q;
use crate::superpoly::{SuperPoly, Term, Var};

use super::eval::require_bivector;
use super::leibniz::{enumerate_leibniz, Diamond};

#[derive(Clone, Debug)]
pub struct FactorizeOptions {
    pub max_rounds: usize,
    /// Number of bivector vertices in the ansatz graphs; inferred from the target when `None`.
    pub bivector_vertices: Option<usize>,
    /// Upper bound on the candidate pool.
    pub max_pool: usize,
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Default for FactorizeOptions {
    fn default() -> Self {
        FactorizeOptions {
            max_rounds: 8,
            bivector_vertices: None,
            max_pool: 50_000,
            cancel: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundLog {
    pub round: usize,
    /// Leibniz graphs added to the ansatz in this round.
    pub added: usize,
    pub ansatz_size: usize,
    pub rank: usize,
    pub residual_terms: usize,
}

impl fmt::Display for RoundLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "round {}: added {}, ansatz {}, rank {}, residual terms {}",
            self.round, self.added, self.ansatz_size, self.rank, self.residual_terms
        )
    }
}

#[derive(Clone, Debug)]
pub struct Factorization {
    pub diamond: Diamond,
    pub residual: SuperPoly,
    pub rounds: Vec<RoundLog>,
    /// Nonzero Leibniz graphs of the matching shape.
    pub pool_size: usize,
}

impl Factorization {
    pub fn is_solved(&self) -> bool {
        self.residual.is_zero()
    }
}

fn to_vec(p: &SuperPoly) -> SparseVec<Term> {
    p.terms().map(|(t, c)| (t.clone(), c.clone())).collect()
}

fn jet_degree(t: &Term) -> usize {
    t.mono
        .factors()
        .iter()
        .filter(|(v, _)| matches!(v, Var::Jet(..)))
        .map(|(_, e)| *e as usize)
        .sum()
}

fn check_cancel(opts: &FactorizeOptions) -> Result<()> {
    match &opts.cancel {
        Some(flag) if flag.load(Ordering::Relaxed) => Err(Error::Cancelled),
        _ => Ok(()),
    }
}

/// Searches for `◊` with `target = ◊(P, ⟦P,P⟧)` over Leibniz graphs whose values
/// share terms with the target, widening the ansatz round by round.
pub fn leibniz_ansatz_iterate(target: &SuperPoly, p: &SuperPoly, opts: &FactorizeOptions) -> Result<Factorization> {
    require_bivector(p)?;
    if target.is_zero() {
        return Ok(Factorization {
            diamond: Diamond::new(),
            residual: target.clone(),
            rounds: Vec::new(),
            pool_size: 0,
        });
    }
    let sinks = target
        .xi_degree()
        .ok_or_else(|| Error::structure("target is not homogeneous in ξ"))?;
    let m = match opts.bivector_vertices {
        Some(m) => m,
        None => {
            let degs: BTreeSet<usize> = target.terms().map(|(t, _)| jet_degree(t)).collect();
            match degs.iter().next() {
                Some(&d) if degs.len() == 1 && d >= 2 => d - 2,
                _ => return Err(Error::structure("cannot infer the number of bivector vertices from the target")),
            }
        }
    };
    let pool = enumerate_leibniz(m, sinks)?;
    if pool.len() > opts.max_pool {
        return Err(Error::resource(format!("pool of {} Leibniz graphs exceeds {}", pool.len(), opts.max_pool)));
    }
    check_cancel(opts)?;
    let values: Vec<SparseVec<Term>> = pool
        .par_iter()
        .map(|g| {
            check_cancel(opts)?;
            g.evaluate(p).map(|v| to_vec(&v))
        })
        .collect::<Result<_>>()?;
    let pool_size = values.iter().filter(|v| !v.is_empty()).count();

    let target_vec = to_vec(target);
    let mut support: BTreeSet<Term> = target_vec.keys().cloned().collect();
    let mut chosen: Vec<usize> = Vec::new();
    let mut taken = vec![false; pool.len()];
    let mut ech: Echelon<Term> = Echelon::new();
    let mut rounds = Vec::new();
    let mut coefficients: BTreeMap<usize, Q> = BTreeMap::new();
    let mut residual = target_vec.clone();
    for round in 1..=opts.max_rounds {
        check_cancel(opts)?;
        let fresh: Vec<usize> = (0..pool.len())
            .filter(|&k| !taken[k] && !values[k].is_empty() && values[k].keys().any(|t| support.contains(t)))
            .collect();
        for &k in &fresh {
            taken[k] = true;
            chosen.push(k);
            ech.push(values[k].clone());
            support.extend(values[k].keys().cloned());
        }
        let sol = ech.solve(&target_vec);
        coefficients = sol.coefficients;
        residual = sol.residual;
        rounds.push(RoundLog {
            round,
            added: fresh.len(),
            ansatz_size: chosen.len(),
            rank: ech.rank(),
            residual_terms: residual.len(),
        });
        if residual.is_empty() || fresh.is_empty() {
            break;
        }
    }
    let diamond: Diamond = coefficients
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(col, c)| (pool[chosen[col]].clone(), c))
        .collect();
    let mut res = SuperPoly::zero(target.dim());
    for (t, c) in residual {
        res.add_term(t.xi, t.mono, c);
    }
    Ok(Factorization {
        diamond,
        residual: res,
        rounds,
        pool_size,
    })
}
