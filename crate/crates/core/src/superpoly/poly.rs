use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Var, MAX_DIM};
use super::symbol::Symbol;
use crate::error::{Error, Result};
use crate::rational::{format_short, q, Q};

/// Set of odd generators `ξ_i`, stored as a bitmask; the product is taken in
/// increasing index order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct XiSet(pub u16);

impl XiSet {
    pub fn empty() -> Self {
        XiSet(0)
    }

    pub fn single(i: usize) -> Self {
        XiSet(1 << i)
    }

    pub fn from_indices(idx: &[usize]) -> Option<Self> {
        let mut m = 0u16;
        for &i in idx {
            if m >> i & 1 == 1 {
                return None;
            }
            m |= 1 << i;
        }
        Some(XiSet(m))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn indices(self) -> Vec<usize> {
        (0..16).filter(|&i| self.contains(i)).collect()
    }

    /// Left derivative `∂/∂ξ_i`: the remaining set and the sign `(−1)^(position of i)`.
    pub fn remove(self, i: usize) -> Option<(XiSet, bool)> {
        if !self.contains(i) {
            return None;
        }
        let below = (self.0 & ((1u16 << i) - 1)).count_ones();
        Some((XiSet(self.0 & !(1 << i)), below % 2 == 1))
    }

    /// Product `ξ_A ξ_B` reordered ascending: the union and whether the sign flips.
    pub fn wedge(self, other: XiSet) -> Option<(XiSet, bool)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // count pairs (a in A, b in B) with a > b
        let mut swaps = 0u32;
        let mut b = other.0;
        while b != 0 {
            let j = b.trailing_zeros();
            swaps += (self.0 >> j).count_ones();
            b &= b - 1;
        }
        Some((XiSet(self.0 | other.0), swaps % 2 == 1))
    }
}

impl PartialOrd for XiSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for XiSet {
    /// By degree, then lexicographically by index list.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

/// One stored term: odd part and even monomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub xi: XiSet,
    pub mono: Monomial,
}

/// Graded differential polynomial in coordinates `x^1..x^r`, odd generators
/// `ξ_1..ξ_r`, jets of abstract functions, and constant parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperPoly {
    dim: usize,
    terms: BTreeMap<Term, Q>,
}

impl SuperPoly {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        SuperPoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Q) -> Self {
        Self::term(dim, XiSet::empty(), Monomial::one(), c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Q::one())
    }

    pub fn term(dim: usize, xi: XiSet, mono: Monomial, c: Q) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(xi, mono, c);
        p
    }

    /// Coordinate `x^(i+1)` (0-based `i`).
    pub fn coord(dim: usize, i: usize) -> Self {
        Self::term(dim, XiSet::empty(), Monomial::var(Var::Coord(i as u8)), Q::one())
    }

    /// Odd generator `ξ_(i+1)` (0-based `i`).
    pub fn xi(dim: usize, i: usize) -> Self {
        Self::term(dim, XiSet::single(i), Monomial::one(), Q::one())
    }

    /// Abstract function of all coordinates.
    pub fn function(dim: usize, name: &str) -> Self {
        Self::term(dim, XiSet::empty(), Monomial::var(Var::jet(Symbol::new(name), &[])), Q::one())
    }

    pub fn param(dim: usize, name: &str) -> Self {
        Self::term(dim, XiSet::empty(), Monomial::var(Var::Param(Symbol::new(name))), Q::one())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &Q)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Term, Q> {
        self.terms
    }

    pub fn from_terms(dim: usize, terms: BTreeMap<Term, Q>) -> Self {
        let mut p = Self::zero(dim);
        for (t, c) in terms {
            p.add_term(t.xi, t.mono, c);
        }
        p
    }

    pub fn coefficient(&self, xi: XiSet, mono: &Monomial) -> Q {
        self.terms
            .get(&Term { xi, mono: mono.clone() })
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, xi: XiSet, mono: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(Term { xi, mono }) {
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

    fn check_dim(&self, other: &SuperPoly) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &SuperPoly) -> Result<SuperPoly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    /// In-place `self += other`; dimensions must agree.
    pub fn add_assign(&mut self, other: &SuperPoly) {
        debug_assert_eq!(self.dim, other.dim);
        for (t, c) in &other.terms {
            self.add_term(t.xi, t.mono.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &SuperPoly, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (t, v) in &other.terms {
            self.add_term(t.xi, t.mono.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Q) -> SuperPoly {
        let mut out = SuperPoly::zero(self.dim);
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> SuperPoly {
        self.scale(&-Q::one())
    }

    pub fn sub(&self, other: &SuperPoly) -> SuperPoly {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    /// Supercommutative product.
    pub fn mul(&self, other: &SuperPoly) -> SuperPoly {
        let mut out = SuperPoly::zero(self.dim.max(other.dim));
        for (ta, ca) in &self.terms {
            for (tb, cb) in &other.terms {
                let Some((xi, flip)) = ta.xi.wedge(tb.xi) else { continue };
                let c = ca * cb;
                out.add_term(xi, ta.mono.mul(&tb.mono), if flip { -c } else { c });
            }
        }
        out
    }

    pub fn try_mul(&self, other: &SuperPoly) -> Result<SuperPoly> {
        self.check_dim(other)?;
        Ok(self.mul(other))
    }

    pub fn pow(&self, k: u32) -> SuperPoly {
        let mut out = SuperPoly::one(self.dim);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Total derivative `∂/∂x^i` (0-based).
    pub fn d_dx(&self, i: usize) -> SuperPoly {
        let mut out = SuperPoly::zero(self.dim);
        for (t, c) in &self.terms {
            for (mult, m) in t.mono.derivative(i) {
                out.add_term(t.xi, m, c * q(mult as i64));
            }
        }
        out
    }

    /// Left derivative `∂/∂ξ_i` (0-based).
    pub fn d_dxi(&self, i: usize) -> SuperPoly {
        let mut out = SuperPoly::zero(self.dim);
        for (t, c) in &self.terms {
            if let Some((xi, flip)) = t.xi.remove(i) {
                out.add_term(xi, t.mono.clone(), if flip { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    /// `Some(k)` when every term has ξ-degree `k` (zero counts as degree 0).
    pub fn xi_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(|t| t.xi.degree());
        let Some(first) = it.next() else { return Some(0) };
        it.all(|d| d == first).then_some(first)
    }

    /// Homogeneous component of ξ-degree `k`.
    pub fn component(&self, k: usize) -> SuperPoly {
        SuperPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(t, _)| t.xi.degree() == k)
                .map(|(t, c)| (t.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn xi_degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|t| t.xi.degree()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Coefficient of each ξ-monomial, as a ξ-free polynomial.
    pub fn by_xi(&self) -> BTreeMap<XiSet, SuperPoly> {
        let mut out: BTreeMap<XiSet, SuperPoly> = BTreeMap::new();
        for (t, c) in &self.terms {
            out.entry(t.xi)
                .or_insert_with(|| SuperPoly::zero(self.dim))
                .add_term(XiSet::empty(), t.mono.clone(), c.clone());
        }
        out
    }

    /// Applies `f` to every monomial, summing the results with coefficients.
    pub fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> SuperPoly) -> SuperPoly {
        let mut out = SuperPoly::zero(self.dim);
        for (t, c) in &self.terms {
            let image = f(&t.mono);
            let xi_part = SuperPoly::term(self.dim, t.xi, Monomial::one(), c.clone());
            // even image: order of factors is irrelevant to the sign
            out.add_assign(&image.mul(&xi_part));
        }
        out
    }

    /// Largest total derivative order on any jet.
    pub fn max_jet_order(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|t| t.mono.factors().iter())
            .filter_map(|(v, _)| match v {
                Var::Jet(_, d) => Some(d.order()),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    /// Function symbols and parameters occurring, sorted.
    pub fn symbols(&self) -> (Vec<Symbol>, Vec<Symbol>) {
        let mut funcs = Vec::new();
        let mut params = Vec::new();
        for t in self.terms.keys() {
            for (v, _) in t.mono.factors() {
                match v {
                    Var::Jet(s, _) => funcs.push(*s),
                    Var::Param(s) => params.push(*s),
                    Var::Coord(_) => {}
                }
            }
        }
        funcs.sort();
        funcs.dedup();
        params.sort();
        params.dedup();
        (funcs, params)
    }
}

impl fmt::Display for SuperPoly {
    /// Canonical text, parseable by the expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (t, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if !a.is_one() || (t.mono.is_one() && t.xi.degree() == 0) {
                parts.push(format_short(&a));
            }
            if !t.mono.is_one() {
                parts.push(t.mono.to_string());
            }
            for i in t.xi.indices() {
                parts.push(format!("xi{}", i + 1));
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}
