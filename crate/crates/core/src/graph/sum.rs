use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::{canonical_form, UnorientedGraph};
use crate::rational::{format_short, sign_q, Q};

/// Finite rational combination of canonical graphs. Zero coefficients and
/// zero graphs are never stored, so equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphSum {
    terms: BTreeMap<UnorientedGraph, Q>,
}

impl GraphSum {
    pub fn new() -> Self {
        Self::default()
    }

    /// `c · g`, canonicalized.
    pub fn from_graph(g: &UnorientedGraph, c: Q) -> Self {
        let mut s = Self::new();
        s.add_graph(g, c);
        s
    }

    pub fn single(g: &UnorientedGraph) -> Self {
        Self::from_graph(g, Q::from_integer(1.into()))
    }

    /// Adds `c · g` after canonicalizing `g`.
    pub fn add_graph(&mut self, g: &UnorientedGraph, c: Q) {
        if c.is_zero() {
            return;
        }
        let canon = canonical_form(g);
        if canon.sign == 0 {
            return;
        }
        self.add_canonical(canon.graph, c * sign_q(canon.sign));
    }

    /// Adds a term whose graph is already canonical.
    pub(crate) fn add_canonical(&mut self, g: UnorientedGraph, c: Q) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(g) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&UnorientedGraph, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &UnorientedGraph) -> Q {
        let canon = canonical_form(g);
        if canon.sign == 0 {
            return Q::zero();
        }
        self.terms
            .get(&canon.graph)
            .map(|c| c * sign_q(canon.sign))
            .unwrap_or_else(Q::zero)
    }

    /// `(n, E)` when every term shares it; `None` for empty or mixed sums.
    pub fn bigrading(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(|g| g.bigrading());
        let first = it.next()?;
        it.all(|b| b == first).then_some(first)
    }

    pub fn add(&self, other: &GraphSum) -> GraphSum {
        let mut out = self.clone();
        out += other;
        out
    }

    pub fn scale(&self, c: &Q) -> GraphSum {
        if c.is_zero() {
            return GraphSum::new();
        }
        GraphSum {
            terms: self.terms.iter().map(|(g, v)| (g.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> GraphSum {
        self.scale(&Q::from_integer((-1).into()))
    }

    /// Homogeneous component of bigrading `(n, e)`.
    pub fn component(&self, n: usize, e: usize) -> GraphSum {
        GraphSum {
            terms: self
                .terms
                .iter()
                .filter(|(g, _)| g.bigrading() == (n, e))
                .map(|(g, c)| (g.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn graphs(&self) -> impl Iterator<Item = &UnorientedGraph> {
        self.terms.keys()
    }
}

impl std::ops::AddAssign<&GraphSum> for GraphSum {
    fn add_assign(&mut self, other: &GraphSum) {
        for (g, c) in &other.terms {
            self.add_canonical(g.clone(), c.clone());
        }
    }
}

impl FromIterator<(UnorientedGraph, Q)> for GraphSum {
    fn from_iter<I: IntoIterator<Item = (UnorientedGraph, Q)>>(iter: I) -> Self {
        let mut s = GraphSum::new();
        for (g, c) in iter {
            s.add_graph(&g, c);
        }
        s
    }
}

impl fmt::Display for GraphSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{} * [{}]", format_short(c), g)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, ratio};

    #[test]
    fn cancellation_and_scaling() {
        let k4 = UnorientedGraph::tetrahedron();
        let s = GraphSum::from_graph(&k4, q(1));
        assert!(s.add(&s.neg()).is_empty());
        let t = s.add(&GraphSum::from_graph(&k4, ratio(1, 2)));
        assert_eq!(t.coefficient(&k4), ratio(3, 2));
        assert_eq!(t.bigrading(), Some((4, 6)));
        assert!(GraphSum::from_graph(&UnorientedGraph::cycle(3).unwrap(), q(5)).is_empty());
    }

    #[test]
    fn sign_absorbed_into_coefficient() {
        // Swapping two edges of the stick-free path-like graph flips the sign.
        let g = UnorientedGraph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 2)]).unwrap();
        let h = g.reorder_edges(&[1, 0, 2, 3]).unwrap();
        let s = GraphSum::single(&g).add(&GraphSum::single(&h));
        assert!(s.is_empty() || g.is_zero());
    }
}
