use std::cmp::Ordering;
use std::fmt;

use super::symbol::Symbol;

/// Largest supported number of coordinates.
pub const MAX_DIM: usize = 8;

/// Multi-index of partial derivatives: how often each coordinate is hit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Derivs {
    order: u8,
    counts: [u8; MAX_DIM],
}

impl Derivs {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn from_indices(idx: &[usize]) -> Self {
        let mut d = Self::none();
        for &i in idx {
            d = d.bump(i);
        }
        d
    }

    pub fn bump(mut self, i: usize) -> Self {
        self.counts[i] += 1;
        self.order += 1;
        self
    }

    pub fn order(&self) -> usize {
        self.order as usize
    }

    pub fn count(&self, i: usize) -> usize {
        self.counts[i] as usize
    }

    /// Coordinate indices with repetition, ascending.
    pub fn indices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.order as usize);
        for (i, &c) in self.counts.iter().enumerate() {
            for _ in 0..c {
                out.push(i);
            }
        }
        out
    }
}

impl PartialOrd for Derivs {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Derivs {
    /// Lower order first; within an order, `∂/∂x1` before `∂/∂x2`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| other.counts.cmp(&self.counts))
    }
}

impl fmt::Debug for Derivs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.indices())
    }
}

/// Commuting (even) variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Coordinate `x^(i+1)`.
    Coord(u8),
    /// Constant parameter; annihilated by every `∂/∂x`.
    Param(Symbol),
    /// Partial derivative of an abstract function of all coordinates.
    Jet(Symbol, Derivs),
}

impl Var {
    pub fn jet(symbol: Symbol, derivs: &[usize]) -> Var {
        Var::Jet(symbol, Derivs::from_indices(derivs))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Coord(i) => write!(f, "x{}", i + 1),
            Var::Param(s) => write!(f, "{s}"),
            Var::Jet(s, d) if d.order() == 0 => write!(f, "{s}"),
            Var::Jet(s, d) => {
                write!(f, "d[{s}]/")?;
                for i in d.indices() {
                    write!(f, "dx{}", i + 1)?;
                }
                Ok(())
            }
        }
    }
}

/// Product of even variables with positive exponents, sorted by variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(Var, u16)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_factors(mut f: Vec<(Var, u16)>) -> Self {
        f.retain(|&(_, p)| p > 0);
        f.sort_by_key(|a| a.0);
        let mut out: Vec<(Var, u16)> = Vec::with_capacity(f.len());
        for (v, p) in f {
            match out.last_mut() {
                Some((w, q)) if *w == v => *q += p,
                _ => out.push((v, p)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, u16)] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&(_, p)| p as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if self.0.is_empty() {
            return other.clone();
        }
        if other.0.is_empty() {
            return self.clone();
        }
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `∂/∂x^i` by the Leibniz rule: `(multiplicity, monomial)` pairs.
    /// Abstract functions depend on every coordinate.
    pub fn derivative(&self, i: usize) -> Vec<(u32, Monomial)> {
        let mut out = Vec::new();
        for (k, &(v, p)) in self.0.iter().enumerate() {
            let replacement = match v {
                Var::Coord(c) if c as usize == i => None,
                Var::Coord(_) | Var::Param(_) => continue,
                Var::Jet(s, d) => Some(Var::Jet(s, d.bump(i))),
            };
            let mut f = self.0.clone();
            if p == 1 {
                f.remove(k);
            } else {
                f[k].1 -= 1;
            }
            let m = match replacement {
                None => Monomial(f),
                Some(w) => Monomial(f).mul(&Monomial::var(w)),
            };
            out.push((p as u32, m));
        }
        out
    }

    /// Power of variables accepted by `pred`.
    pub fn degree_in(&self, pred: impl Fn(&Var) -> bool) -> usize {
        self.0.iter().filter(|(v, _)| pred(v)).map(|&(_, p)| p as usize).sum()
    }

    /// Splits into (factors accepted by `pred`, the rest).
    pub fn split(&self, pred: impl Fn(&Var) -> bool) -> (Monomial, Monomial) {
        let (a, b): (Vec<_>, Vec<_>) = self.0.iter().partition(|(v, _)| pred(v));
        (Monomial(a), Monomial(b))
    }

    pub fn max_coord(&self) -> Option<usize> {
        self.0
            .iter()
            .filter_map(|(v, _)| match v {
                Var::Coord(c) => Some(*c as usize),
                Var::Jet(_, d) => d.indices().last().copied(),
                Var::Param(_) => None,
            })
            .max()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (v, p)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *p == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{p}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leibniz_on_coordinates_and_jets() {
        let p = Symbol::new("p");
        // x1^2 * p
        let m = Monomial::from_factors(vec![(Var::Coord(0), 2), (Var::jet(p, &[]), 1)]);
        let d = m.derivative(0);
        assert_eq!(d.len(), 2);
        assert_eq!(d[0], (2, Monomial::from_factors(vec![(Var::Coord(0), 1), (Var::jet(p, &[]), 1)])));
        assert_eq!(d[1], (1, Monomial::from_factors(vec![(Var::Coord(0), 2), (Var::jet(p, &[0]), 1)])));
        assert!(Monomial::var(Var::Param(Symbol::new("t"))).derivative(0).is_empty());
    }

    #[test]
    fn derivative_notation() {
        let v = Var::jet(Symbol::new("f"), &[1, 0, 1]);
        assert_eq!(v.to_string(), "d[f]/dx1dx2dx2");
    }

    #[test]
    fn derivs_order() {
        assert!(Derivs::from_indices(&[0]) < Derivs::from_indices(&[1]));
        assert!(Derivs::from_indices(&[2]) < Derivs::from_indices(&[0, 0]));
    }
}
