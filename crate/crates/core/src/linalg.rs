//! Exact sparse linear algebra over the rationals.
//!
//! Vectors are sparse maps from an ordered key type (graphs, polynomial terms)
//! to rationals. [`Echelon`] accepts columns one at a time and keeps a fully
//! reduced basis, so earlier columns are always preferred as pivots.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Q;

pub type SparseVec<K> = BTreeMap<K, Q>;

/// Column combination: column index → coefficient.
pub type Combination = BTreeMap<usize, Q>;

#[derive(Clone, Debug)]
struct Row<K> {
    vec: SparseVec<K>,
    combo: Combination,
}

/// Incrementally built reduced echelon basis of a set of columns.
#[derive(Clone, Debug)]
pub struct Echelon<K> {
    pivots: BTreeMap<K, usize>,
    rows: Vec<Row<K>>,
    columns: usize,
    relations: Vec<Combination>,
}

/// Outcome of expressing a target through the columns.
#[derive(Clone, Debug)]
pub struct LinearSolution<K> {
    /// `target − Σ coefficients[j]·column[j] = residual`.
    pub coefficients: Combination,
    /// Zero iff the system is consistent.
    pub residual: SparseVec<K>,
    /// Basis of column relations (the nullspace), one per dependent column.
    pub relations: Vec<Combination>,
}

impl<K> LinearSolution<K> {
    pub fn is_consistent(&self) -> bool {
        self.residual.is_empty()
    }
}

pub(crate) fn axpy<K: Ord + Clone>(dst: &mut SparseVec<K>, a: &Q, src: &SparseVec<K>) {
    if a.is_zero() {
        return;
    }
    for (k, v) in src {
        let add = a * v;
        match dst.get_mut(k) {
            Some(x) => {
                *x += add;
                if x.is_zero() {
                    dst.remove(k);
                }
            }
            None => {
                dst.insert(k.clone(), add);
            }
        }
    }
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon {
            pivots: BTreeMap::new(),
            rows: Vec::new(),
            columns: 0,
            relations: Vec::new(),
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn column_count(&self) -> usize {
        self.columns
    }

    pub fn relations(&self) -> &[Combination] {
        &self.relations
    }

    fn reduce_with_combo(&self, mut vec: SparseVec<K>, mut combo: Combination) -> (SparseVec<K>, Combination) {
        let hits: Vec<(K, usize)> = vec
            .keys()
            .filter_map(|k| self.pivots.get(k).map(|&r| (k.clone(), r)))
            .collect();
        for (k, r) in hits {
            let Some(c) = vec.get(&k).cloned() else { continue };
            let row = &self.rows[r];
            axpy(&mut vec, &-c.clone(), &row.vec);
            axpy(&mut combo, &-c, &row.combo);
        }
        (vec, combo)
    }

    /// Adds the next column. Returns the relation it closes, if dependent.
    pub fn push(&mut self, column: SparseVec<K>) -> Option<Combination> {
        let idx = self.columns;
        self.columns += 1;
        let mut combo = Combination::new();
        combo.insert(idx, Q::one());
        let (mut vec, mut combo) = self.reduce_with_combo(column, combo);
        let Some((key, lead)) = vec.iter().next().map(|(k, v)| (k.clone(), v.clone())) else {
            self.relations.push(combo.clone());
            return Some(combo);
        };
        if !lead.is_one() {
            let inv = lead.recip();
            for v in vec.values_mut() {
                *v *= &inv;
            }
            for v in combo.values_mut() {
                *v *= &inv;
            }
        }
        for row in &mut self.rows {
            if let Some(c) = row.vec.get(&key).cloned() {
                axpy(&mut row.vec, &-c.clone(), &vec);
                axpy(&mut row.combo, &-c, &combo);
            }
        }
        self.pivots.insert(key, self.rows.len());
        self.rows.push(Row { vec, combo });
        None
    }

    /// Expresses `target` through the columns pushed so far.
    pub fn solve(&self, target: &SparseVec<K>) -> LinearSolution<K> {
        let (residual, combo) = self.reduce_with_combo(target.clone(), Combination::new());
        // reduce_with_combo tracks −coefficients.
        let coefficients = combo.into_iter().map(|(j, c)| (j, -c)).collect();
        LinearSolution {
            coefficients,
            residual,
            relations: self.relations.clone(),
        }
    }
}

/// One-shot solve of `Σ x_j column_j = target`.
pub fn solve<K: Ord + Clone>(columns: &[SparseVec<K>], target: &SparseVec<K>) -> LinearSolution<K> {
    let mut e = Echelon::new();
    for c in columns {
        e.push(c.clone());
    }
    e.solve(target)
}

/// `Σ coeffs[j] · columns[j]`.
pub fn combine<K: Ord + Clone>(columns: &[SparseVec<K>], coeffs: &Combination) -> SparseVec<K> {
    let mut out = SparseVec::new();
    for (&j, c) in coeffs {
        axpy(&mut out, c, &columns[j]);
    }
    out
}
