//! Kernel and image of `d` on enumerated bases, at small vertex counts.

use rayon::prelude::*;

use super::{differential, enumerate_graphs};
use crate::error::{Error, Result};
use crate::graph::{GraphSum, UnorientedGraph};
use crate::linalg::{Echelon, SparseVec};

pub const MAX_COHOMOLOGY_VERTICES: usize = 6;

fn guard(n: usize) -> Result<()> {
    if n > MAX_COHOMOLOGY_VERTICES {
        return Err(Error::resource(format!(
            "cohomology hooks are limited to {MAX_COHOMOLOGY_VERTICES} vertices, asked for {n}"
        )));
    }
    Ok(())
}

fn as_vector(s: &GraphSum) -> SparseVec<UnorientedGraph> {
    s.iter().map(|(g, c)| (g.clone(), c.clone())).collect()
}

/// Basis of `ker d` in bigrading `(n, e)`.
pub fn cocycle_space(n: usize, e: usize) -> Result<Vec<GraphSum>> {
    guard(n)?;
    let basis = enumerate_graphs(n, e)?;
    let images: Vec<GraphSum> = basis
        .par_iter()
        .map(|g| differential(&GraphSum::single(g)))
        .collect();
    let mut ech = Echelon::new();
    for img in &images {
        ech.push(as_vector(img));
    }
    Ok(ech
        .relations()
        .iter()
        .map(|rel| {
            let mut s = GraphSum::new();
            for (&j, c) in rel {
                s.add_canonical(basis[j].clone(), c.clone());
            }
            s
        })
        .collect())
}

/// Spanning set of `d(Gra(n-1, e-1))` inside bigrading `(n, e)`, reduced to a basis.
pub fn coboundary_space(n: usize, e: usize) -> Result<Vec<GraphSum>> {
    guard(n)?;
    if n < 2 || e < 1 {
        return Ok(Vec::new());
    }
    let sources = enumerate_graphs(n - 1, e - 1)?;
    let images: Vec<GraphSum> = sources
        .par_iter()
        .map(|g| differential(&GraphSum::single(g)))
        .collect();
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for img in images {
        if img.is_empty() {
            continue;
        }
        if ech.push(as_vector(&img)).is_none() {
            out.push(img);
        }
    }
    Ok(out)
}

/// Cocycles in `(n, e)` independent modulo coboundaries.
pub fn cohomology_representatives(n: usize, e: usize) -> Result<Vec<GraphSum>> {
    let exact = coboundary_space(n, e)?;
    let closed = cocycle_space(n, e)?;
    let mut ech: Echelon<UnorientedGraph> = Echelon::new();
    for b in &exact {
        ech.push(as_vector(b));
    }
    let mut reps = Vec::new();
    for z in closed {
        let v = as_vector(&z);
        if ech.solve(&v).is_consistent() {
            continue;
        }
        ech.push(v);
        reps.push(z);
    }
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tetrahedron_spans_its_cell() {
        let z = cocycle_space(4, 6).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!(z[0].graphs().next(), Some(&UnorientedGraph::tetrahedron()));
        assert_eq!(cohomology_representatives(4, 6).unwrap().len(), 1);
    }

    #[test]
    fn guard_applies() {
        assert!(cocycle_space(7, 12).is_err());
    }
}
