//! The orientation morphism `Or` and the Leibniz-graph factorization machinery.

mod digraph;
mod eval;
mod factorize;
mod leibniz;
mod metagraph;

pub use digraph::OrGraph;
pub use eval::{
    evaluate, evaluate_ops, evaluate_ops_truncated, jacobiator_insertion, jacobiator_insertion_sum, orient_flow,
    orient_flow_truncated, EdgeOp, Truncation,
};
pub use factorize::{leibniz_ansatz_iterate, Factorization, FactorizeOptions, RoundLog};
pub use leibniz::{enumerate_leibniz, parse_leibniz, tautological_diamond, Diamond, LeibnizGraph};
pub use metagraph::{leibniz_metagraph, ComponentReport, Metagraph, MetagraphReport};

use crate::superpoly::SuperPoly;

/// Bivector with one abstract coefficient function per pair `i < j`:
/// `p` in dimension 2, `p12, p13, …` otherwise.
pub fn abstract_bivector(r: usize) -> SuperPoly {
    let mut out = SuperPoly::zero(r);
    for i in 0..r {
        for j in i + 1..r {
            let name = if r == 2 { "p".to_string() } else { format!("p{}{}", i + 1, j + 1) };
            out.add_assign(&SuperPoly::function(r, &name).mul(&SuperPoly::xi(r, i)).mul(&SuperPoly::xi(r, j)));
        }
    }
    out
}
