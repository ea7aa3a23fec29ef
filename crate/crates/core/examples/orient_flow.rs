//! The tetrahedral flow `Or(γ3)(P)` on abstract and concrete bivectors.
//!
//! `cargo run --release --example orient_flow`

use std::time::Instant;

use graphflow::complex::CocycleRecord;
use graphflow::orient::{abstract_bivector, evaluate, orient_flow, OrGraph};
use graphflow::graph::UnorientedGraph;
use graphflow::superpoly::schouten;

fn main() -> graphflow::Result<()> {
    let g3 = CocycleRecord::gamma3();

    // In two dimensions P = p(x) ξ1ξ2 and the flow has four terms.
    let p2 = abstract_bivector(2);
    let q2 = orient_flow(&g3.sum, &p2)?;
    println!("r=2: Or(γ3)(P) = {q2}");
    println!("r=2: [[P, Q]] = {}", schouten(&p2, &q2)?);

    let t = Instant::now();
    let p3 = abstract_bivector(3);
    let q3 = orient_flow(&g3.sum, &p3)?;
    println!("r=3: {} terms in {:.2?}", q3.len(), t.elapsed());

    // The stick evaluates to the Schouten bracket, up to a fixed constant.
    let mut sum = evaluate(&UnorientedGraph::stick(), &[p3.clone(), p3.clone()])?;
    sum.add_assign(&schouten(&p3, &p3)?);
    println!("stick(P,P) + [[P,P]] = {sum}");

    // A single directed graph: one arrow from P into P.
    let arrow = OrGraph::new(2, &[(0, 1)])?;
    println!("arrow on r=2: {}", arrow.evaluate(&p2)?);
    Ok(())
}
