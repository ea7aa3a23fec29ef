//! The differential, cocycles γ3 and γ5, brackets and unions.
//!
//! `cargo run --example graph_complex`

use graphflow::complex::{
    cocycle_space, coboundary_space, differential, disjoint_union, is_cocycle, lie_bracket, CocycleLibrary,
};
use graphflow::graph::{graph_stats, GraphSum, UnorientedGraph};
use graphflow::rational::q;

fn main() -> graphflow::Result<()> {
    let lib = CocycleLibrary::from_env()?;
    for rec in lib.records() {
        println!("{} {:?} cocycle: {}", rec.name, rec.bigrading, is_cocycle(&rec.sum));
        for s in graph_stats(&rec.sum) {
            println!("  {s}");
        }
    }

    let stick = GraphSum::single(&UnorientedGraph::stick());
    println!("d(stick) terms: {}", differential(&stick).len());
    let g = GraphSum::single(&UnorientedGraph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])?);
    let dg = differential(&g);
    println!("d(K4 minus an edge) = {} term(s), d(d(·)) = {} term(s)", dg.len(), differential(&dg).len());

    let g3 = &lib.get("gamma3").expect("builtin").sum;
    let u = disjoint_union(g3, g3);
    println!("γ3⊔γ3: {} term(s), cocycle: {}", u.len(), is_cocycle(&u));
    println!("[γ3, γ3] terms: {}", lie_bracket(g3, g3).len());

    // Direct linear algebra at (6,10) recovers γ5 up to scale.
    let ker = cocycle_space(6, 10)?;
    let im = coboundary_space(6, 10)?;
    println!("(6,10): dim ker d = {}, dim im d = {}", ker.len(), im.len());
    if let Some(g5) = lib.get("gamma5") {
        let w = g5.sum.graphs().next().unwrap().clone();
        let scaled = ker[0].scale(&(q(1) / ker[0].coefficient(&w)));
        println!("matches library γ5: {}", scaled == g5.sum);
    }
    Ok(())
}
