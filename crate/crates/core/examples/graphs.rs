//! Canonical forms, zero graphs and enumeration of nonzero graphs.
//!
//! `cargo run --example graphs`

use graphflow::complex::{enumerate_graphs, enumerate_graphs_with, EnumerationStrategy};
use graphflow::graph::{canonical_form, UnorientedGraph};

fn main() -> graphflow::Result<()> {
    let k4 = UnorientedGraph::tetrahedron();
    let swapped = k4.reorder_edges(&[1, 0, 2, 3, 4, 5])?;
    for g in [&k4, &swapped] {
        let c = canonical_form(g);
        println!("{g}  ->  sign {:+} canonical {}", c.sign, c.graph);
    }

    // An odd automorphism makes a graph equal to minus itself.
    for (name, g) in [
        ("triangle", UnorientedGraph::cycle(3)?),
        ("3-path", UnorientedGraph::path(3)?),
        ("square", UnorientedGraph::cycle(4)?),
        ("pentagon", UnorientedGraph::cycle(5)?),
    ] {
        println!("{name:<9} zero: {}", g.is_zero());
    }

    for (n, e) in [(4, 6), (5, 8), (6, 10)] {
        let fast = enumerate_graphs(n, e)?;
        let slow = enumerate_graphs_with(n, e, EnumerationStrategy::Bitmask)?;
        assert_eq!(fast, slow);
        println!("({n},{e}): {} nonzero graph(s)", fast.len());
    }
    Ok(())
}
