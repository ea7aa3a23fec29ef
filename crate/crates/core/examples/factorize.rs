//! Leibniz-graph factorization of `[[P, Or(γ3)(P)]]` through the Jacobiator.
//!
//! `cargo run --release --example factorize [-- out.diamond]`

use std::time::Instant;

use graphflow::complex::CocycleRecord;
use graphflow::orient::{
    abstract_bivector, jacobiator_insertion_sum, leibniz_ansatz_iterate, leibniz_metagraph, orient_flow,
    tautological_diamond, FactorizeOptions,
};
use graphflow::rational::ratio;
use graphflow::superpoly::{jacobiator, schouten};

fn main() -> graphflow::Result<()> {
    let g3 = CocycleRecord::gamma3();

    // r=2: every trivector vanishes, so both sides are zero.
    let p2 = abstract_bivector(2);
    println!("r=2: jacobiator = {}", jacobiator(&p2)?);
    println!("r=2: [[P, Q]] = {}", schouten(&p2, &orient_flow(&g3.sum, &p2)?)?);

    let p = abstract_bivector(3);
    let t = Instant::now();
    let q = orient_flow(&g3.sum, &p)?;
    let target = schouten(&p, &q)?;
    println!("r=3: [[P, Q]] has {} terms ({:.2?})", target.len(), t.elapsed());

    // The tautological solution rebuilt from γ3's own edges.
    let taut = tautological_diamond(&g3.sum)?;
    let mut lhs = taut.evaluate(&p)?;
    lhs.add_scaled(&jacobiator_insertion_sum(&g3.sum, &p)?, &ratio(-1, 1));
    println!("tautological: {} Leibniz graphs, minus insertion sum = {lhs}", taut.len());
    let mut res = taut.evaluate(&p)?;
    res.add_scaled(&target, &ratio(-2, 1));
    println!("tautological - 2 [[P, Q]] = {res}");

    // Independent search over the Leibniz-graph ansatz.
    let t = Instant::now();
    let f = leibniz_ansatz_iterate(&target, &p, &FactorizeOptions::default())?;
    for r in &f.rounds {
        println!("{r}");
    }
    println!("solved: {} with {} graphs ({:.2?})", f.is_solved(), f.diamond.len(), t.elapsed());
    print!("{}", f.diamond.to_text());

    let report = leibniz_metagraph(&[f.diamond.clone(), taut]).report();
    print!("{report}");

    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, f.diamond.to_text())?;
        println!("wrote {path}");
    }
    Ok(())
}
