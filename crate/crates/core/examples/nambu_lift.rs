//! Lifting a flow on Nambu bivectors to an evolution of `(a, ρ)`.
//!
//! `cargo run --release --example nambu_lift [-- max_jet_order]`

use std::time::Instant;

use graphflow::complex::CocycleRecord;
use graphflow::poissonlab::{nambu_lift_conditions, Flow, LiftOptions};

fn main() -> graphflow::Result<()> {
    let k = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);

    println!("{}", nambu_lift_conditions(&Flow::Scaling, &LiftOptions::default())?);

    let flow = Flow::from_cocycle(&CocycleRecord::gamma3());
    let opts = LiftOptions {
        max_jet_order: k,
        ..Default::default()
    };
    let t = Instant::now();
    let report = nambu_lift_conditions(&flow, &opts)?;
    println!("γ3, jets of order <= {k} ({:.2?}):", t.elapsed());
    print!("{report}");
    Ok(())
}
