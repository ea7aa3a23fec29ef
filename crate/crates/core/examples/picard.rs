//! Formal integration `P(ε) = Σ ε^m P_m` of `dP/dε = Q(P)`.
//!
//! `cargo run --release --example picard`

use graphflow::complex::CocycleRecord;
use graphflow::poissonlab::{picard_integrate, series, verify_picard, Flow, PoissonModel};
use graphflow::superpoly::jacobiator;

fn main() -> graphflow::Result<()> {
    let so3 = PoissonModel::builtin("so3").unwrap();
    let coeffs = picard_integrate(&so3, &Flow::Scaling, 5)?;
    for (m, c) in coeffs.iter().enumerate() {
        println!("scaling P{m} = {c}");
    }

    let g3 = Flow::from_cocycle(&CocycleRecord::gamma3());
    let abs = PoissonModel::builtin("abstract2").unwrap();
    let coeffs = picard_integrate(&abs, &g3, 2)?;
    let sizes: Vec<usize> = coeffs.iter().map(|c| c.len()).collect();
    println!("γ3 on abstract r=2: coefficient sizes {sizes:?}");
    println!("dP/dε = Q(P) mod ε^2: {}", verify_picard(&g3, &coeffs)?);
    // Every bivector in two dimensions is Poisson, so this is a sanity check only.
    println!("jacobiator(P(ε)) = {}", jacobiator(&series(&coeffs, "eps"))?);
    Ok(())
}
