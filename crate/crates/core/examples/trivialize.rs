//! Searching `X` with `Q(P) = [[P, X]]` over polynomial vector fields.
//!
//! `cargo run --release --example trivialize`

use graphflow::complex::CocycleRecord;
use graphflow::poissonlab::{apply_symmetry, trivialize, Flow, PoissonModel};
use graphflow::superpoly::schouten;

fn main() -> graphflow::Result<()> {
    let so3 = PoissonModel::builtin("so3").unwrap();
    let q = Flow::Scaling.apply(&so3.bivector)?;
    let t = trivialize(&so3, &q, 1)?.expect("linear vector field exists");
    println!("so3, Q = P: X = {}", t.x);
    for g in &t.gauge {
        println!("  gauge {g}   [[P, G]] = {}", schouten(&so3.bivector, g)?);
    }

    let cubic = PoissonModel::builtin("nambu-cubic").unwrap();
    let q = apply_symmetry(&cubic, &CocycleRecord::gamma3())?;
    for d in 1..=4 {
        match trivialize(&cubic, &q, d)? {
            Some(t) => {
                println!("nambu-cubic, degree {d}: X = {}", t.x);
                println!("  gauge dimension {}", t.gauge.len());
            }
            None => println!("nambu-cubic, degree {d}: none"),
        }
    }
    Ok(())
}
