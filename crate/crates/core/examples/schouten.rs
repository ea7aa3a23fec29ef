//! Super-polynomials, the Schouten bracket and the Poisson differential.
//!
//! `cargo run --example schouten`

use graphflow::cli::{parse_superpoly, Scope};
use graphflow::superpoly::{jacobiator, poisson_differential, schouten};

fn main() -> graphflow::Result<()> {
    let scope = Scope::open(3);
    let p = parse_superpoly("x3*xi1*xi2 + x1*xi2*xi3 + x2*xi3*xi1", &scope)?;
    let euler = parse_superpoly("x1*xi1 + x2*xi2 + x3*xi3", &scope)?;
    println!("P = {p}");
    println!("[[P,P]] = {}", jacobiator(&p)?);
    println!("[[P,E]] = {}", schouten(&p, &euler)?);

    let f = parse_superpoly("x1^2*x2", &scope)?;
    let dpf = poisson_differential(&p, &f)?;
    println!("d_P f = {dpf}");
    println!("d_P d_P f = {}", poisson_differential(&p, &dpf)?);

    // Abstract coefficients stay symbolic: p12, p13, p23 are functions of x.
    let q = parse_superpoly("p12*xi1*xi2 + p13*xi1*xi3 + p23*xi2*xi3", &scope)?;
    println!("[[Q,Q]] has {} terms", jacobiator(&q)?.len());
    Ok(())
}
