//! Nambu and linear Poisson models, the tetrahedral flow on them, and
//! invariance conditions on a parametrized family.
//!
//! `cargo run --release --example nambu_models`

use graphflow::complex::CocycleRecord;
use graphflow::poissonlab::{
    apply_symmetry, invariance_conditions, linear_bracket, nambu_bivector, so3_constants, NambuDatum,
    PoissonModel, StructureConstants,
};
use graphflow::rational::q;

fn main() -> graphflow::Result<()> {
    let g3 = CocycleRecord::gamma3();

    let sphere = nambu_bivector("sphere", &NambuDatum::parse("(x1^2 + x2^2 + x3^2)/2", "1")?)?;
    print!("{}", sphere.to_toml());
    let so3 = linear_bracket("so3", 3, &so3_constants())?;
    println!("so3 == sphere: {}", so3.bivector == sphere.bivector);
    println!("Or(γ3)(so3) = {}", apply_symmetry(&so3, &g3)?);

    let mut broken = StructureConstants::new();
    broken.insert((0, 1, 0), q(1));
    broken.insert((1, 2, 1), q(1));
    broken.insert((0, 2, 2), q(1));
    let b = linear_bracket("broken", 3, &broken)?;
    println!("broken constants: poisson {}, residual {}", b.is_poisson()?, b.jacobi_residual()?);

    let abs = nambu_bivector("abstract", &NambuDatum::abstract_datum())?;
    println!("abstract a, rho: poisson {}", abs.is_poisson()?);

    let cubic = PoissonModel::builtin("nambu-cubic").unwrap();
    let q = apply_symmetry(&cubic, &g3)?;
    println!("Or(γ3)(nambu-cubic): {} terms", q.len());

    let family = nambu_bivector(
        "family",
        &NambuDatum::parse_with_params("x1^3 + x1*x2*x3", "1 + t*x3", &["t"])?,
    )?;
    for c in invariance_conditions(&family, &g3)? {
        println!("condition: {c} = 0");
    }
    Ok(())
}
