use crate::cli::expr::{parse_expression, Scope};
use crate::error::{Error, Result};
use crate::superpoly::SuperPoly;

use super::model::PoissonModel;

/// Data `(a, ρ)` of the Nambu bracket `{f,g} = ρ·det D(a,f,g)/D(x1,x2,x3)` in dimension 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NambuDatum {
    pub a: SuperPoly,
    pub rho: SuperPoly,
}

impl NambuDatum {
    pub fn new(a: SuperPoly, rho: SuperPoly) -> Result<Self> {
        for s in [&a, &rho] {
            if s.dim() != 3 {
                return Err(Error::Dimension { expected: 3, found: s.dim() });
            }
            if s.xi_degree() != Some(0) {
                return Err(Error::structure("Nambu data must be scalar"));
            }
        }
        Ok(NambuDatum { a, rho })
    }

    /// Expressions in `x1, x2, x3`; other names become abstract functions.
    pub fn parse(a: &str, rho: &str) -> Result<Self> {
        Self::parse_with_params(a, rho, &[])
    }

    /// As [`NambuDatum::parse`], with the listed names read as constant parameters.
    pub fn parse_with_params(a: &str, rho: &str, params: &[&str]) -> Result<Self> {
        let scope = Scope::with_params(3, params);
        Self::new(parse_expression(a)?.to_superpoly(&scope)?, parse_expression(rho)?.to_superpoly(&scope)?)
    }

    /// Abstract `a` and `rho`.
    pub fn abstract_datum() -> Self {
        NambuDatum {
            a: SuperPoly::function(3, "a"),
            rho: SuperPoly::function(3, "rho"),
        }
    }
}

/// `P^{ij} = ρ ε^{ijk} ∂_k a`.
pub fn nambu_bivector(name: &str, d: &NambuDatum) -> Result<PoissonModel> {
    let r = 3;
    let xi = |i| SuperPoly::xi(r, i);
    let da = |k| d.a.d_dx(k);
    let mut p = da(2).mul(&xi(0)).mul(&xi(1));
    p.add_assign(&da(0).mul(&xi(1)).mul(&xi(2)));
    p.add_assign(&da(1).mul(&xi(2)).mul(&xi(0)));
    let mut params: Vec<String> = [&d.a, &d.rho]
        .iter()
        .flat_map(|s| s.symbols().1)
        .map(|s| s.name().to_string())
        .collect();
    params.sort();
    params.dedup();
    let params: Vec<&str> = params.iter().map(String::as_str).collect();
    PoissonModel::new(name, d.rho.mul(&p), &params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_gives_so3() {
        let d = NambuDatum::parse("(x1^2 + x2^2 + x3^2)/2", "1").unwrap();
        let m = nambu_bivector("s", &d).unwrap();
        assert_eq!(m.entry(0, 1), SuperPoly::coord(3, 2));
        assert_eq!(m.entry(1, 2), SuperPoly::coord(3, 0));
        assert_eq!(m.entry(2, 0), SuperPoly::coord(3, 1));
    }

    #[test]
    fn constant_a_gives_zero() {
        let d = NambuDatum::parse("7", "x1").unwrap();
        assert!(nambu_bivector("c", &d).unwrap().bivector.is_zero());
    }

    #[test]
    fn bracket_is_the_jacobian_determinant() {
        // {x1, x2} = ρ det D(a, x1, x2)/D(x) = ρ ∂a/∂x3
        let d = NambuDatum::parse("x1^2*x3 + x2^3", "1 + x1").unwrap();
        let m = nambu_bivector("n", &d).unwrap();
        let rho_da3 = d.rho.mul(&d.a.d_dx(2));
        assert_eq!(m.entry(0, 1), rho_da3);
    }
}
