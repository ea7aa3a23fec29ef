use num_traits::One;

use super::poly::SuperPoly;
use crate::error::{Error, Result};
use crate::rational::ratio;

/// A `SuperPoly` homogeneous in ξ-degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multivector {
    poly: SuperPoly,
    degree: usize,
}

impl Multivector {
    /// Fails with a degree error unless `poly` is homogeneous.
    pub fn new(poly: SuperPoly) -> Result<Self> {
        let Some(degree) = poly.xi_degree() else {
            let ds = poly.xi_degrees();
            return Err(Error::Degree {
                expected: ds[0],
                found: ds[ds.len() - 1],
            });
        };
        Ok(Multivector { poly, degree })
    }

    pub fn with_degree(poly: SuperPoly, degree: usize) -> Result<Self> {
        if poly.is_zero() {
            return Ok(Multivector { poly, degree });
        }
        let mv = Self::new(poly)?;
        if mv.degree != degree {
            return Err(Error::Degree {
                expected: degree,
                found: mv.degree,
            });
        }
        Ok(mv)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn poly(&self) -> &SuperPoly {
        &self.poly
    }

    pub fn into_poly(self) -> SuperPoly {
        self.poly
    }
}

fn homogeneous(a: &SuperPoly, deg_a: usize, b: &SuperPoly) -> SuperPoly {
    let mut out = SuperPoly::zero(a.dim());
    let sign_a = if deg_a % 2 == 1 { SuperPoly::one(a.dim()) } else { SuperPoly::one(a.dim()).neg() };
    for i in 0..a.dim() {
        let left = a.d_dxi(i);
        if !left.is_zero() {
            out.add_assign(&sign_a.mul(&left).mul(&b.d_dx(i)));
        }
        let right = b.d_dxi(i);
        if !right.is_zero() {
            out.add_assign(&a.d_dx(i).mul(&right).neg());
        }
    }
    out
}

/// Schouten bracket, extended bilinearly over ξ-degree components:
/// `⟦A,B⟧ = Σ_i (−1)^(a−1) ∂A/∂ξ_i ∂B/∂x^i − ∂A/∂x^i ∂B/∂ξ_i` with left ξ-derivatives.
/// On vector fields it is the commutator.
pub fn schouten(a: &SuperPoly, b: &SuperPoly) -> Result<SuperPoly> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let mut out = SuperPoly::zero(a.dim());
    for k in a.xi_degrees() {
        out.add_assign(&homogeneous(&a.component(k), k, b));
    }
    Ok(out)
}

pub fn schouten_mv(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    let p = schouten(&a.poly, &b.poly)?;
    Multivector::with_degree(p, (a.degree + b.degree).saturating_sub(1))
}

/// `½⟦P,P⟧` for a bivector `P`.
pub fn jacobiator(p: &SuperPoly) -> Result<SuperPoly> {
    if !p.is_zero() && p.xi_degree() != Some(2) {
        return Err(Error::Degree {
            expected: 2,
            found: *p.xi_degrees().iter().find(|&&d| d != 2).unwrap_or(&0),
        });
    }
    Ok(schouten(p, p)?.scale(&ratio(1, 2)))
}

/// `∂_P(A) = ⟦P,A⟧`.
pub fn poisson_differential(p: &SuperPoly, a: &SuperPoly) -> Result<SuperPoly> {
    if !p.is_zero() && p.xi_degree() != Some(2) {
        return Err(Error::Degree {
            expected: 2,
            found: p.xi_degrees()[0],
        });
    }
    schouten(p, a)
}

/// Sign `(−1)^((a−1)(b−1))` of graded antisymmetry.
pub fn exchange_sign(deg_a: usize, deg_b: usize) -> num_rational::BigRational {
    if (deg_a + 1) % 2 == 1 && (deg_b + 1) % 2 == 1 {
        -num_rational::BigRational::one()
    } else {
        num_rational::BigRational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(r: usize, i: usize) -> SuperPoly {
        SuperPoly::coord(r, i)
    }
    fn xi(r: usize, i: usize) -> SuperPoly {
        SuperPoly::xi(r, i)
    }

    #[test]
    fn vector_fields_commute_to_lie_bracket() {
        let x_field = x(1, 0).mul(&xi(1, 0));
        let y_field = xi(1, 0);
        assert_eq!(schouten(&x_field, &y_field).unwrap(), xi(1, 0).neg());
    }

    #[test]
    fn so3_is_poisson() {
        let r = 3;
        let p = x(r, 2)
            .mul(&xi(r, 0).mul(&xi(r, 1)))
            .add_scaled_ret(&x(r, 0).mul(&xi(r, 1).mul(&xi(r, 2))))
            .add_scaled_ret(&x(r, 1).mul(&xi(r, 2).mul(&xi(r, 0))));
        assert!(jacobiator(&p).unwrap().is_zero());
    }

    #[test]
    fn hamiltonian_field_sign() {
        let p = xi(2, 0).mul(&xi(2, 1));
        assert_eq!(poisson_differential(&p, &x(2, 0)).unwrap(), xi(2, 1).neg());
    }

    #[test]
    fn euler_field_rescales_linear_bivector() {
        let r = 3;
        let p = x(r, 2).mul(&xi(r, 0).mul(&xi(r, 1)));
        let euler = (0..r).fold(SuperPoly::zero(r), |acc, i| acc.add_scaled_ret(&x(r, i).mul(&xi(r, i))));
        assert_eq!(schouten(&p, &euler).unwrap(), p);
    }

    #[test]
    fn dimension_two_abstract_bivector_is_poisson() {
        let p = SuperPoly::function(2, "p").mul(&xi(2, 0).mul(&xi(2, 1)));
        assert!(jacobiator(&p).unwrap().is_zero());
    }

    #[test]
    fn rejects_wrong_degree() {
        assert!(matches!(jacobiator(&xi(2, 0)), Err(Error::Degree { .. })));
        assert!(matches!(schouten(&xi(2, 0), &xi(3, 0)), Err(Error::Dimension { .. })));
    }

    impl SuperPoly {
        fn add_scaled_ret(mut self, o: &SuperPoly) -> SuperPoly {
            self.add_assign(o);
            self
        }
    }
}
