//! Multivectors as polynomials in odd `ξ` over differential polynomials.

mod monomial;
mod poly;
mod schouten;
mod substitute;
mod symbol;

pub use monomial::{Derivs, Monomial, Var, MAX_DIM};
pub use poly::{SuperPoly, Term, XiSet};
pub use schouten::{exchange_sign, jacobiator, poisson_differential, schouten, schouten_mv, Multivector};
pub use substitute::{substitute, substitute_strict};
pub use symbol::Symbol;
