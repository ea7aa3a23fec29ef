//! Exact rationals and their `p/q` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Always `p/q`, also for integers (`3/1`), so files stay bit-exact.
pub fn format_pq(c: &Q) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Short display form: integers without denominator.
pub fn format_short(c: &Q) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Parses `p`, `-p`, `p/q`.
pub fn parse_q(text: &str) -> Result<Q> {
    let t = text.trim();
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("invalid rational `{t}`"),
    };
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(num, den))
}

pub fn factorial(m: u32) -> Q {
    (1..=m as i64).fold(Q::one(), |acc, k| acc * q(k))
}

/// Sign as an exact rational.
pub fn sign_q(s: i8) -> Q {
    q(s as i64)
}

pub fn is_negative(c: &Q) -> bool {
    c.is_negative()
}
