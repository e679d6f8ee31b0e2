//! Rational helpers shared by every module: parsing, formatting and
//! denominator clearing.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used throughout the crate.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qs(values: &[i64]) -> Vec<Q> {
    values.iter().map(|&v| q(v)).collect()
}

/// Parses `"p/q"`, `"-p/q"` or a bare integer. Surrounding whitespace is ignored.
pub fn parse_rational(text: &str) -> Result<Q> {
    let t = text.trim();
    let bad = || Error::InvalidNumber(text.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) => {
            if d.starts_with('-') || d.starts_with('+') {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(num, den))
}

/// Canonical `p/q` rendering (`p` when the denominator is one).
pub fn fmt_rational(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Approximate decimal rendering, for human-readable output only.
pub fn approx(x: &Q) -> f64 {
    let n = x.numer().to_f64().unwrap_or(f64::NAN);
    let d = x.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

pub fn sign(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Q>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Scales a rational vector by a positive factor so that it becomes a
/// primitive integer vector (entries coprime). The zero vector maps to itself.
pub fn primitive_integer(values: &[Q]) -> Vec<BigInt> {
    let l = lcm_of_denominators(values);
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| (v * Q::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|v| v / &g).collect()
}

pub fn to_rationals(values: &[BigInt]) -> Vec<Q> {
    values.iter().map(|v| Q::from_integer(v.clone())).collect()
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Parses a comma-separated list of rationals, e.g. `-7,5,1,1` or `-1/2,1/2,0,0`.
pub fn parse_rational_list(text: &str) -> Result<Vec<Q>> {
    if text.trim().is_empty() {
        return Err(Error::InvalidNumber(text.to_string()));
    }
    text.split(',').map(parse_rational).collect()
}
