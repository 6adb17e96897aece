//! Exact scalar types and small helpers shared by the exact modules.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub fn rat_from_int(v: &Int) -> Rat {
    Rat::from_integer(v.clone())
}

pub fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn int_dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn rat_dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).fold(Rat::zero(), |acc, t| acc + t)
}

/// Pairing of a rational point with an integer vector.
pub fn mixed_dot(x: &[Rat], v: &[Int]) -> Rat {
    x.iter()
        .zip(v)
        .map(|(a, b)| a * rat_from_int(b))
        .fold(Rat::zero(), |acc, t| acc + t)
}

pub fn gcd_all(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |g, x| g.gcd(x))
}

pub fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Smallest integer `>= r`.
pub fn ceil(r: &Rat) -> Int {
    r.ceil().to_integer()
}

/// `p/q` (or `p` when the denominator is one).
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        let mut s = r.numer().to_string();
        s.push('/');
        s.push_str(&r.denom().to_string());
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRatError(pub String);

impl fmt::Display for ParseRatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "not a rational number: {:?}", self.0)
    }
}

/// Parses `p/q`, `p`, or a terminating decimal such as `0.25`.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let err = || ParseRatError(s.to_string());
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: Int = n.trim().parse().map_err(|_| err())?;
        let d: Int = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let mut digits = String::from(if whole_digits.is_empty() { "0" } else { whole_digits });
        digits.push_str(frac);
        let n: Int = digits.parse().map_err(|_| err())?;
        let d = num_traits::pow(Int::from(10), frac.len());
        let r = Rat::new(n, d);
        return Ok(if negative { -r } else { r });
    }
    let n: Int = s.parse().map_err(|_| err())?;
    Ok(Rat::from_integer(n))
}

/// Nearest `f64` to a rational.
pub fn to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-7").unwrap(), rat(-7, 1));
        assert_eq!(parse_rat("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rat("-1.5").unwrap(), rat(-3, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rat(&rat(2, 4)), "1/2");
        assert_eq!(format_rat(&rat(-3, 1)), "-3");
    }
}
