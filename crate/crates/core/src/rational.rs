//! Rational scalars and points.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parses `"a"` or `"a/b"` (optional sign, surrounding whitespace ignored).
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Format(format!("invalid rational literal {text:?}"));
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Format(format!("zero denominator in {text:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// Formats a rational as `a` or `a/b`.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `q^e` for a possibly negative exponent. Errors on `0^e` with `e < 0`.
pub fn pow_signed(q: &BigRational, e: i64) -> Result<BigRational> {
    if e >= 0 {
        Ok(num_traits::pow(q.clone(), e as usize))
    } else if q.is_zero() {
        Err(Error::ZeroToNegativePower)
    } else {
        Ok(num_traits::pow(q.recip(), e.unsigned_abs() as usize))
    }
}

pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalized binomial coefficient `C(a, k)` for an integer (possibly negative) `a`.
pub fn binomial_signed(a: i64, k: usize) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..k {
        acc = acc * rat(a - i as i64) / rat(i as i64 + 1);
    }
    acc
}

/// A point with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint(pub Vec<BigRational>);

impl RationalPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        RationalPoint(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RationalPoint(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn on_torus(&self) -> bool {
        self.0.iter().all(|c| !c.is_zero())
    }

    /// Parses a comma separated list such as `"1/2, -3, 0"`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim().trim_start_matches('(').trim_end_matches(')');
        if t.trim().is_empty() {
            return Ok(RationalPoint(Vec::new()));
        }
        t.split(',').map(parse_rational).collect::<Result<Vec<_>>>().map(RationalPoint)
    }

    pub fn from_strings(items: &[String]) -> Result<Self> {
        items.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>().map(RationalPoint)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }

    pub fn is_negative_free(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}

impl Serialize for RationalPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coord {
            Text(String),
            Int(i64),
        }
        let raw = Vec::<Coord>::deserialize(d)?;
        let items: Vec<String> = raw
            .into_iter()
            .map(|c| match c {
                Coord::Text(s) => s,
                Coord::Int(i) => i.to_string(),
            })
            .collect();
        RationalPoint::from_strings(&items).map_err(serde::de::Error::custom)
    }
}
