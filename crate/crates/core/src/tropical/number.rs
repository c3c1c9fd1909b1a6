use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Result, TropError};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"7"`, `"-3/4"` or `"2.125"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || TropError::Parse(format!("not a rational number: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = parse_int(n).ok_or_else(bad)?;
        let d = parse_int(d).ok_or_else(bad)?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = t.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = ip.starts_with('-');
        let ip_digits = ip.trim_start_matches(['-', '+']);
        if !ip_digits.bytes().all(|b| b.is_ascii_digit()) || ip.len() - ip_digits.len() > 1 {
            return Err(bad());
        }
        let digits = format!("{ip_digits}{fp}");
        let mag = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })
            .map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), fp.len());
        let r = BigRational::new(mag, den);
        return Ok(if neg { -r } else { r });
    }
    Ok(BigRational::from_integer(parse_int(t).ok_or_else(bad)?))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s.strip_prefix('+').unwrap_or(s)).ok()
}

/// Least common multiple of the denominators.
pub fn lcm_denominators<'a>(it: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// An element of R ∪ {−∞, +∞}. Variant order gives the real order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedNumber {
    NegInf,
    Finite(Rational),
    PosInf,
}

use ExtendedNumber::{Finite, NegInf, PosInf};

impl ExtendedNumber {
    pub fn zero() -> Self {
        Finite(Rational::zero())
    }

    pub fn int(n: i64) -> Self {
        Finite(rat(n))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Finite(r) => Some(r),
            _ => None,
        }
    }

    /// Sum with −∞ absorbing (max-plus convention).
    pub fn add_max(&self, o: &Self) -> Self {
        match (self, o) {
            (NegInf, _) | (_, NegInf) => NegInf,
            (PosInf, _) | (_, PosInf) => PosInf,
            (Finite(a), Finite(b)) => Finite(a + b),
        }
    }

    /// Sum with +∞ absorbing (min-plus convention).
    pub fn add_min(&self, o: &Self) -> Self {
        match (self, o) {
            (PosInf, _) | (_, PosInf) => PosInf,
            (NegInf, _) | (_, NegInf) => NegInf,
            (Finite(a), Finite(b)) => Finite(a + b),
        }
    }

    pub fn add_rat(&self, r: &Rational) -> Self {
        match self {
            Finite(a) => Finite(a + r),
            x => x.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            NegInf => PosInf,
            PosInf => NegInf,
            Finite(a) => Finite(-a),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        debug_assert!(k.is_positive());
        match self {
            Finite(a) => Finite(a * k),
            x => x.clone(),
        }
    }

    pub fn max_of(a: Self, b: Self) -> Self {
        std::cmp::max(a, b)
    }
}

impl From<Rational> for ExtendedNumber {
    fn from(r: Rational) -> Self {
        Finite(r)
    }
}

impl From<i64> for ExtendedNumber {
    fn from(n: i64) -> Self {
        Finite(rat(n))
    }
}

impl PartialEq<Rational> for ExtendedNumber {
    fn eq(&self, o: &Rational) -> bool {
        matches!(self, Finite(a) if a == o)
    }
}

impl PartialOrd<Rational> for ExtendedNumber {
    fn partial_cmp(&self, o: &Rational) -> Option<Ordering> {
        Some(match self {
            NegInf => Ordering::Less,
            PosInf => Ordering::Greater,
            Finite(a) => a.cmp(o),
        })
    }
}

impl fmt::Display for ExtendedNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegInf => f.write_str("-inf"),
            PosInf => f.write_str("+inf"),
            Finite(r) => write!(f, "{r}"),
        }
    }
}

impl FromStr for ExtendedNumber {
    type Err = TropError;

    /// Accepts `-inf` but not `+inf`: documents never carry +∞.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "-inf" => Ok(NegInf),
            _ => parse_rational(s).map(Finite),
        }
    }
}

/// Shorthand used throughout tests and examples: `None` is −∞.
pub fn ext(v: Option<i64>) -> ExtendedNumber {
    v.map_or(NegInf, ExtendedNumber::int)
}

pub fn ext_row(vals: &[Option<i64>]) -> Vec<ExtendedNumber> {
    vals.iter().copied().map(ext).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("2.125").unwrap(), frac(17, 8));
        assert_eq!(parse_rational("-0.5").unwrap(), frac(-1, 2));
        assert_eq!(parse_rational("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational("+4").unwrap(), rat(4));
        for bad in ["", "nan", "inf", "+inf", "1/0", "1.", ".", "1e3", "--1", "1.2.3"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn infinity_conventions() {
        assert_eq!(NegInf.add_max(&PosInf), NegInf);
        assert_eq!(NegInf.add_min(&PosInf), PosInf);
        assert!(NegInf < ExtendedNumber::int(-1000) && ExtendedNumber::int(1000) < PosInf);
        assert_eq!("-inf".parse::<ExtendedNumber>().unwrap(), NegInf);
        assert!("+inf".parse::<ExtendedNumber>().is_err());
    }

    #[test]
    fn canonical_display() {
        assert_eq!(Finite(frac(4, -6)).to_string(), "-2/3");
        assert_eq!(Finite(frac(6, 3)).to_string(), "2");
        assert_eq!(NegInf.to_string(), "-inf");
    }
}
