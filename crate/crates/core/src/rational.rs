//! Exact rational numbers and conversions to and from floating point.

use alloc::format;
use alloc::string::ToString;
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `num / den`. Panics if `den == 0`.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Nearest `f64` to an exact rational.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(if q.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

/// Exact rational value of a finite `f64`.
pub fn from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or(Error::InvalidArgument("non-finite float"))
}

/// Parses an exact rational literal.
///
/// Accepted forms: integers (`-3`), fractions (`4/9`), decimals (`0.2444`)
/// and decimals with an exponent (`1e-3`, `2.5E2`). Decimals are converted
/// exactly, so `0.1` is `1/10` and not the nearest binary float.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty number".to_string()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_decimal(num)?;
        let den = parse_decimal(den)?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(num / den);
    }
    parse_decimal(s)
}

fn parse_decimal(text: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational literal: `{text}`"));
    let s = text.trim();
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..].parse().map_err(|_| bad())?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, fractional) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && fractional.is_empty() {
        return Err(bad());
    }
    if !whole.bytes().chain(fractional.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let mut all_digits = alloc::string::String::with_capacity(whole.len() + fractional.len());
    all_digits.push_str(whole);
    all_digits.push_str(fractional);
    let numer: BigInt = all_digits.parse().map_err(|_| bad())?;
    let scale = exponent - fractional.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(numer);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// `base^exp` for a non-negative integer exponent.
pub fn pow(base: &Rational, exp: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Binomial coefficient `C(n, k)` as an exact integer; zero outside `0..=n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `n!` as an exact integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("4/9").unwrap(), frac(4, 9));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational("0.2444").unwrap(), frac(2444, 10000));
        assert_eq!(parse_rational("1e-3").unwrap(), frac(1, 1000));
        assert_eq!(parse_rational("2.5E2").unwrap(), int(250));
        assert_eq!(parse_rational(".5").unwrap(), frac(1, 2));
        assert_eq!(parse_rational("-0.02/4").unwrap(), frac(-1, 200));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("-").is_err());
    }

    #[test]
    fn float_round_trip_is_exact() {
        let x = 0.1f64;
        let q = from_f64(x).unwrap();
        assert_ne!(q, frac(1, 10));
        assert_eq!(to_f64(&q), x);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 4), BigInt::from(70));
        assert_eq!(binomial(4, 5), BigInt::zero());
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
