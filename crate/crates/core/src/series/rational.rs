//! Exact rational helpers shared by the series code.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficient; always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Binomial coefficient C(n, k) for non-negative integers.
pub fn binomial(n: u64, k: u64) -> BigInt {
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

/// Generalized binomial coefficient q(q-1)...(q-j+1)/j! for rational q.
pub fn binomial_rational(q: &Rational, j: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..j {
        acc = acc * (q - int(i as i64)) / int(i as i64 + 1);
    }
    acc
}

/// Parses `p`, `p/q` or `-p/q`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::InvalidArgument(format!("not a rational number: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(num, den))
}

/// Whether the rational is an integer.
pub fn is_integral(q: &Rational) -> bool {
    q.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(0, 1), BigInt::zero());
        assert_eq!(binomial(40, 10), BigInt::from(847_660_528u64));
        assert_eq!(binomial_rational(&ratio(1, 2), 2), ratio(-1, 8));
        assert_eq!(binomial_rational(&int(-4), 3), int(-20));
        assert_eq!(binomial_rational(&int(5), 0), int(1));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational(" -6/4 ").unwrap(), ratio(-3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
