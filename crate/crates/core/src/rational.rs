//! Exact rationals used for every probability in the crate.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Unbounded-precision fraction, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"p/q"`, `"-p/q"` or a bare integer `"p"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse {
        position: 0,
        message: format!("not a rational: {text:?}"),
    };
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

/// Canonical `"num/den"` rendering (lowest terms, `den` always present).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Builds `num/den` in lowest terms. Shared factors of two are stripped by
/// shifting first, which keeps the common power-of-two denominators away from
/// the binary gcd (quadratic when one side collapses to a tiny odd number).
pub fn reduce(num: BigInt, den: BigInt) -> Rational {
    assert!(!den.is_zero(), "zero denominator");
    if num.is_zero() {
        return zero();
    }
    let twos = num.trailing_zeros().unwrap_or(0).min(den.trailing_zeros().unwrap_or(0));
    let (num, den) = (num >> twos, den >> twos);
    if den.is_one() || (-&den).is_one() {
        return Rational::from_integer(num * den.signum());
    }
    if den.magnitude().count_ones() == 1 {
        // den is a power of two and num is odd: already coprime
        return if den.is_negative() {
            Rational::new_raw(-num, -den)
        } else {
            Rational::new_raw(num, den)
        };
    }
    Rational::new(num, den)
}

/// `base^exp` for a nonnegative exponent.
pub fn pow(base: &Rational, exp: u64) -> Rational {
    let mut result = one();
    let mut sq = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    result
}

/// True iff `0 < r < 1`.
pub fn in_open_unit(r: &Rational) -> bool {
    r.is_positive() && r < &one()
}
