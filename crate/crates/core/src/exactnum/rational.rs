//! Rational helpers and the canonical `p/q` text form.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_rational::BigRational;

use super::ScalarParseError;

/// Integer as a rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `n/d` in lowest terms. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, ScalarParseError> {
    let s = s.trim();
    let bad = || ScalarParseError(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() || den.is_negative() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

// Fast paths. Reducing with num-bigint's binary gcd dominates matrix work on
// small or integral values, so those cases go through machine words.

fn small(a: &BigRational) -> Option<(i128, i128)> {
    Some((a.numer().to_i64()? as i128, a.denom().to_i64()? as i128))
}

fn from_small(n: i128, d: i128) -> BigRational {
    let g = gcd_i128(n.abs(), d);
    BigRational::new_raw(BigInt::from(n / g), BigInt::from(d / g))
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn qadd(a: &BigRational, b: &BigRational) -> BigRational {
    if a.denom().is_one() && b.denom().is_one() {
        return BigRational::from_integer(a.numer() + b.numer());
    }
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    match (small(a), small(b)) {
        (Some((an, ad)), Some((bn, bd))) => from_small(an * bd + bn * ad, ad * bd),
        _ => a + b,
    }
}

pub fn qsub(a: &BigRational, b: &BigRational) -> BigRational {
    if b.is_zero() {
        return a.clone();
    }
    qadd(a, &-b)
}

pub fn qmul(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_zero() || b.is_zero() {
        return BigRational::zero();
    }
    if a.denom().is_one() && b.denom().is_one() {
        return BigRational::from_integer(a.numer() * b.numer());
    }
    match (small(a), small(b)) {
        (Some((an, ad)), Some((bn, bd))) => from_small(an * bn, ad * bd),
        _ => a * b,
    }
}

/// Least common multiple of the denominators of `values` (1 for an empty list).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Floor of a rational as an integer.
pub fn floor(r: &BigRational) -> BigInt {
    r.floor().to_integer()
}

/// Simplest fraction (smallest denominator, then smallest |numerator|) in the
/// closed interval `[lo, hi]`.
pub fn simplest_in_closed(lo: &BigRational, hi: &BigRational) -> BigRational {
    assert!(lo <= hi);
    if lo.is_positive() {
        simplest_positive(lo, hi)
    } else if hi.is_negative() {
        -simplest_positive(&-hi, &-lo)
    } else {
        BigRational::zero()
    }
}

// Stern-Brocot descent via continued fractions, for 0 < lo <= hi.
fn simplest_positive(lo: &BigRational, hi: &BigRational) -> BigRational {
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    if fl < hi.floor() {
        return fl + BigRational::one();
    }
    // lo and hi share the integer part and lo is not an integer.
    let lo_frac = lo - &fl;
    let hi_frac = hi - &fl;
    // 1/hi_frac <= 1/x <= 1/lo_frac
    let inner = if hi_frac.is_zero() {
        unreachable!("hi_frac is zero only when hi is an integer above lo")
    } else {
        simplest_positive(&hi_frac.recip(), &lo_frac.recip())
    };
    fl + inner.recip()
}
