//! Small exact-arithmetic helpers shared by the counting code.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Falling factorial `n (n-1) ... (n-len+1)`; empty product for `len == 0`.
pub fn falling(n: usize, len: usize) -> BigUint {
    if len > n {
        return BigUint::zero();
    }
    (n - len + 1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `n! / (parts[0]! parts[1]! ...)` where `n` is the sum of the parts.
pub fn multinomial(parts: &[usize]) -> BigUint {
    let mut acc = BigUint::one();
    let mut total = 0;
    for &p in parts {
        total += p;
        acc *= binomial(total, p);
    }
    acc
}

pub fn pow(base: usize, exp: usize) -> BigUint {
    num_traits::pow(BigUint::from(base), exp)
}

/// `base^exp` as a rational, allowing negative exponents.
pub fn pow_signed(base: usize, exp: i64) -> BigRational {
    assert!(base != 0 || exp >= 0, "0 raised to a negative power");
    let magnitude = to_rational(&pow(base, exp.unsigned_abs() as usize));
    if exp >= 0 {
        magnitude
    } else {
        magnitude.recip()
    }
}

/// Number of labelled (unrooted) trees on `m` vertices, `m^(m-2)`, with the
/// conventions `1^(-1) = 1` and zero trees on an empty vertex set.
pub fn cayley_unrooted(m: usize) -> BigUint {
    match m {
        0 => BigUint::zero(),
        1 => BigUint::one(),
        _ => pow(m, m - 2),
    }
}

pub fn to_rational(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

/// Converts an exact rational into a non-negative integer, reporting `what`
/// when the value is fractional or negative.
pub fn expect_natural(value: &BigRational, what: impl Into<String>) -> Result<BigUint> {
    if !value.is_integer() || value.is_negative() {
        return Err(Error::NotIntegral {
            what: what.into(),
            value: value.to_string(),
        });
    }
    Ok(value.to_integer().magnitude().clone())
}

/// Natural logarithm of a big unsigned integer; `-inf` for zero.
pub fn ln_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}
