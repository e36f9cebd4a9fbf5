//! Arbitrary-precision rationals.
//!
//! `BigRational` already keeps the denominator positive and the fraction
//! reduced, so it is used directly; this module only adds the handful of
//! number-theoretic helpers the rest of the crate needs.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text form: `p` or `p/q`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p` or `p/q` with optional leading sign.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => text.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

fn integer_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Exact square root of a rational square, if it is one.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let n = integer_sqrt_exact(q.numer())?;
    let d = integer_sqrt_exact(q.denom())?;
    Some(Rational::new(n, d))
}

pub fn is_square(q: &Rational) -> bool {
    rational_sqrt(q).is_some()
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

pub fn gcd_of_numerators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, q| acc.gcd(q.numer()))
}

pub fn sign(q: &Rational) -> i32 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Reduce a rational modulo a word-sized prime. Returns `None` when the
/// denominator is divisible by `p`.
pub fn rational_mod_p(q: &Rational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let n = q.numer().mod_floor(&pb);
    let d = q.denom().mod_floor(&pb);
    let n: u64 = n.try_into().ok()?;
    let d: u64 = d.try_into().ok()?;
    if d == 0 {
        return None;
    }
    Some(mul_mod(n, inv_mod(d, p), p))
}

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> u64 {
    if n < 0 || k < 0 || k > n {
        0
    } else {
        num_integer::binomial(n as u64, k as u64)
    }
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    // p prime: a^(p-2)
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-6/4"), Some(frac(-3, 2)));
        assert_eq!(format_rational(&frac(-3, 2)), "-3/2");
        assert_eq!(format_rational(&rat(7)), "7");
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn squares() {
        assert_eq!(rational_sqrt(&frac(9, 4)), Some(frac(3, 2)));
        assert!(!is_square(&rat(2)));
        assert!(!is_square(&rat(-1)));
        assert!(is_square(&rat(0)));
    }

    #[test]
    fn modular_reduction() {
        let p = 1_000_000_007;
        let half = rational_mod_p(&frac(1, 2), p).unwrap();
        assert_eq!(mul_mod(half, 2, p), 1);
        assert_eq!(rational_mod_p(&frac(-1, 1), p), Some(p - 1));
    }
}
