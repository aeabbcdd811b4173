//! Exact rationals and their canonical text form.
//!
//! Everything in the crate that leaves the type system (CLI output, golden
//! files) writes rationals as `"a/b"` with `b > 0` and `gcd(a, b) = 1`,
//! omitting the denominator when it is 1. [`parse_rat`] accepts exactly that
//! grammar.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The crate's scalar: an arbitrary-precision rational.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n / d`. Panics if `d == 0`; callers pass literals.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// True if the rational is an integer.
pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Canonical form: numerator alone when the denominator is 1.
pub fn format_rat(x: &Rat) -> String {
    if is_integer(x) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse the canonical grammar: `[-]digits` or `[-]digits/digits`.
///
/// Rejects zero denominators, empty parts and any surrounding noise.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let valid = |t: &str| {
        let t = t.strip_prefix('-').unwrap_or(t);
        !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num) || !valid(den) || den.starts_with('-') {
        return None;
    }
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

/// Parse a comma-separated list of rationals.
pub fn parse_rat_list(s: &str) -> Option<Vec<Rat>> {
    if s.is_empty() {
        return Some(Vec::new());
    }
    s.split(',').map(|t| parse_rat(t.trim())).collect()
}

/// p-adic valuation of a nonzero rational; `None` for zero.
pub fn valuation(x: &Rat, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    Some(int_valuation(x.numer(), &p) - int_valuation(x.denom(), &p))
}

fn int_valuation(x: &BigInt, p: &BigInt) -> i64 {
    let mut v = 0;
    let mut x = x.abs();
    loop {
        let (q, r) = num_integer::Integer::div_rem(&x, p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        x = q;
    }
}

/// Trial-division primality for the small primes used as uniformizers.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
