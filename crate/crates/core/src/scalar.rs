//! Scalar abstraction and rational helpers.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::{FromPrimitive, Num, NumAssignRef, NumRef, One, Signed, Zero};

use crate::Rational;

/// A field scalar usable by the generic linear algebra, jets and polynomials.
///
/// Algorithms test pivots with `is_zero`, so only exact types (rationals)
/// give exact answers; floating-point instantiations are approximate.
pub trait Field:
    Num + NumRef + NumAssignRef + FromPrimitive + Clone + Neg<Output = Self> + Debug
{
}

impl<T> Field for T where
    T: Num + NumRef + NumAssignRef + FromPrimitive + Clone + Neg<Output = T> + Debug
{
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p/q` (integers print without a denominator).
pub fn fmt_q(v: &Rational) -> String {
    v.to_string()
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_q(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

pub fn factorial(k: u32) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= i;
    }
    Rational::from_integer(acc)
}

/// Exact rational square root, when it exists.
pub fn rational_sqrt(v: &Rational) -> Option<Rational> {
    if v.is_negative() {
        return None;
    }
    let n = v.numer().sqrt();
    let d = v.denom().sqrt();
    if &(&n * &n) == v.numer() && &(&d * &d) == v.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}
