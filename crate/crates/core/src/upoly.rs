//! Univariate polynomials and factorization over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::Field;
use crate::Rational;

/// Dense polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Field> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::new(vec![T::one()])
    }

    /// `c t^d`.
    pub fn monomial(c: T, d: usize) -> Self {
        let mut v = vec![T::zero(); d + 1];
        v[d] = c;
        Self::new(v)
    }

    /// `t - r`.
    pub fn linear(r: T) -> Self {
        Self::new(vec![-r, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[T], i: usize| v.get(i).cloned().unwrap_or_else(T::zero);
        Self::new((0..n).map(|i| get(&self.coeffs, i) + get(&other.coeffs, i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a.clone() * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * T::from_usize(i).unwrap())
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = T::one() / self.leading();
        self.scale(&l)
    }

    /// Quotient and remainder; `None` when dividing by zero.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let lead = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut q = vec![T::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone() / lead.clone();
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k + j] -= c.clone() * dj;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        Some((Self::new(q), Self::new(r)))
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d)?;
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).unwrap();
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// Factorization of a rational polynomial into a constant, rational roots,
/// monic irreducible quadratics and leftovers that were not split.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub constant: Rational,
    /// `(root, multiplicity)`, roots ascending.
    pub roots: Vec<(Rational, usize)>,
    /// `(monic irreducible quadratic, multiplicity)`.
    pub quadratics: Vec<(Poly<Rational>, usize)>,
    /// Monic factors of degree at least 3 without rational roots or
    /// rational quadratic factors found.
    pub unresolved: Vec<Poly<Rational>>,
}

impl Factorization {
    /// Product of all factors.
    pub fn expand(&self) -> Poly<Rational> {
        let mut p = Poly::new(vec![self.constant.clone()]);
        for (r, m) in &self.roots {
            p = p.mul(&Poly::linear(r.clone()).pow(*m));
        }
        for (f, m) in &self.quadratics {
            p = p.mul(&f.pow(*m));
        }
        for f in &self.unresolved {
            p = p.mul(f);
        }
        p
    }
}

/// Integer coefficients with gcd 1 and positive leading coefficient.
fn primitive(p: &Poly<Rational>) -> Vec<BigInt> {
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    ints.into_iter().map(|c| c / &g * &sign).collect()
}

const DIVISOR_LIMIT: u64 = 1 << 40;

/// Positive divisors of `n`, or `None` when `n` is too large to factor by
/// trial division.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > DIVISOR_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(BigInt::from(d));
            if d * d != n {
                large.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

fn to_q(p: &[BigInt]) -> Poly<Rational> {
    Poly::new(p.iter().map(|c| Rational::from_integer(c.clone())).collect())
}

/// Rational roots with multiplicity (rational root theorem).
pub fn rational_roots(p: &Poly<Rational>) -> Vec<(Rational, usize)> {
    let mut rest = p.clone();
    let mut out = Vec::new();
    if rest.is_zero() {
        return out;
    }
    let mut zero_mult = 0;
    while rest.coeffs()[0].is_zero() {
        rest = Poly::new(rest.coeffs()[1..].to_vec());
        zero_mult += 1;
    }
    if zero_mult > 0 {
        out.push((Rational::zero(), zero_mult));
    }
    if rest.degree().unwrap_or(0) == 0 {
        return out;
    }
    let ints = primitive(&rest);
    let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
        return out;
    };
    let mut cands: Vec<Rational> = Vec::new();
    for a in &ps {
        for b in &qs {
            for s in [1, -1] {
                let r = Rational::new(a * s, b.clone());
                if !cands.contains(&r) {
                    cands.push(r);
                }
            }
        }
    }
    cands.sort();
    for r in cands {
        let lin = Poly::linear(r.clone());
        let mut m = 0;
        while let Some(q) = rest.exact_div(&lin) {
            rest = q;
            m += 1;
        }
        if m > 0 {
            out.push((r, m));
        }
    }
    out.sort();
    out
}

/// A rational quadratic factor of a root-free polynomial, found by testing
/// the finitely many integer candidates `a t^2 + b t + c` with `a | lead`,
/// `c | const` and `a + b + c | p(1)`.
fn quadratic_factor(p: &Poly<Rational>) -> Option<Poly<Rational>> {
    let ints = primitive(p);
    let lead = ints.last()?;
    let f1: BigInt = ints.iter().sum();
    let (leads, consts, values) = (divisors(lead)?, divisors(&ints[0])?, divisors(&f1)?);
    let q = to_q(&ints);
    for a in &leads {
        for c0 in &consts {
            for c in [c0.clone(), -c0.clone()] {
                for d0 in &values {
                    for d in [d0.clone(), -d0.clone()] {
                        let b = &d - a - &c;
                        let cand = to_q(&[c.clone(), b, a.clone()]);
                        if q.exact_div(&cand).is_some() {
                            return Some(cand.monic());
                        }
                    }
                }
            }
        }
    }
    None
}

/// Splits `p` into rational roots, irreducible quadratics and unresolved
/// higher factors.
pub fn factor(p: &Poly<Rational>) -> Factorization {
    let constant = p.leading();
    let roots = rational_roots(p);
    let mut rest = p.monic();
    for (r, m) in &roots {
        for _ in 0..*m {
            rest = rest.exact_div(&Poly::linear(r.clone())).unwrap();
        }
    }
    let mut quadratics: Vec<(Poly<Rational>, usize)> = Vec::new();
    let mut unresolved = Vec::new();
    while rest.degree().unwrap_or(0) >= 2 {
        if rest.degree() == Some(2) {
            push_factor(&mut quadratics, rest);
            break;
        }
        match quadratic_factor(&rest) {
            Some(f) => {
                rest = rest.exact_div(&f).unwrap();
                push_factor(&mut quadratics, f);
            }
            None => {
                unresolved.push(rest);
                break;
            }
        }
    }
    Factorization {
        constant,
        roots,
        quadratics,
        unresolved,
    }
}

fn push_factor(list: &mut Vec<(Poly<Rational>, usize)>, f: Poly<Rational>) {
    match list.iter_mut().find(|(g, _)| *g == f) {
        Some(e) => e.1 += 1,
        None => list.push((f, 1)),
    }
}

/// Roots `a ± b i` of a monic quadratic `t^2 + p t + q` with negative
/// discriminant, when `b` is rational.
pub fn complex_pair(f: &Poly<Rational>) -> Option<(Rational, Rational)> {
    if f.degree() != Some(2) {
        return None;
    }
    let f = f.monic();
    let (q, p) = (&f.coeffs()[0], &f.coeffs()[1]);
    let two = Rational::from_integer(2.into());
    let a = -p / &two;
    let b2 = q - &a * &a;
    if !b2.is_positive() {
        return None;
    }
    crate::scalar::rational_sqrt(&b2).map(|b| (a, b))
}
