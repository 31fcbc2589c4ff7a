//! Canonical-form differential ring of exponential-trigonometric polynomials
//! in `n` variables with rational data.
//!
//! An element is a finite sum of terms
//! `c * x^a * exp(<l, x>) * trig(<m, x>)` where `trig` is `1`, `cos` or `sin`.
//! Terms are kept in a `BTreeMap` keyed by `(a, l, trig, m)`, which makes the
//! representation canonical: two elements are equal as functions iff their
//! maps are equal. The trigonometric frequency `m` is always nonzero and
//! lexicographically positive; products are reduced with the product-to-sum
//! identities so `sin^2 + cos^2` collapses to `1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{fmt_q, q, qf};
use crate::Rational;

/// Linear form `<l, x> = sum l_j x_j` with rational entries.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Frequency(pub Vec<Rational>);

impl Frequency {
    pub fn zero(n: usize) -> Self {
        Frequency(vec![Rational::zero(); n])
    }

    pub fn unit(n: usize, i: usize, c: Rational) -> Self {
        let mut v = vec![Rational::zero(); n];
        v[i] = c;
        Frequency(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|v| v.is_zero())
    }

    /// First nonzero entry is positive.
    pub fn is_lex_positive(&self) -> bool {
        self.0
            .iter()
            .find(|v| !v.is_zero())
            .is_some_and(|v| v.is_positive())
    }

    pub fn add(&self, other: &Self) -> Self {
        Frequency(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Frequency(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        Frequency(self.0.iter().map(|a| -a).collect())
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(i, _)| i)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Trig {
    None,
    Cos,
    Sin,
}

/// The generator part of a term: monomial, exponential and trigonometric data.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TermKey {
    pub mono: Vec<u32>,
    pub exp: Frequency,
    pub trig: Trig,
    /// Present iff `trig != Trig::None`.
    pub trig_freq: Option<Frequency>,
}

impl TermKey {
    pub fn constant(n: usize) -> Self {
        TermKey {
            mono: vec![0; n],
            exp: Frequency::zero(n),
            trig: Trig::None,
            trig_freq: None,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.exp.is_zero() && self.trig == Trig::None
    }

    /// Variables this key depends on.
    pub fn depends_on(&self, i: usize) -> bool {
        self.mono[i] > 0
            || !self.exp.get(i).is_zero()
            || self.trig_freq.as_ref().is_some_and(|f| !f.get(i).is_zero())
    }
}

/// Canonical element of the exponential-trigonometric polynomial ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExpPolyCoeff {
    nvars: usize,
    terms: BTreeMap<TermKey, Rational>,
}

impl fmt::Debug for ExpPolyCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        write!(f, "{}", crate::text::format_coeff(self, &names))
    }
}

/// JSON form of one term; rationals are `p/q` strings.
#[derive(Debug, Clone, Serialize)]
pub struct TermJson {
    pub coeff: String,
    pub mono: Vec<u32>,
    pub exp: Vec<String>,
    pub trig: Trig,
    #[serde(rename = "trigFreq", skip_serializing_if = "Option::is_none")]
    pub trig_freq: Option<Vec<String>>,
}

impl ExpPolyCoeff {
    pub fn zero(n: usize) -> Self {
        Self {
            nvars: n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut r = Self::zero(n);
        r.push(TermKey::constant(n), c);
        r
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    /// The coordinate function `x_i`.
    pub fn var(n: usize, i: usize) -> Self {
        Self::monomial(n, Rational::one(), {
            let mut m = vec![0; n];
            m[i] = 1;
            m
        })
    }

    pub fn monomial(n: usize, c: Rational, mono: Vec<u32>) -> Self {
        assert_eq!(mono.len(), n);
        let mut r = Self::zero(n);
        let mut key = TermKey::constant(n);
        key.mono = mono;
        r.push(key, c);
        r
    }

    pub fn exp(freq: Frequency) -> Self {
        let n = freq.len();
        let mut r = Self::zero(n);
        let mut key = TermKey::constant(n);
        key.exp = freq;
        r.push(key, Rational::one());
        r
    }

    pub fn cos(freq: Frequency) -> Self {
        let n = freq.len();
        let mut r = Self::zero(n);
        r.push_trig(vec![0; n], Frequency::zero(n), Trig::Cos, freq, Rational::one());
        r
    }

    pub fn sin(freq: Frequency) -> Self {
        let n = freq.len();
        let mut r = Self::zero(n);
        r.push_trig(vec![0; n], Frequency::zero(n), Trig::Sin, freq, Rational::one());
        r
    }

    /// Builds a canonical element from arbitrary raw terms (trig data is
    /// normalised, equal keys merged, zeros dropped).
    pub fn from_terms(n: usize, raw: impl IntoIterator<Item = (TermKey, Rational)>) -> Self {
        let mut r = Self::zero(n);
        for (key, c) in raw {
            assert_eq!(key.mono.len(), n);
            match (key.trig, key.trig_freq) {
                (Trig::None, _) => r.push(
                    TermKey {
                        trig_freq: None,
                        ..key
                    },
                    c,
                ),
                (kind, Some(f)) => r.push_trig(key.mono, key.exp, kind, f, c),
                (_, None) => panic!("trigonometric term without frequency"),
            }
        }
        r
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, key: &TermKey) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(TermKey::is_polynomial)
    }

    pub fn depends_on(&self, i: usize) -> bool {
        self.terms.keys().any(|k| k.depends_on(i))
    }

    fn push(&mut self, key: TermKey, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// Adds `c * x^mono * exp(exp) * kind(freq)` after sign normalisation.
    fn push_trig(&mut self, mono: Vec<u32>, exp: Frequency, kind: Trig, freq: Frequency, c: Rational) {
        if freq.is_zero() {
            match kind {
                Trig::Sin => return,
                _ => {
                    self.push(
                        TermKey {
                            mono,
                            exp,
                            trig: Trig::None,
                            trig_freq: None,
                        },
                        c,
                    );
                    return;
                }
            }
        }
        let (freq, c) = if freq.is_lex_positive() {
            (freq, c)
        } else {
            match kind {
                Trig::Sin => (freq.neg(), -c),
                _ => (freq.neg(), c),
            }
        };
        self.push(
            TermKey {
                mono,
                exp,
                trig: kind,
                trig_freq: if kind == Trig::None { None } else { Some(freq) },
            },
            c,
        );
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut r = self.clone();
        for (k, c) in &other.terms {
            r.push(k.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut r = Self::zero(self.nvars);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                r.add_key_product(ka, kb, &(ca * cb));
            }
        }
        Ok(r)
    }

    fn add_key_product(&mut self, a: &TermKey, b: &TermKey, c: &Rational) {
        let mono: Vec<u32> = a.mono.iter().zip(&b.mono).map(|(x, y)| x + y).collect();
        let exp = a.exp.add(&b.exp);
        let half = qf(1, 2);
        match (a.trig, b.trig) {
            (Trig::None, Trig::None) => self.push(
                TermKey {
                    mono,
                    exp,
                    trig: Trig::None,
                    trig_freq: None,
                },
                c.clone(),
            ),
            (Trig::None, kind) => {
                self.push_trig(mono, exp, kind, b.trig_freq.clone().unwrap(), c.clone())
            }
            (kind, Trig::None) => {
                self.push_trig(mono, exp, kind, a.trig_freq.clone().unwrap(), c.clone())
            }
            (ta, tb) => {
                let fa = a.trig_freq.as_ref().unwrap();
                let fb = b.trig_freq.as_ref().unwrap();
                let sum = fa.add(fb);
                let diff = fa.sub(fb);
                let h = c * &half;
                let (k_diff, s_diff, k_sum, s_sum) = match (ta, tb) {
                    // cos A cos B = 1/2 cos(A-B) + 1/2 cos(A+B)
                    (Trig::Cos, Trig::Cos) => (Trig::Cos, 1, Trig::Cos, 1),
                    // sin A sin B = 1/2 cos(A-B) - 1/2 cos(A+B)
                    (Trig::Sin, Trig::Sin) => (Trig::Cos, 1, Trig::Cos, -1),
                    // sin A cos B = 1/2 sin(A+B) + 1/2 sin(A-B)
                    (Trig::Sin, Trig::Cos) => (Trig::Sin, 1, Trig::Sin, 1),
                    // cos A sin B = 1/2 sin(A+B) - 1/2 sin(A-B)
                    (Trig::Cos, Trig::Sin) => (Trig::Sin, -1, Trig::Sin, 1),
                    _ => unreachable!(),
                };
                self.push_trig(mono.clone(), exp.clone(), k_diff, diff, &h * q(s_diff));
                self.push_trig(mono, exp, k_sum, sum, h * q(s_sum));
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative with respect to `x_i`.
    pub fn partial(&self, i: usize) -> Self {
        assert!(i < self.nvars, "variable index out of range");
        let mut r = Self::zero(self.nvars);
        for (k, c) in &self.terms {
            let a = k.mono[i];
            if a > 0 {
                let mut mono = k.mono.clone();
                mono[i] -= 1;
                r.push_trig_key(mono, k, c * q(a as i64));
            }
            let l = k.exp.get(i);
            if !l.is_zero() {
                r.push_trig_key(k.mono.clone(), k, c * l);
            }
            if let Some(f) = &k.trig_freq {
                let m = f.get(i);
                if !m.is_zero() {
                    let (kind, s) = match k.trig {
                        Trig::Cos => (Trig::Sin, -c * m),
                        Trig::Sin => (Trig::Cos, c * m),
                        Trig::None => unreachable!(),
                    };
                    r.push_trig(k.mono.clone(), k.exp.clone(), kind, f.clone(), s);
                }
            }
        }
        r
    }

    fn push_trig_key(&mut self, mono: Vec<u32>, k: &TermKey, c: Rational) {
        match &k.trig_freq {
            Some(f) => self.push_trig(mono, k.exp.clone(), k.trig, f.clone(), c),
            None => self.push(
                TermKey {
                    mono,
                    exp: k.exp.clone(),
                    trig: Trig::None,
                    trig_freq: None,
                },
                c,
            ),
        }
    }

    /// Exact value at the origin.
    pub fn eval_origin(&self) -> Rational {
        let mut acc = Rational::zero();
        for (k, c) in &self.terms {
            if k.mono.iter().all(|&a| a == 0) && k.trig != Trig::Sin {
                acc += c;
            }
        }
        acc
    }

    /// Sets the variables in `mask` to zero, keeping the others symbolic.
    /// Requires frequencies to live entirely inside or entirely outside the mask.
    pub fn eval_vars_at_zero(&self, mask: &[bool]) -> Result<Self> {
        let mut r = Self::zero(self.nvars);
        let inside = |f: &Frequency| f.support().all(|i| mask[i]);
        let outside = |f: &Frequency| f.support().all(|i| !mask[i]);
        for (k, c) in &self.terms {
            if k.mono.iter().zip(mask).any(|(&a, &m)| m && a > 0) {
                continue;
            }
            let mut key = k.clone();
            if inside(&k.exp) {
                key.exp = Frequency::zero(self.nvars);
            } else if !outside(&k.exp) {
                return Err(Error::NotRepresentable(
                    "exponential mixes evaluated and free variables".into(),
                ));
            }
            if let Some(f) = &k.trig_freq {
                if inside(f) {
                    if k.trig == Trig::Sin {
                        continue;
                    }
                    key.trig = Trig::None;
                    key.trig_freq = None;
                } else if !outside(f) {
                    return Err(Error::NotRepresentable(
                        "trigonometric factor mixes evaluated and free variables".into(),
                    ));
                }
            }
            r.push(key, c.clone());
        }
        Ok(r)
    }

    /// Embeds into a ring with `m >= n` variables; variable `i` maps to `slots[i]`.
    pub fn embed(&self, m: usize, slots: &[usize]) -> Self {
        assert_eq!(slots.len(), self.nvars);
        let lift = |f: &Frequency| {
            let mut v = vec![Rational::zero(); m];
            for (i, c) in f.0.iter().enumerate() {
                v[slots[i]] = c.clone();
            }
            Frequency(v)
        };
        let mut r = Self::zero(m);
        for (k, c) in &self.terms {
            let mut mono = vec![0; m];
            for (i, &a) in k.mono.iter().enumerate() {
                mono[slots[i]] = a;
            }
            r.push(
                TermKey {
                    mono,
                    exp: lift(&k.exp),
                    trig: k.trig,
                    trig_freq: k.trig_freq.as_ref().map(lift),
                },
                c.clone(),
            );
        }
        r
    }

    /// Restricts to the variables listed in `keep` (in that order).
    /// Fails if the element depends on a dropped variable.
    pub fn restrict(&self, keep: &[usize]) -> Result<Self> {
        for i in 0..self.nvars {
            if !keep.contains(&i) && self.depends_on(i) {
                return Err(Error::NotProjectable(format!("depends on variable {i}")));
            }
        }
        let pick = |f: &Frequency| Frequency(keep.iter().map(|&i| f.0[i].clone()).collect());
        let mut r = Self::zero(keep.len());
        for (k, c) in &self.terms {
            r.push(
                TermKey {
                    mono: keep.iter().map(|&i| k.mono[i]).collect(),
                    exp: pick(&k.exp),
                    trig: k.trig,
                    trig_freq: k.trig_freq.as_ref().map(pick),
                },
                c.clone(),
            );
        }
        Ok(r)
    }

    /// Substitutes `x_j = map[j](y)` where every `map[j]` is a polynomial in
    /// `m` variables without constant term. Exponential and trigonometric
    /// arguments must stay linear after substitution.
    pub fn substitute(&self, map: &[ExpPolyCoeff]) -> Result<Self> {
        assert_eq!(map.len(), self.nvars);
        let m = map.first().map_or(0, |p| p.nvars);
        for p in map {
            if !p.is_polynomial() || p.nvars != m {
                return Err(Error::NotRepresentable("substitution must be polynomial".into()));
            }
        }
        let linear_image = |f: &Frequency| -> Result<Frequency> {
            let mut acc = Self::zero(m);
            for (j, c) in f.0.iter().enumerate() {
                if !c.is_zero() {
                    acc = &acc + &map[j].scale(c);
                }
            }
            let mut out = vec![Rational::zero(); m];
            for (k, c) in acc.terms() {
                let deg: u32 = k.mono.iter().sum();
                if deg != 1 {
                    return Err(Error::NotRepresentable(
                        "exponential argument becomes nonlinear".into(),
                    ));
                }
                let i = k.mono.iter().position(|&a| a == 1).unwrap();
                out[i] = c.clone();
            }
            Ok(Frequency(out))
        };
        let mut powers: Vec<Vec<ExpPolyCoeff>> = map.iter().map(|p| vec![Self::one(m), p.clone()]).collect();
        let mut result = Self::zero(m);
        for (k, c) in &self.terms {
            let mut term = Self::constant(m, c.clone());
            for (j, &a) in k.mono.iter().enumerate() {
                while powers[j].len() <= a as usize {
                    let next = powers[j].last().unwrap() * &map[j];
                    powers[j].push(next);
                }
                term = &term * &powers[j][a as usize];
            }
            if !k.exp.is_zero() {
                term = &term * &Self::exp(linear_image(&k.exp)?);
            }
            if let Some(f) = &k.trig_freq {
                let g = linear_image(f)?;
                let t = match k.trig {
                    Trig::Cos => Self::cos(g),
                    Trig::Sin => Self::sin(g),
                    Trig::None => unreachable!(),
                };
                term = &term * &t;
            }
            result = &result + &term;
        }
        Ok(result)
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(k, c)| TermJson {
                coeff: fmt_q(c),
                mono: k.mono.clone(),
                exp: k.exp.0.iter().map(fmt_q).collect(),
                trig: k.trig,
                trig_freq: k.trig_freq.as_ref().map(|f| f.0.iter().map(fmt_q).collect()),
            })
            .collect()
    }
}

impl<'a> Add for &'a ExpPolyCoeff {
    type Output = ExpPolyCoeff;
    fn add(self, rhs: Self) -> ExpPolyCoeff {
        self.try_add(rhs).expect("arity mismatch")
    }
}

impl<'a> Sub for &'a ExpPolyCoeff {
    type Output = ExpPolyCoeff;
    fn sub(self, rhs: Self) -> ExpPolyCoeff {
        self.try_add(&-rhs).expect("arity mismatch")
    }
}

impl<'a> Mul for &'a ExpPolyCoeff {
    type Output = ExpPolyCoeff;
    fn mul(self, rhs: Self) -> ExpPolyCoeff {
        self.try_mul(rhs).expect("arity mismatch")
    }
}

impl<'a> Neg for &'a ExpPolyCoeff {
    type Output = ExpPolyCoeff;
    fn neg(self) -> ExpPolyCoeff {
        self.scale(&-Rational::one())
    }
}

/// Union of term keys of `fs` (canonical order) and the coefficient matrix
/// whose row `r` holds the coordinates of `fs[r]`.
pub fn coordinate_matrix(fs: &[ExpPolyCoeff]) -> Result<(Vec<TermKey>, Matrix<Rational>)> {
    if let Some(first) = fs.first() {
        for f in fs {
            first.check_arity(f)?;
        }
    }
    let mut keys: Vec<TermKey> = fs
        .iter()
        .flat_map(|f| f.terms.keys().cloned())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    keys.shrink_to_fit();
    let index: BTreeMap<&TermKey, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut m = Matrix::zeros(fs.len(), keys.len());
    for (r, f) in fs.iter().enumerate() {
        for (k, c) in &f.terms {
            m[(r, index[k])] = c.clone();
        }
    }
    Ok((keys, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, i: usize) -> ExpPolyCoeff {
        ExpPolyCoeff::var(n, i)
    }

    fn freq(v: &[i64]) -> Frequency {
        Frequency(v.iter().map(|&a| q(a)).collect())
    }

    #[test]
    fn additive_inverse_is_empty() {
        let a = x(1, 0);
        assert!((&a + &-&a).is_empty());
    }

    #[test]
    fn cos_doubles() {
        let c = ExpPolyCoeff::cos(freq(&[1]));
        assert_eq!(&c + &c, c.scale(&q(2)));
    }

    #[test]
    fn constants_merge() {
        let half = ExpPolyCoeff::constant(1, qf(1, 2));
        let c2 = ExpPolyCoeff::cos(freq(&[2])).scale(&qf(1, 2));
        let s = &(&half + &c2) + &(&half - &c2);
        assert_eq!(s, ExpPolyCoeff::one(1));
    }

    #[test]
    fn product_to_sum() {
        let c = ExpPolyCoeff::cos(freq(&[1]));
        let expect = &ExpPolyCoeff::constant(1, qf(1, 2)) + &ExpPolyCoeff::cos(freq(&[2])).scale(&qf(1, 2));
        assert_eq!(&c * &c, expect);
        let e = ExpPolyCoeff::exp(freq(&[1]));
        assert_eq!(&e * &e, ExpPolyCoeff::exp(freq(&[2])));
        let s = ExpPolyCoeff::sin(freq(&[1]));
        assert_eq!(&(&s * &s) + &(&c * &c), ExpPolyCoeff::one(1));
    }

    #[test]
    fn sign_normalisation() {
        let s = ExpPolyCoeff::sin(freq(&[-1, 2]));
        assert_eq!(s, ExpPolyCoeff::sin(freq(&[1, -2])).scale(&q(-1)));
        let c = ExpPolyCoeff::cos(freq(&[0, -3]));
        assert_eq!(c, ExpPolyCoeff::cos(freq(&[0, 3])));
        assert!(ExpPolyCoeff::sin(freq(&[0, 0])).is_empty());
    }

    #[test]
    fn derivatives() {
        // d/dx (exp(2x) y) = 2 exp(2x) y
        let f = &ExpPolyCoeff::exp(freq(&[2, 0])) * &x(2, 1);
        assert_eq!(f.partial(0), f.scale(&q(2)));
        assert_eq!(ExpPolyCoeff::sin(freq(&[1])).partial(0), ExpPolyCoeff::cos(freq(&[1])));
        assert!(x(2, 0).pow(2).partial(1).is_empty());
        assert_eq!(
            ExpPolyCoeff::cos(freq(&[3])).partial(0),
            ExpPolyCoeff::sin(freq(&[3])).scale(&q(-3))
        );
    }

    #[test]
    fn origin_values() {
        let f = &(&x(2, 0).pow(2) * &x(2, 1)).scale(&qf(3, 4)) + &ExpPolyCoeff::exp(freq(&[2, 0]));
        assert_eq!(f.eval_origin(), q(1));
        let g = &ExpPolyCoeff::sin(freq(&[1, 0])) * &x(2, 1);
        assert_eq!(g.eval_origin(), q(0));
        assert_eq!(ExpPolyCoeff::constant(1, qf(5, 3)).eval_origin(), qf(5, 3));
    }

    #[test]
    fn coordinate_matrix_ranks() {
        let (_, m) = coordinate_matrix(&[x(1, 0), x(1, 0).scale(&q(2))]).unwrap();
        assert_eq!(m.rank(), 1);
        let (_, m) = coordinate_matrix(&[ExpPolyCoeff::sin(freq(&[1])), ExpPolyCoeff::cos(freq(&[1]))]).unwrap();
        assert_eq!(m.rank(), 2);
        let e = ExpPolyCoeff::exp(freq(&[1]));
        let (_, m) = coordinate_matrix(&[ExpPolyCoeff::one(1), e.clone(), &x(1, 0) * &e]).unwrap();
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn arity_mismatch() {
        assert!(matches!(
            x(1, 0).try_add(&x(2, 0)),
            Err(Error::ArityMismatch { left: 1, right: 2 })
        ));
        assert!(coordinate_matrix(&[x(1, 0), x(2, 1)]).is_err());
    }

    #[test]
    fn linear_substitution() {
        // swap variables: sin(x) y -> sin(y) x
        let f = &ExpPolyCoeff::sin(freq(&[1, 0])) * &x(2, 1);
        let g = f.substitute(&[x(2, 1), x(2, 0)]).unwrap();
        assert_eq!(g, &ExpPolyCoeff::sin(freq(&[0, 1])) * &x(2, 0));
        // exp(x) with x = y^2 is not representable
        let e = ExpPolyCoeff::exp(freq(&[1]));
        assert!(e.substitute(&[x(1, 0).pow(2)]).is_err());
    }

    #[test]
    fn partial_evaluation() {
        // exp(x) * s * cos(x) at x = 0 -> s
        let f = &(&ExpPolyCoeff::exp(freq(&[1, 0])) * &x(2, 1)) * &ExpPolyCoeff::cos(freq(&[1, 0]));
        assert_eq!(f.eval_vars_at_zero(&[true, false]).unwrap(), x(2, 1));
    }
}
