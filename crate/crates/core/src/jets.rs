//! Truncated multivariate power series at the origin.
//!
//! A [`JetFunction`] of order `N` stores the Taylor coefficients of total
//! degree `<= N`. Differentiation consumes one order, so derived quantities
//! carry their own (smaller) order instead of being padded.

use std::collections::BTreeMap;

use num_traits::One;

use crate::coeffring::{ExpPolyCoeff, Frequency, Trig};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{factorial, Field};
use crate::vfield::VectorField;
use crate::Rational;

fn deg(m: &[u32]) -> u32 {
    m.iter().sum()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct JetFunction<T> {
    nvars: usize,
    order: u32,
    coeffs: BTreeMap<Vec<u32>, T>,
}

impl<T: std::fmt::Debug> std::fmt::Debug for JetFunction<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Jet[N={}]{{", self.order)?;
        for (i, (m, c)) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m:?}: {c:?}")?;
        }
        write!(f, "}}")
    }
}

impl<T: Field> JetFunction<T> {
    pub fn zero(nvars: usize, order: u32) -> Self {
        Self {
            nvars,
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, order: u32, c: T) -> Self {
        let mut f = Self::zero(nvars, order);
        f.add_term(vec![0; nvars], c);
        f
    }

    pub fn var(nvars: usize, i: usize, order: u32) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        let mut f = Self::zero(nvars, order);
        f.add_term(m, T::one());
        f
    }

    /// Builds from raw coefficients, dropping zeros and terms above `order`.
    pub fn from_coeffs(nvars: usize, order: u32, raw: impl IntoIterator<Item = (Vec<u32>, T)>) -> Self {
        let mut f = Self::zero(nvars, order);
        for (m, c) in raw {
            assert_eq!(m.len(), nvars);
            f.add_term(m, c);
        }
        f
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &BTreeMap<Vec<u32>, T> {
        &self.coeffs
    }

    pub fn coeff(&self, m: &[u32]) -> T {
        self.coeffs.get(m).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Value at the origin.
    pub fn constant_term(&self) -> T {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn add_term(&mut self, m: Vec<u32>, c: T) {
        if c.is_zero() || deg(&m) > self.order {
            return;
        }
        match self.coeffs.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.coeffs.remove(&m);
                }
            }
            None => {
                self.coeffs.insert(m, c);
            }
        }
    }

    /// Drops terms above `order` (only lowers the order).
    pub fn truncate(&self, order: u32) -> Self {
        let order = order.min(self.order);
        Self {
            nvars: self.nvars,
            order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(m, _)| deg(m) <= order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn with_order(&self, order: u32) -> Self {
        let mut f = self.truncate(order);
        f.order = order;
        f
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut r = self.truncate(other.order);
        for (m, c) in &other.coeffs {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.order);
        }
        Self {
            nvars: self.nvars,
            order: self.order,
            coeffs: self.coeffs.iter().map(|(m, v)| (m.clone(), v.clone() * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let order = self.order.min(other.order);
        let mut r = Self::zero(self.nvars, order);
        let b: Vec<(&Vec<u32>, u32, &T)> = other.coeffs.iter().map(|(m, c)| (m, deg(m), c)).collect();
        for (ma, ca) in &self.coeffs {
            let da = deg(ma);
            if da > order {
                continue;
            }
            for (mb, db, cb) in &b {
                if da + db > order {
                    continue;
                }
                let m: Vec<u32> = ma.iter().zip(mb.iter()).map(|(x, y)| x + y).collect();
                r.add_term(m, ca.clone() * *cb);
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(self.nvars, self.order, T::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `d/dx_i`; the result has order `N - 1`.
    pub fn partial(&self, i: usize) -> Self {
        let order = self.order.saturating_sub(1);
        let mut r = Self::zero(self.nvars, order);
        for (m, c) in &self.coeffs {
            if m[i] > 0 {
                let mut m2 = m.clone();
                m2[i] -= 1;
                r.add_term(m2, c.clone() * T::from_u32(m[i]).unwrap());
            }
        }
        r
    }

    /// Lowest total degree of a nonzero term.
    pub fn valuation(&self) -> Option<u32> {
        self.coeffs.keys().map(|m| deg(m)).min()
    }

    /// `f(m(x))`, truncated at the smaller order.
    pub fn compose(&self, map: &JetMap<T>) -> Self {
        assert_eq!(map.comps.len(), self.nvars);
        let nv = map.nvars();
        let order = self.order.min(map.order());
        if map.is_identity() {
            return self.truncate(order);
        }
        let mut powers: Vec<Vec<Self>> = map
            .comps
            .iter()
            .map(|c| vec![Self::constant(nv, order, T::one()), c.truncate(order)])
            .collect();
        let mut r = Self::zero(nv, order);
        for (m, c) in &self.coeffs {
            if deg(m) > order {
                continue;
            }
            let mut term = Self::constant(nv, order, c.clone());
            for (j, &a) in m.iter().enumerate() {
                while powers[j].len() <= a as usize {
                    let next = powers[j].last().unwrap().mul(&map.comps[j]);
                    powers[j].push(next);
                }
                if a > 0 {
                    term = term.mul(&powers[j][a as usize]);
                }
            }
            r = r.add(&term);
        }
        r
    }

    /// Terms of the given total degree.
    pub fn homogeneous_part(&self, d: u32) -> Vec<(&Vec<u32>, &T)> {
        self.coeffs.iter().filter(|(m, _)| deg(m) == d).collect()
    }
}

/// Exact Taylor jet of a ring element at the origin.
pub fn truncate(f: &ExpPolyCoeff, order: u32) -> JetFunction<Rational> {
    let n = f.nvars();
    let linear = |fr: &Frequency| {
        JetFunction::from_coeffs(
            n,
            order,
            fr.0.iter().enumerate().map(|(i, c)| {
                let mut m = vec![0; n];
                m[i] = 1;
                (m, c.clone())
            }),
        )
    };
    // sum_k sel(k) * L^k / k!
    let series = |l: &JetFunction<Rational>, sel: &dyn Fn(u32) -> Option<Rational>, top: u32| {
        let mut acc = JetFunction::zero(n, order);
        let mut p = JetFunction::constant(n, order, Rational::one());
        for k in 0..=top {
            if let Some(s) = sel(k) {
                acc = acc.add(&p.scale(&(s / factorial(k))));
            }
            p = p.mul(l);
        }
        acc
    };
    let mut out = JetFunction::zero(n, order);
    for (k, c) in f.terms() {
        let dm = deg(&k.mono);
        if dm > order {
            continue;
        }
        let top = order - dm;
        let mut t = JetFunction::from_coeffs(n, order, [(k.mono.clone(), c.clone())]);
        if !k.exp.is_zero() {
            t = t.mul(&series(&linear(&k.exp), &|_| Some(Rational::one()), top));
        }
        if let Some(fr) = &k.trig_freq {
            let l = linear(fr);
            let sign = |j: u32| if j % 2 == 0 { Rational::one() } else { -Rational::one() };
            let s = match k.trig {
                Trig::Cos => series(&l, &|j| (j % 2 == 0).then(|| sign(j / 2)), top),
                Trig::Sin => series(&l, &|j| (j % 2 == 1).then(|| sign(j / 2)), top),
                Trig::None => unreachable!(),
            };
            t = t.mul(&s);
        }
        out = out.add(&t);
    }
    out
}

/// Origin-preserving tuple of jets, read as a map `x -> (m_1(x), ..., m_k(x))`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JetMap<T> {
    comps: Vec<JetFunction<T>>,
}

impl<T: Field> JetMap<T> {
    pub fn new(comps: Vec<JetFunction<T>>) -> Result<Self> {
        let n = comps.first().map_or(0, JetFunction::nvars);
        if comps.iter().any(|c| c.nvars() != n) {
            return Err(Error::InvalidArgument("jet map components disagree on arity".into()));
        }
        if comps.iter().any(|c| !c.constant_term().is_zero()) {
            return Err(Error::InvalidArgument("jet map must preserve the origin".into()));
        }
        Ok(Self { comps })
    }

    pub fn identity(n: usize, order: u32) -> Self {
        Self {
            comps: (0..n).map(|i| JetFunction::var(n, i, order)).collect(),
        }
    }

    /// `x -> A x`.
    pub fn linear(a: &Matrix<T>, order: u32) -> Self {
        let n = a.cols();
        Self {
            comps: (0..a.rows())
                .map(|i| {
                    JetFunction::from_coeffs(
                        n,
                        order,
                        (0..n).map(|j| {
                            let mut m = vec![0; n];
                            m[j] = 1;
                            (m, a[(i, j)].clone())
                        }),
                    )
                })
                .collect(),
        }
    }

    pub fn components(&self) -> &[JetFunction<T>] {
        &self.comps
    }

    pub fn nvars(&self) -> usize {
        self.comps.first().map_or(0, JetFunction::nvars)
    }

    pub fn order(&self) -> u32 {
        self.comps.iter().map(JetFunction::order).min().unwrap_or(0)
    }

    pub fn truncate(&self, order: u32) -> Self {
        Self {
            comps: self.comps.iter().map(|c| c.truncate(order)).collect(),
        }
    }

    /// Jacobian at the origin.
    pub fn linear_part(&self) -> Matrix<T> {
        let n = self.nvars();
        let mut a = Matrix::zeros(self.comps.len(), n);
        for (i, c) in self.comps.iter().enumerate() {
            for j in 0..n {
                let mut m = vec![0; n];
                m[j] = 1;
                a[(i, j)] = c.coeff(&m);
            }
        }
        a
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Self {
        Self {
            comps: self.comps.iter().map(|c| c.compose(inner)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        let n = self.nvars();
        self.comps.len() == n
            && self
                .comps
                .iter()
                .enumerate()
                .all(|(i, c)| c.coeffs.len() == 1 && c.coeff(&unit(n, i)).is_one())
    }

    /// Inverse map to the same order, by fixed-point iteration on
    /// `g = A^{-1}(y - h(g))` where `m = A x + h(x)`.
    pub fn invert(&self) -> Result<Self> {
        let n = self.nvars();
        if self.comps.len() != n {
            return Err(Error::SingularJetMap);
        }
        let order = self.order();
        let a = self.linear_part();
        let ainv = a.inverse().ok_or(Error::SingularJetMap)?;
        let lin = Self::linear(&a, order);
        let h: Vec<JetFunction<T>> = self.comps.iter().zip(&lin.comps).map(|(m, l)| m.sub(l)).collect();
        let h = Self { comps: h };
        let mut g = Self::linear(&ainv, order);
        for _ in 1..order {
            let hg = h.compose(&g);
            let rhs: Vec<JetFunction<T>> = (0..n)
                .map(|i| JetFunction::var(n, i, order).sub(&hg.comps[i]))
                .collect();
            g = Self {
                comps: (0..n)
                    .map(|i| {
                        let mut acc = JetFunction::zero(n, order);
                        for (j, r) in rhs.iter().enumerate() {
                            acc = acc.add(&r.scale(&ainv[(i, j)]));
                        }
                        acc
                    })
                    .collect(),
            };
        }
        Ok(g)
    }
}

fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut m = vec![0; n];
    m[i] = 1;
    m
}

/// Vector field with jet coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JetField<T> {
    comps: Vec<JetFunction<T>>,
}

impl<T: Field> JetField<T> {
    pub fn new(comps: Vec<JetFunction<T>>) -> Self {
        Self { comps }
    }

    pub fn coordinate(n: usize, i: usize, order: u32) -> Self {
        Self {
            comps: (0..n)
                .map(|j| {
                    if i == j {
                        JetFunction::constant(n, order, T::one())
                    } else {
                        JetFunction::zero(n, order)
                    }
                })
                .collect(),
        }
    }

    pub fn components(&self) -> &[JetFunction<T>] {
        &self.comps
    }

    pub fn component(&self, i: usize) -> &JetFunction<T> {
        &self.comps[i]
    }

    pub fn order(&self) -> u32 {
        self.comps.iter().map(JetFunction::order).min().unwrap_or(0)
    }

    pub fn truncate(&self, order: u32) -> Self {
        Self {
            comps: self.comps.iter().map(|c| c.truncate(order)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            comps: self.comps.iter().map(|a| a.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(JetFunction::is_zero)
    }

    /// `X(f)`, order `min(N_X, N_f - 1)`.
    pub fn apply(&self, f: &JetFunction<T>) -> JetFunction<T> {
        let order = self.order().min(f.order().saturating_sub(1));
        let mut acc = JetFunction::zero(f.nvars(), order);
        for (i, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&c.mul(&f.partial(i)));
        }
        acc
    }

    /// `[X, Y]^j = X(Y^j) - Y(X^j)`, one order lower.
    pub fn bracket(&self, other: &Self) -> Self {
        Self {
            comps: (0..self.comps.len())
                .map(|j| self.apply(&other.comps[j]).sub(&other.apply(&self.comps[j])))
                .collect(),
        }
    }

    /// Components of `X` composed with a map: `X^j ∘ m`.
    pub fn compose(&self, m: &JetMap<T>) -> Self {
        Self {
            comps: self.comps.iter().map(|c| c.compose(m)).collect(),
        }
    }
}

pub fn truncate_field(x: &VectorField, order: u32) -> JetField<Rational> {
    JetField::new(x.components().iter().map(|c| truncate(c, order)).collect())
}

/// `m_* X = (Dm · X) ∘ m^{-1}`, valid to order `N - 1`.
pub fn pushforward<T: Field>(x: &JetField<T>, m: &JetMap<T>) -> Result<JetField<T>> {
    let inv = m.invert()?;
    pushforward_with_inverse(x, m, &inv)
}

pub fn pushforward_with_inverse<T: Field>(x: &JetField<T>, m: &JetMap<T>, inv: &JetMap<T>) -> Result<JetField<T>> {
    let dm_x: Vec<JetFunction<T>> = m.components().iter().map(|mi| x.apply(mi)).collect();
    Ok(JetField::new(dm_x.iter().map(|c| c.compose(inv)).collect()))
}

/// Coefficients of `t^k` in `exp(tY) f = sum t^k / k! Y^k f`, `k = 0..=m`.
/// Each application of `Y` consumes one order.
pub fn lie_series(y: &JetField<Rational>, f: &JetFunction<Rational>, m: u32) -> Vec<JetFunction<Rational>> {
    let mut out = vec![f.clone()];
    let mut cur = f.clone();
    for k in 1..=m {
        cur = y.apply(&cur);
        out.push(cur.scale(&(Rational::one() / factorial(k))));
    }
    out
}

/// A 1-form `sum a_i dx^i` with jet coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JetForm<T> {
    coeffs: Vec<JetFunction<T>>,
}

impl<T: Field> JetForm<T> {
    pub fn new(coeffs: Vec<JetFunction<T>>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[JetFunction<T>] {
        &self.coeffs
    }

    pub fn order(&self) -> u32 {
        self.coeffs.iter().map(JetFunction::order).min().unwrap_or(0)
    }

    fn closed_on(&self, active: &[bool]) -> std::result::Result<(), (usize, usize)> {
        let n = self.coeffs.len();
        for i in 0..n {
            for j in i + 1..n {
                if active[i] && active[j] && self.coeffs[j].partial(i) != self.coeffs[i].partial(j) {
                    return Err((i, j));
                }
            }
        }
        Ok(())
    }

    /// `d omega = 0` to order `N - 1`.
    pub fn is_closed(&self) -> bool {
        self.closed_on(&vec![true; self.coeffs.len()]).is_ok()
    }

    /// The unique `y` with `dy = omega`, `y(0) = 0`.
    pub fn integrate_closed(&self) -> Result<JetFunction<T>> {
        self.integrate_leafwise(&vec![true; self.coeffs.len()])
    }

    /// Integrates along the `active` variables only, treating the others as
    /// parameters: the result `y` satisfies `d_t y = omega_t` for active `t`
    /// and vanishes where every active variable is zero.
    pub fn integrate_leafwise(&self, active: &[bool]) -> Result<JetFunction<T>> {
        let n = self.coeffs.len();
        if let Err((i, j)) = self.closed_on(active) {
            return Err(Error::NotClosedForm(format!("mixed partials differ in directions {i} and {j}")));
        }
        let mut y = JetFunction::zero(n, self.order() + 1);
        for (r, a) in self.coeffs.iter().enumerate() {
            if !active[r] {
                continue;
            }
            for (m, c) in a.coeffs() {
                let dt: u32 = m.iter().zip(active).filter(|(_, &on)| on).map(|(e, _)| *e).sum();
                let mut m2 = m.clone();
                m2[r] += 1;
                y.add_term(m2, c.clone() / T::from_u32(dt + 1).unwrap());
            }
        }
        Ok(y)
    }

    /// `df` as a form.
    pub fn exact(f: &JetFunction<T>) -> Self {
        Self {
            coeffs: (0..f.nvars()).map(|i| f.partial(i)).collect(),
        }
    }
}

/// Inverse of a square jet matrix with invertible constant part, via
/// `T^{-1} = sum_k (-T0^{-1} R)^k T0^{-1}`.
pub fn invert_jet_matrix<T: Field>(rows: &[Vec<JetFunction<T>>]) -> Result<Vec<Vec<JetFunction<T>>>> {
    let k = rows.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    let nv = rows[0][0].nvars();
    let order = rows.iter().flatten().map(JetFunction::order).min().unwrap();
    let mut t0 = Matrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            t0[(i, j)] = rows[i][j].constant_term();
        }
    }
    let t0inv = t0.inverse().ok_or(Error::SingularJetMap)?;
    let constant = |m: &Matrix<T>| -> Vec<Vec<JetFunction<T>>> {
        (0..k)
            .map(|i| (0..k).map(|j| JetFunction::constant(nv, order, m[(i, j)].clone())).collect())
            .collect()
    };
    let matmul = |a: &[Vec<JetFunction<T>>], b: &[Vec<JetFunction<T>>]| -> Vec<Vec<JetFunction<T>>> {
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        let mut acc = JetFunction::zero(nv, order);
                        for l in 0..k {
                            if !a[i][l].is_zero() && !b[l][j].is_zero() {
                                acc = acc.add(&a[i][l].mul(&b[l][j]));
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    };
    let ti = constant(&t0inv);
    // E = -T0^{-1} R where R = T - T0
    let r: Vec<Vec<JetFunction<T>>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| rows[i][j].sub(&JetFunction::constant(nv, order, t0[(i, j)].clone())).with_order(order))
                .collect()
        })
        .collect();
    let e: Vec<Vec<JetFunction<T>>> = matmul(&ti, &r)
        .into_iter()
        .map(|row| row.into_iter().map(|x| x.neg()).collect())
        .collect();
    let mut acc = ti.clone();
    let mut p = ti;
    for _ in 0..order {
        p = matmul(&e, &p);
        if p.iter().flatten().all(JetFunction::is_zero) {
            break;
        }
        for i in 0..k {
            for j in 0..k {
                acc[i][j] = acc[i][j].add(&p[i][j]);
            }
        }
    }
    Ok(acc)
}

/// Polynomial in the ring with the jet's coefficients.
pub fn to_ring(f: &JetFunction<Rational>) -> ExpPolyCoeff {
    let n = f.nvars();
    let mut acc = ExpPolyCoeff::zero(n);
    for (m, c) in f.coeffs() {
        acc = &acc + &ExpPolyCoeff::monomial(n, c.clone(), m.clone());
    }
    acc
}

/// `(alpha -> "p/q")` listing in canonical order.
pub fn jet_to_json(f: &JetFunction<Rational>) -> Vec<(Vec<u32>, String)> {
    f.coeffs().iter().map(|(m, c)| (m.clone(), c.to_string())).collect()
}
