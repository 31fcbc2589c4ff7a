//! Vector fields `X = sum X^j d_j` over the coefficient ring.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::coeffring::{ExpPolyCoeff, TermKey};
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::Rational;

/// Ordered, distinct coordinate names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarContext {
    names: Vec<String>,
}

impl VarContext {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>> {
        if names.is_empty() {
            return Err(Error::InvalidArgument("empty variable list".into()));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            if !crate::text::is_valid_var_name(n) {
                return Err(Error::InvalidArgument(format!("invalid variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidArgument(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Arc::new(Self { names }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

pub type Ctx = Arc<VarContext>;

fn same_ctx(a: &Ctx, b: &Ctx) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A vector field with canonical coefficient components.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    ctx: Ctx,
    comps: Vec<ExpPolyCoeff>,
}

impl std::fmt::Debug for VectorField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", crate::text::format_field(self))
    }
}

/// Column key of the flattened coefficient vector of a field.
pub type FieldKey = (usize, TermKey);

impl VectorField {
    pub fn new(ctx: Ctx, comps: Vec<ExpPolyCoeff>) -> Self {
        assert_eq!(comps.len(), ctx.len(), "component count must match context");
        for c in &comps {
            assert_eq!(c.nvars(), ctx.len(), "coefficient arity must match context");
        }
        Self { ctx, comps }
    }

    pub fn zero(ctx: Ctx) -> Self {
        let n = ctx.len();
        Self::new(ctx, vec![ExpPolyCoeff::zero(n); n])
    }

    /// `f * d_i`.
    pub fn along(ctx: Ctx, i: usize, f: ExpPolyCoeff) -> Self {
        let mut v = Self::zero(ctx);
        v.comps[i] = f;
        v
    }

    /// The coordinate field `d_i`.
    pub fn coordinate(ctx: Ctx, i: usize) -> Self {
        let n = ctx.len();
        Self::along(ctx, i, ExpPolyCoeff::one(n))
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[ExpPolyCoeff] {
        &self.comps
    }

    pub fn component(&self, j: usize) -> &ExpPolyCoeff {
        &self.comps[j]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(ExpPolyCoeff::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            ctx: self.ctx.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("context mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            ctx: self.ctx.clone(),
            comps: self.comps.iter().map(|a| a.scale(c)).collect(),
        }
    }

    /// Multiplies every component by the function `f`.
    pub fn mul_fn(&self, f: &ExpPolyCoeff) -> Self {
        Self {
            ctx: self.ctx.clone(),
            comps: self.comps.iter().map(|a| a * f).collect(),
        }
    }

    /// `X(f) = sum_j X^j d_j f`.
    pub fn apply(&self, f: &ExpPolyCoeff) -> Result<ExpPolyCoeff> {
        if f.nvars() != self.dim() {
            return Err(Error::ContextMismatch);
        }
        let mut acc = ExpPolyCoeff::zero(self.dim());
        for (j, c) in self.comps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let d = f.partial(j);
            if !d.is_zero() {
                acc = &acc + &(c * &d);
            }
        }
        Ok(acc)
    }

    /// `[X, Y]^j = X(Y^j) - Y(X^j)`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let comps = (0..self.dim())
            .map(|j| {
                let a = self.apply(&other.comps[j])?;
                let b = other.apply(&self.comps[j])?;
                Ok(&a - &b)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            ctx: self.ctx.clone(),
            comps,
        })
    }

    pub fn eval_origin(&self) -> Vec<Rational> {
        self.comps.iter().map(ExpPolyCoeff::eval_origin).collect()
    }

    /// Flattened sparse coefficient vector keyed by `(component, term)`.
    pub fn to_sparse(&self) -> SparseVec<FieldKey, Rational> {
        let mut v = BTreeMap::new();
        for (j, c) in self.comps.iter().enumerate() {
            for (k, a) in c.terms() {
                if !a.is_zero() {
                    v.insert((j, k.clone()), a.clone());
                }
            }
        }
        v
    }

    pub fn from_sparse(ctx: Ctx, v: &SparseVec<FieldKey, Rational>) -> Self {
        let n = ctx.len();
        let mut buckets: Vec<Vec<(TermKey, Rational)>> = vec![Vec::new(); n];
        for ((j, k), a) in v {
            buckets[*j].push((k.clone(), a.clone()));
        }
        let comps = buckets.into_iter().map(|b| ExpPolyCoeff::from_terms(n, b)).collect();
        Self::new(ctx, comps)
    }

    /// Same components over another context of equal arity (renaming).
    pub fn with_ctx(&self, ctx: Ctx) -> Self {
        Self::new(ctx, self.comps.clone())
    }
}

/// `sum_i c_i X_i`.
pub fn combine(ctx: &Ctx, fields: &[VectorField], coeffs: &[Rational]) -> VectorField {
    let mut acc = VectorField::zero(ctx.clone());
    for (f, c) in fields.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&f.scale(c));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::Frequency;
    use crate::scalar::q;

    fn ctx2() -> Ctx {
        VarContext::new(&["x", "y"]).unwrap()
    }

    #[test]
    fn heisenberg_bracket() {
        let c = ctx2();
        let dy = VectorField::coordinate(c.clone(), 1);
        let ydx = VectorField::along(c.clone(), 0, ExpPolyCoeff::var(2, 1));
        assert_eq!(dy.bracket(&ydx).unwrap(), VectorField::coordinate(c.clone(), 0));
        let y2dx = VectorField::along(c.clone(), 0, ExpPolyCoeff::var(2, 1).pow(2));
        assert_eq!(dy.bracket(&y2dx).unwrap(), ydx.scale(&q(2)));
    }

    #[test]
    fn weight_field_bracket_gives_degree() {
        let c = VarContext::new(&["y", "z"]).unwrap();
        let euler = VectorField::new(
            c.clone(),
            vec![ExpPolyCoeff::var(2, 0), ExpPolyCoeff::var(2, 1).scale(&q(2))],
        );
        let ydz = VectorField::along(c.clone(), 1, ExpPolyCoeff::var(2, 0));
        assert_eq!(euler.bracket(&ydz).unwrap(), ydz.scale(&q(-1)));
    }

    #[test]
    fn origin_values() {
        let c = ctx2();
        let y2dx = VectorField::along(c.clone(), 0, ExpPolyCoeff::var(2, 1).pow(2));
        assert_eq!(y2dx.eval_origin(), vec![q(0), q(0)]);
        let f = VectorField::coordinate(c.clone(), 0)
            .add(&VectorField::along(c.clone(), 1, ExpPolyCoeff::sin(Frequency::unit(2, 0, q(1)))));
        assert_eq!(f.eval_origin(), vec![q(1), q(0)]);
        let g = VectorField::along(c, 0, &ExpPolyCoeff::one(2) + &ExpPolyCoeff::var(2, 0));
        assert_eq!(g.eval_origin(), vec![q(1), q(0)]);
    }

    #[test]
    fn derivation_examples() {
        let c = ctx2();
        let ydx = VectorField::along(c.clone(), 0, ExpPolyCoeff::var(2, 1));
        let x2 = ExpPolyCoeff::var(2, 0).pow(2);
        assert_eq!(
            ydx.apply(&x2).unwrap(),
            (&ExpPolyCoeff::var(2, 0) * &ExpPolyCoeff::var(2, 1)).scale(&q(2))
        );
        let dy = VectorField::coordinate(c.clone(), 1);
        assert_eq!(dy.apply(&ExpPolyCoeff::var(2, 1)).unwrap(), ExpPolyCoeff::one(2));
        let xdx = VectorField::along(c, 0, ExpPolyCoeff::var(2, 0));
        let e2 = ExpPolyCoeff::exp(Frequency::unit(2, 0, q(2)));
        assert_eq!(
            xdx.apply(&e2).unwrap(),
            (&ExpPolyCoeff::var(2, 0) * &e2).scale(&q(2))
        );
    }

    #[test]
    fn context_mismatch() {
        let a = VectorField::coordinate(ctx2(), 0);
        let b = VectorField::coordinate(VarContext::new(&["u", "v"]).unwrap(), 0);
        assert_eq!(a.bracket(&b), Err(Error::ContextMismatch));
    }
}
