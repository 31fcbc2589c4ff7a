//! Dilations with non-negative integer weights, the weight vector field,
//! degree decompositions, membership in the non-positive and negative parts,
//! enumeration of graded components and a random solvable-algebra generator.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coeffring::{ExpPolyCoeff, Frequency, TermKey};
use crate::error::{Error, Result};
use crate::liealg::LieAlgebraVF;
use crate::scalar::q;
use crate::vfield::{Ctx, VectorField};

/// `h_t(x) = (t^{w_1} x^1, ..., t^{w_n} x^n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dilation {
    ctx: Ctx,
    weights: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Mode {
    /// Every degree `< 0`.
    StrictNeg,
    /// Every degree `<= 0`.
    NonPos,
}

/// Degrees of each input field.
#[derive(Debug, Clone, Serialize)]
pub struct MembershipReport {
    pub mode: Mode,
    pub holds: bool,
    /// Sorted distinct degrees per field.
    pub degrees: Vec<Vec<i64>>,
}

impl MembershipReport {
    pub fn max_degree(&self, i: usize) -> Option<i64> {
        self.degrees[i].last().copied()
    }
}

/// Homogeneous parts keyed by degree; they sum to the decomposed field.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedDecomposition {
    pub parts: BTreeMap<i64, VectorField>,
}

impl GradedDecomposition {
    pub fn sum(&self, ctx: &Ctx) -> VectorField {
        self.parts
            .values()
            .fold(VectorField::zero(ctx.clone()), |acc, p| acc.add(p))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.parts.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.parts.keys().next_back().copied()
    }
}

/// Output of [`Dilation::enumerate_graded`]. When zero weights exist the
/// fields generate the component as a module over functions of the
/// zero-weight variables.
#[derive(Debug, Clone)]
pub struct GradedGenerators {
    pub fields: Vec<VectorField>,
    pub module_over_zero_weight: bool,
}

impl Dilation {
    pub fn new(ctx: Ctx, weights: Vec<u32>) -> Result<Self> {
        if weights.len() != ctx.len() {
            return Err(Error::InvalidArgument(format!(
                "{} weights for {} variables",
                weights.len(),
                ctx.len()
            )));
        }
        Ok(Self { ctx, weights })
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.weights[i] as i64
    }

    /// `w(h) = max w_i`.
    pub fn degree(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    pub fn zero_weight_vars(&self) -> Vec<usize> {
        (0..self.weights.len()).filter(|&i| self.weights[i] == 0).collect()
    }

    /// `sum w_i x^i d_i`.
    pub fn weight_field(&self) -> VectorField {
        let n = self.ctx.len();
        let comps = (0..n)
            .map(|i| ExpPolyCoeff::var(n, i).scale(&q(self.weight(i))))
            .collect();
        VectorField::new(self.ctx.clone(), comps)
    }

    /// Degree of the function `x^a E` where `E` is an exp/trig factor.
    pub fn key_degree(&self, k: &TermKey) -> Result<i64> {
        let touches = |f: &Frequency| f.support().any(|i| self.weights[i] > 0);
        if touches(&k.exp) || k.trig_freq.as_ref().is_some_and(touches) {
            return Err(Error::NotGradable(
                "exponential or trigonometric factor depends on a positive-weight variable".into(),
            ));
        }
        Ok(k.mono
            .iter()
            .zip(&self.weights)
            .map(|(&a, &w)| a as i64 * w as i64)
            .sum())
    }

    pub fn degree_decompose(&self, x: &VectorField) -> Result<GradedDecomposition> {
        if x.ctx() != &self.ctx {
            return Err(Error::ContextMismatch);
        }
        let n = self.ctx.len();
        let mut raw: BTreeMap<i64, Vec<Vec<(TermKey, crate::Rational)>>> = BTreeMap::new();
        for (i, c) in x.components().iter().enumerate() {
            for (k, a) in c.terms() {
                let d = self.key_degree(k)? - self.weight(i);
                raw.entry(d).or_insert_with(|| vec![Vec::new(); n])[i].push((k.clone(), a.clone()));
            }
        }
        let parts = raw
            .into_iter()
            .map(|(d, comps)| {
                let comps = comps.into_iter().map(|t| ExpPolyCoeff::from_terms(n, t)).collect();
                (d, VectorField::new(self.ctx.clone(), comps))
            })
            .collect();
        Ok(GradedDecomposition { parts })
    }

    /// Degree of a homogeneous field; `None` for zero, error if mixed.
    pub fn homogeneous_degree(&self, x: &VectorField) -> Result<Option<i64>> {
        let d = self.degree_decompose(x)?;
        match d.parts.len() {
            0 => Ok(None),
            1 => Ok(d.min_degree()),
            _ => Err(Error::NotGradable("field is not homogeneous".into())),
        }
    }

    pub fn membership(&self, fields: &[VectorField], mode: Mode) -> Result<MembershipReport> {
        let mut degrees = Vec::with_capacity(fields.len());
        for f in fields {
            let d = self.degree_decompose(f)?;
            degrees.push(d.parts.keys().copied().collect::<Vec<_>>());
        }
        let bound = match mode {
            Mode::StrictNeg => -1,
            Mode::NonPos => 0,
        };
        let holds = degrees.iter().all(|ds| ds.last().map_or(true, |&m| m <= bound));
        Ok(MembershipReport { mode, holds, degrees })
    }

    /// Exponent vectors over positive-weight variables with `<w, a> = target`.
    fn monomials_of_weight(&self, target: i64) -> Vec<Vec<u32>> {
        let n = self.weights.len();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(h: &Dilation, i: usize, left: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i == cur.len() {
                if left == 0 {
                    out.push(cur.clone());
                }
                return;
            }
            let w = h.weight(i);
            if w == 0 {
                rec(h, i + 1, left, cur, out);
                return;
            }
            let mut a = 0;
            while a as i64 * w <= left {
                cur[i] = a;
                rec(h, i + 1, left - a as i64 * w, cur, out);
                a += 1;
            }
            cur[i] = 0;
        }
        rec(self, 0, target, &mut cur, &mut out);
        out.sort_by_key(|m| std::cmp::Reverse(m.clone()));
        out
    }

    /// Monomial generators `x^a d_i` of `g^a(h)` for `a < 0`.
    pub fn enumerate_graded(&self, a: i64) -> Result<GradedGenerators> {
        let min = -(self.degree() as i64);
        if a < min {
            return Err(Error::DegreeOutOfRange { degree: a, min });
        }
        if a >= 0 {
            return Err(Error::InvalidArgument("only negative degrees are enumerable".into()));
        }
        let n = self.ctx.len();
        let mut fields = Vec::new();
        for i in 0..n {
            let target = a + self.weight(i);
            if self.weights[i] == 0 || target < 0 {
                continue;
            }
            for m in self.monomials_of_weight(target) {
                fields.push(VectorField::along(
                    self.ctx.clone(),
                    i,
                    ExpPolyCoeff::monomial(n, q(1), m),
                ));
            }
        }
        Ok(GradedGenerators {
            fields,
            module_over_zero_weight: self.weights.contains(&0),
        })
    }

    /// Basis of `g^{<0}(h)` (module generators when zero weights exist).
    pub fn negative_part(&self) -> Vec<VectorField> {
        let w = self.degree() as i64;
        (1..=w)
            .flat_map(|k| self.enumerate_graded(-k).map(|g| g.fields).unwrap_or_default())
            .collect()
    }
}

/// Zero-weight coefficient attached to a generated field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroWeightCoeff {
    One,
    Exp,
    Cos,
    Sin,
}

#[derive(Debug, Clone)]
pub struct RandomParams {
    /// Each optional generator is kept with probability `num/den`.
    pub density: (u32, u32),
    /// Include diagonal fields `x^i d_i` (`w_i > 0`).
    pub diagonal: bool,
    /// Coefficients drawn for generators when zero-weight variables exist.
    pub zero_weight_coeffs: Vec<ZeroWeightCoeff>,
    pub cap: usize,
}

impl Default for RandomParams {
    fn default() -> Self {
        Self {
            density: (1, 2),
            diagonal: true,
            zero_weight_coeffs: vec![
                ZeroWeightCoeff::One,
                ZeroWeightCoeff::Exp,
                ZeroWeightCoeff::Cos,
                ZeroWeightCoeff::Sin,
            ],
            cap: crate::DEFAULT_MAX_DIM,
        }
    }
}

/// A random solvable transitive algebra `D + N` graded by `h`.
///
/// `D` is a random set of diagonal fields together with `d_x` for each
/// zero-weight `x`; `N` is generated by every `d_i` (`w_i > 0`) and a random
/// subset of the negative monomial generators, each multiplied by a random
/// zero-weight coefficient. The result lies in `g^{<=0}(h)` with derived
/// algebra in `g^{<0}(h)`.
pub fn random_solvable(h: &Dilation, seed: u64, params: &RandomParams) -> Result<LieAlgebraVF> {
    if h.degree() == 0 {
        return Err(Error::InvalidArgument("at least one weight must be positive".into()));
    }
    let (num, den) = params.density;
    if den == 0 || num > den {
        return Err(Error::InvalidArgument("density must lie in [0, 1]".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ctx = h.ctx().clone();
    let n = ctx.len();
    let zero = h.zero_weight_vars();
    let mut gens = Vec::new();
    if params.diagonal {
        for i in 0..n {
            if h.weights[i] > 0 && rng.gen_ratio(num, den) {
                gens.push(VectorField::along(ctx.clone(), i, ExpPolyCoeff::var(n, i)));
            }
        }
    }
    for &x in &zero {
        gens.push(VectorField::coordinate(ctx.clone(), x));
    }
    for i in 0..n {
        if h.weights[i] > 0 {
            gens.push(VectorField::coordinate(ctx.clone(), i));
        }
    }
    for f in h.negative_part() {
        if gens.contains(&f) || !rng.gen_ratio(num, den) {
            continue;
        }
        let coeff = match (zero.choose(&mut rng), params.zero_weight_coeffs.choose(&mut rng)) {
            (Some(&x), Some(kind)) => {
                let unit = Frequency::unit(n, x, q(1));
                match kind {
                    ZeroWeightCoeff::One => None,
                    ZeroWeightCoeff::Exp => Some(ExpPolyCoeff::exp(unit)),
                    ZeroWeightCoeff::Cos => Some(ExpPolyCoeff::cos(unit)),
                    ZeroWeightCoeff::Sin => Some(ExpPolyCoeff::sin(unit)),
                }
            }
            _ => None,
        };
        gens.push(match coeff {
            Some(c) => f.mul_fn(&c),
            None => f,
        });
    }
    LieAlgebraVF::closure(ctx, &gens, params.cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;
    use crate::text::{format_field, parse_field, parse_fields};
    use crate::vfield::VarContext;

    fn dil(vars: &[&str], w: &[u32]) -> Dilation {
        Dilation::new(VarContext::new(vars).unwrap(), w.to_vec()).unwrap()
    }

    fn names(fs: &[VectorField]) -> BTreeSet<String> {
        fs.iter().map(format_field).collect()
    }

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn weight_fields() {
        let h = dil(&["y", "z"], &[1, 2]);
        assert_eq!(format_field(&h.weight_field()), "y*d_y + 2*z*d_z");
        let h = dil(&["x", "y", "z", "u"], &[0, 1, 2, 3]);
        assert_eq!(format_field(&h.weight_field()), "y*d_y + 2*z*d_z + 3*u*d_u");
        assert!(dil(&["x", "y"], &[0, 0]).weight_field().is_zero());
    }

    #[test]
    fn decompositions() {
        let h = dil(&["y", "z"], &[1, 2]);
        let f = parse_field("y*d_z", h.ctx()).unwrap();
        assert_eq!(h.homogeneous_degree(&f).unwrap(), Some(-1));
        let h4 = dil(&["x", "y", "z", "u"], &[0, 1, 2, 3]);
        let e = parse_field("exp(2x)*d_u", h4.ctx()).unwrap();
        assert_eq!(h4.homogeneous_degree(&e).unwrap(), Some(-3));
        let h2 = dil(&["x", "y"], &[0, 1]);
        let bad = parse_field("exp(y)*d_y", h2.ctx()).unwrap();
        assert!(matches!(h2.degree_decompose(&bad), Err(Error::NotGradable(_))));
        let mixed = parse_field("d_z + y*z*d_z + y*d_y", h.ctx()).unwrap();
        let d = h.degree_decompose(&mixed).unwrap();
        assert_eq!(d.parts.keys().copied().collect::<Vec<_>>(), vec![-2, 0, 1]);
        assert_eq!(d.sum(h.ctx()), mixed);
        let euler = h.weight_field();
        for (a, p) in &d.parts {
            assert_eq!(euler.bracket(p).unwrap(), p.scale(&q(*a)));
        }
    }

    #[test]
    fn membership_examples() {
        let h = dil(&["x", "y"], &[3, 1]);
        let l = parse_fields(h.ctx(), &["d_x", "d_y", "x*d_x", "y*d_y", "y^2*d_x", "y*d_x"]).unwrap();
        let r = h.membership(&l, Mode::NonPos).unwrap();
        assert!(r.holds);
        let maxes: Vec<i64> = (0..6).map(|i| r.max_degree(i).unwrap()).collect();
        assert_eq!(maxes, vec![-3, -1, 0, 0, -1, -2]);
        assert!(!h.membership(&l, Mode::StrictNeg).unwrap().holds);
        let h2 = dil(&["y", "z"], &[1, 2]);
        let n = parse_fields(h2.ctx(), &["d_y", "d_z", "y*d_z"]).unwrap();
        assert!(h2.membership(&n, Mode::StrictNeg).unwrap().holds);
    }

    #[test]
    fn enumeration() {
        let h = dil(&["y", "z"], &[1, 2]);
        assert_eq!(names(&h.enumerate_graded(-1).unwrap().fields), set(&["d_y", "y*d_z"]));
        assert_eq!(names(&h.enumerate_graded(-2).unwrap().fields), set(&["d_z"]));
        assert_eq!(
            h.enumerate_graded(-3).unwrap_err(),
            Error::DegreeOutOfRange { degree: -3, min: -2 }
        );
        let h4 = dil(&["x", "y", "z", "u"], &[0, 1, 2, 3]);
        let g3 = h4.enumerate_graded(-3).unwrap();
        assert!(g3.module_over_zero_weight);
        assert_eq!(names(&g3.fields), set(&["d_u"]));
        assert_eq!(
            names(&h4.enumerate_graded(-1).unwrap().fields),
            set(&["z*d_u", "y^2*d_u", "y*d_z", "d_y"])
        );
    }

    #[test]
    fn negative_part_is_nilpotent_with_bounded_height() {
        for w in [vec![1, 2], vec![1, 1, 2], vec![2, 3], vec![1, 3]] {
            let vars: Vec<String> = (0..w.len()).map(|i| format!("x{i}")).collect();
            let h = Dilation::new(VarContext::new(&vars).unwrap(), w.clone()).unwrap();
            let gens = h.negative_part();
            let l = LieAlgebraVF::closure(h.ctx().clone(), &gens, 64).unwrap();
            assert_eq!(l.dim(), gens.len());
            let lcs = l.lower_central_series();
            assert!(lcs.height.unwrap() <= h.degree() as usize);
        }
    }

    #[test]
    fn random_solvable_examples() {
        let h = dil(&["y", "z"], &[1, 2]);
        let full = RandomParams {
            density: (1, 1),
            ..RandomParams::default()
        };
        let l = random_solvable(&h, 7, &full).unwrap();
        assert_eq!(
            names(l.basis()),
            set(&["y*d_y", "z*d_z", "d_y", "d_z", "y*d_z"])
        );
        assert!(l.is_solvable() && l.is_transitive_at_origin());
        let nil = RandomParams {
            density: (1, 1),
            diagonal: false,
            ..RandomParams::default()
        };
        let n = random_solvable(&h, 7, &nil).unwrap();
        assert!(n.is_nilpotent());
        assert_eq!(names(n.basis()), names(&h.negative_part()));
        let a = random_solvable(&h, 42, &RandomParams::default()).unwrap();
        let b = random_solvable(&h, 42, &RandomParams::default()).unwrap();
        assert_eq!(a.basis(), b.basis());
    }

    #[test]
    fn random_solvable_ground_truth() {
        let h = dil(&["x", "y", "z"], &[0, 1, 2]);
        for seed in 0..20 {
            let l = random_solvable(&h, seed, &RandomParams::default()).unwrap();
            assert!(l.is_solvable());
            assert!(l.is_transitive_at_origin());
            assert!(h.membership(l.basis(), Mode::NonPos).unwrap().holds);
            let derived = l.derived_series();
            let d1 = l.fields_of(&derived.chain[1]);
            assert!(h.membership(&d1, Mode::StrictNeg).unwrap().holds);
        }
    }
}
