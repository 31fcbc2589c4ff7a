//! Witnesses that normalized coefficients lie in the algebra generated by
//! the coordinates and finitely many exponentials (real form: `exp`, `cos`,
//! `sin` with rational frequencies).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::coeffring::{ExpPolyCoeff, Frequency, TermKey, Trig};
use crate::error::{Error, Result};
use crate::liealg::LieAlgebraVF;
use crate::linalg::{SparseEchelon, SparseVec};
use crate::pipeline::{normalize, transform_exact, NormalizationCertificate, NormalizeOptions};
use crate::text::{format_coeff, format_field};
use crate::upoly::{complex_pair, factor, Factorization};
use crate::{QPoly, Rational};

/// `sum_s c_s d^s f / dx_i^s = 0` for every `f` in the family, with
/// `c_order = 1`.
#[derive(Debug, Clone)]
pub struct Recurrence {
    pub direction: usize,
    pub family: Vec<ExpPolyCoeff>,
    pub coefficients: Vec<Rational>,
}

impl Recurrence {
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn characteristic(&self) -> QPoly {
        QPoly::new(self.coefficients.clone())
    }

    /// Substitutes the family back into the recurrence.
    pub fn holds(&self) -> bool {
        self.family.iter().all(|f| {
            let mut acc = ExpPolyCoeff::zero(f.nvars());
            let mut d = f.clone();
            for c in &self.coefficients {
                acc = &acc + &d.scale(c);
                d = d.partial(self.direction);
            }
            acc.is_zero()
        })
    }
}

fn family_vector(fs: &[ExpPolyCoeff]) -> SparseVec<(usize, TermKey), Rational> {
    let mut v = BTreeMap::new();
    for (a, f) in fs.iter().enumerate() {
        for (k, c) in f.terms() {
            v.insert((a, k.clone()), c.clone());
        }
    }
    v
}

/// Stacks `d^s fs` for `s = 0, 1, ...` until the next derivative is a
/// combination of the previous ones; that first dependency is the minimal
/// recurrence.
pub fn iterated_derivative_recurrence(fs: &[ExpPolyCoeff], i: usize, bound: usize) -> Result<Recurrence> {
    if fs.is_empty() {
        return Err(Error::InvalidArgument("empty coefficient family".into()));
    }
    let mut ech = SparseEchelon::new();
    let mut cur = fs.to_vec();
    for s in 0..=bound {
        let v = family_vector(&cur);
        if let Some(coords) = ech.express(&v) {
            let mut coefficients: Vec<Rational> = coords.into_iter().map(|c| -c).collect();
            coefficients.push(Rational::one());
            debug_assert_eq!(coefficients.len(), s + 1);
            return Ok(Recurrence {
                direction: i,
                family: fs.to_vec(),
                coefficients,
            });
        }
        ech.insert(&v);
        cur = cur.iter().map(|f| f.partial(i)).collect();
    }
    Err(Error::BoundExceeded(bound))
}

/// A safe search bound: the derivative span in direction `i` cannot exceed
/// the number of (key, power of `x_i`) slots the family touches.
pub fn default_bound(fs: &[ExpPolyCoeff], i: usize, dim: usize) -> usize {
    let keys: BTreeSet<TermKey> = fs
        .iter()
        .flat_map(|f| f.terms().map(|(k, _)| {
            let mut k = k.clone();
            k.mono[i] = 0;
            k
        }))
        .collect();
    let slots: usize = fs
        .iter()
        .flat_map(|f| f.terms().map(|(k, _)| k.mono[i] as usize))
        .max()
        .map_or(0, |d| (d + 1) * keys.len() * 2);
    slots.max(dim) + 1
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RootEntry {
    pub lambda: String,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PairEntry {
    pub re: String,
    pub im: String,
    pub multiplicity: usize,
}

/// Roots of the characteristic polynomial of a recurrence.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SpectrumReport {
    pub direction: usize,
    /// Ascending coefficients of the characteristic polynomial.
    pub characteristic: Vec<String>,
    pub roots: Vec<RootEntry>,
    pub pairs: Vec<PairEntry>,
    /// Ascending coefficients of factors without a ring realization.
    pub unresolved: Vec<Vec<String>>,
    #[serde(skip)]
    pub factorization: Factorization,
    #[serde(skip)]
    pub exponents: Vec<Rational>,
    #[serde(skip)]
    pub frequencies: Vec<Rational>,
}

fn poly_strings(p: &QPoly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

pub fn spectrum(rec: &Recurrence) -> SpectrumReport {
    let p = rec.characteristic();
    let f = factor(&p);
    let mut roots = Vec::new();
    let mut pairs = Vec::new();
    let mut unresolved: Vec<Vec<String>> = f.unresolved.iter().map(poly_strings).collect();
    let mut exponents = Vec::new();
    let mut frequencies = Vec::new();
    for (r, m) in &f.roots {
        roots.push(RootEntry {
            lambda: r.to_string(),
            multiplicity: *m,
        });
        if !r.is_zero() {
            exponents.push(r.clone());
        }
    }
    for (g, m) in &f.quadratics {
        match complex_pair(g) {
            Some((a, b)) => {
                pairs.push(PairEntry {
                    re: a.to_string(),
                    im: b.to_string(),
                    multiplicity: *m,
                });
                if !a.is_zero() && !exponents.contains(&a) {
                    exponents.push(a);
                }
                if !frequencies.contains(&b) {
                    frequencies.push(b);
                }
            }
            None => unresolved.push(poly_strings(g)),
        }
    }
    SpectrumReport {
        direction: rec.direction,
        characteristic: poly_strings(&p),
        roots,
        pairs,
        unresolved,
        factorization: f,
        exponents,
        frequencies,
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RecurrenceReport {
    pub variable: String,
    pub order: usize,
    pub coefficients: Vec<String>,
}

/// One term of a coefficient written as a product of generators.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Word {
    pub coeff: String,
    pub factors: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Receipt {
    pub field: String,
    pub component: String,
    pub coefficient: String,
    pub words: Vec<Word>,
    pub reexpands: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Verdict {
    Witnessed,
    WitnessedWithUnresolvedFactors,
    Failed(String),
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LieWitness {
    pub variables: Vec<String>,
    pub zero_weight: Vec<String>,
    pub recurrences: Vec<RecurrenceReport>,
    pub spectra: Vec<SpectrumReport>,
    pub generators: Vec<String>,
    pub receipts: Vec<Receipt>,
    pub verdict: Verdict,
}

const MAX_WORD: u32 = 24;

/// Nonnegative counts `k` with `sum k_j steps_j = target`, shortest first.
fn exp_word(target: &Rational, steps: &[Rational]) -> Option<Vec<u32>> {
    search_word(target, steps, false).map(|w| w.into_iter().map(|k| k as u32).collect())
}

/// Integer counts (any sign) with `sum k_j steps_j = target`.
fn trig_word(target: &Rational, steps: &[Rational]) -> Option<Vec<i64>> {
    search_word(target, steps, true)
}

/// Breadth-first search over sums of at most `MAX_WORD` steps.
fn search_word(target: &Rational, steps: &[Rational], signed: bool) -> Option<Vec<i64>> {
    let signs: &[i64] = if signed { &[1, -1] } else { &[1] };
    let mut seen: HashMap<Rational, Vec<i64>> = HashMap::new();
    seen.insert(Rational::zero(), vec![0; steps.len()]);
    let mut frontier = vec![Rational::zero()];
    for _ in 0..=MAX_WORD {
        if let Some(w) = seen.get(target) {
            return Some(w.clone());
        }
        let mut next = Vec::new();
        for s in &frontier {
            let w = seen[s].clone();
            for (j, st) in steps.iter().enumerate() {
                for &sign in signs {
                    let v = s + st * Rational::from_integer(sign.into());
                    if !seen.contains_key(&v) {
                        let mut w2 = w.clone();
                        w2[j] += sign;
                        seen.insert(v.clone(), w2);
                        next.push(v);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    None
}

/// Per-direction generator data used for re-expansion.
struct DirectionGens {
    var: usize,
    exponents: Vec<Rational>,
    frequencies: Vec<Rational>,
}

fn exp_gen(n: usize, i: usize, l: &Rational) -> ExpPolyCoeff {
    ExpPolyCoeff::exp(Frequency::unit(n, i, l.clone()))
}

/// Writes one term as a product of generators and recomputes it in the
/// ring; `None` if some factor is out of reach.
fn reexpand_term(
    key: &TermKey,
    coeff: &Rational,
    dirs: &[DirectionGens],
    names: &[String],
) -> Option<(Word, ExpPolyCoeff)> {
    let n = key.mono.len();
    let mut factors = Vec::new();
    let mut prod = ExpPolyCoeff::monomial(n, coeff.clone(), key.mono.clone());
    for (i, &e) in key.mono.iter().enumerate() {
        if e > 0 {
            factors.push(if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) });
        }
    }
    let trig_freq = key.trig_freq.clone().unwrap_or_else(|| Frequency::zero(n));
    // unit steps (direction, signed frequency) for the trig part
    let mut trig_steps: Vec<(usize, Rational)> = Vec::new();
    for i in 0..n {
        let f_exp = key.exp.get(i);
        let f_trig = trig_freq.get(i);
        if f_exp.is_zero() && f_trig.is_zero() {
            continue;
        }
        let d = dirs.iter().find(|d| d.var == i)?;
        if !f_exp.is_zero() {
            let w = exp_word(f_exp, &d.exponents)?;
            for (l, k) in d.exponents.iter().zip(w) {
                if k > 0 {
                    let g = exp_gen(n, i, l);
                    factors.push(format!("{}^{k}", format_coeff(&g, names)));
                    prod = &prod * &g.pow(k);
                }
            }
        }
        if !f_trig.is_zero() {
            let w = trig_word(f_trig, &d.frequencies)?;
            for (b, k) in d.frequencies.iter().zip(w) {
                if k != 0 {
                    let c = ExpPolyCoeff::cos(Frequency::unit(n, i, b.clone()));
                    let s = ExpPolyCoeff::sin(Frequency::unit(n, i, b.clone()));
                    factors.push(format!(
                        "poly({}, {}; {} steps{})",
                        format_coeff(&c, names),
                        format_coeff(&s, names),
                        k.abs(),
                        if k < 0 { ", negative" } else { "" }
                    ));
                    for _ in 0..k.abs() {
                        trig_steps.push((i, if k < 0 { -b.clone() } else { b.clone() }));
                    }
                }
            }
        }
    }
    if key.trig != Trig::None {
        let (mut c, mut s) = (ExpPolyCoeff::one(n), ExpPolyCoeff::zero(n));
        for (i, b) in &trig_steps {
            let cb = ExpPolyCoeff::cos(Frequency::unit(n, *i, b.abs()));
            let mut sb = ExpPolyCoeff::sin(Frequency::unit(n, *i, b.abs()));
            if b.is_negative() {
                sb = -&sb;
            }
            let c2 = &(&c * &cb) - &(&s * &sb);
            let s2 = &(&s * &cb) + &(&c * &sb);
            c = c2;
            s = s2;
        }
        prod = &prod * if key.trig == Trig::Cos { &c } else { &s };
    }
    Some((
        Word {
            coeff: coeff.to_string(),
            factors,
        },
        prod,
    ))
}

/// Runs the recurrence and spectrum analysis on every zero-weight
/// direction of an algebra already written in certified coordinates, then
/// re-expands each coefficient over the resulting generators.
pub fn lie_witness(cert: &NormalizationCertificate, l: &LieAlgebraVF) -> Result<LieWitness> {
    if let crate::pipeline::Status::Failed(r) = &cert.status {
        return Err(Error::NotCertified(r.clone()));
    }
    let names = l.ctx().names().to_vec();
    if names != cert.variables {
        return Err(Error::ContextMismatch);
    }
    let n = names.len();
    let zero: Vec<usize> = (0..n).filter(|&i| cert.weights[i] == 0).collect();
    let family: Vec<ExpPolyCoeff> = l
        .basis()
        .iter()
        .flat_map(|x| x.components().iter().filter(|c| !c.is_zero()).cloned())
        .collect();
    let mut recurrences = Vec::new();
    let mut spectra = Vec::new();
    let mut dirs = Vec::new();
    for &i in &zero {
        let rec = iterated_derivative_recurrence(&family, i, default_bound(&family, i, l.dim()))?;
        let sp = spectrum(&rec);
        recurrences.push(RecurrenceReport {
            variable: names[i].clone(),
            order: rec.order(),
            coefficients: rec.coefficients.iter().map(|c| c.to_string()).collect(),
        });
        dirs.push(DirectionGens {
            var: i,
            exponents: sp.exponents.clone(),
            frequencies: sp.frequencies.clone(),
        });
        spectra.push(sp);
    }
    let mut generators: Vec<String> = names.clone();
    for d in &dirs {
        for l in &d.exponents {
            generators.push(format_coeff(&exp_gen(n, d.var, l), &names));
        }
        for b in &d.frequencies {
            generators.push(format_coeff(&ExpPolyCoeff::sin(Frequency::unit(n, d.var, b.clone())), &names));
            generators.push(format_coeff(&ExpPolyCoeff::cos(Frequency::unit(n, d.var, b.clone())), &names));
        }
    }

    let mut receipts = Vec::new();
    let mut failed: Option<String> = None;
    for x in l.basis() {
        let field = format_field(x);
        for (k, c) in x.components().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut words = Vec::new();
            let mut rebuilt = ExpPolyCoeff::zero(n);
            let mut ok = true;
            for (key, coeff) in c.terms() {
                match reexpand_term(key, coeff, &dirs, &names) {
                    Some((w, p)) => {
                        words.push(w);
                        rebuilt = &rebuilt + &p;
                    }
                    None => ok = false,
                }
            }
            let reexpands = ok && rebuilt == *c;
            let coefficient = format_coeff(c, &names);
            if !reexpands && failed.is_none() {
                failed = Some(format!("coefficient {coefficient} of {field} does not re-expand"));
            }
            receipts.push(Receipt {
                field: field.clone(),
                component: names[k].clone(),
                coefficient,
                words,
                reexpands,
            });
        }
    }
    let verdict = match failed {
        Some(r) => Verdict::Failed(r),
        None if spectra.iter().any(|s| !s.unresolved.is_empty()) => Verdict::WitnessedWithUnresolvedFactors,
        None => Verdict::Witnessed,
    };
    Ok(LieWitness {
        zero_weight: zero.iter().map(|&i| names[i].clone()).collect(),
        variables: names,
        recurrences,
        spectra,
        generators,
        receipts,
        verdict,
    })
}

/// Normalizes, rewrites the algebra exactly in the new coordinates and
/// witnesses it.
pub fn witness(l: &LieAlgebraVF, opts: &NormalizeOptions) -> Result<(NormalizationCertificate, LieWitness)> {
    let cert = normalize(l, opts)?;
    if let crate::pipeline::Status::Failed(r) = &cert.status {
        return Err(Error::NotCertified(r.clone()));
    }
    let t = transform_exact(l, &cert)?;
    let w = lie_witness(&cert, &t)?;
    Ok((cert, w))
}
