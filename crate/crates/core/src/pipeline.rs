//! Normalization of transitive solvable algebras: flag profile, weights,
//! adapted frame, jet chart and a gradedness certificate.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::coeffring::ExpPolyCoeff;
use crate::error::{Error, Result};
use crate::grading::{Dilation, Mode};
use crate::jets::{
    invert_jet_matrix, pushforward_with_inverse, to_ring, truncate, truncate_field, JetField, JetForm, JetFunction,
    JetMap,
};
use crate::liealg::{LieAlgebraVF, SeriesKind, SeriesReport};
use crate::linalg::{dense_to_sparse, SparseEchelon};
use crate::nilrad::nilradical_series;
use crate::scalar::factorial;
use crate::text::format_field;
use crate::vfield::{combine, VarContext, VectorField};
use crate::{Jet, QJetMap, Rational};

/// Which series drives the construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum PathChoice {
    #[default]
    Auto,
    Nilpotent,
    Solvable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Path {
    Nilpotent,
    Solvable,
}

/// How the chart is built from the adapted frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Strategy {
    /// Integrate dual closed 1-forms layer by layer.
    #[default]
    Forms,
    /// Canonical coordinates of the second kind from composed flows.
    Flows,
}

#[derive(Debug, Clone, Default)]
pub struct NormalizeOptions {
    /// Defaults to `2 (w(h) + 1)`.
    pub jet_order: Option<u32>,
    pub path: PathChoice,
    pub strategy: Strategy,
}

/// The dimension drops of a series at the origin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FlagProfile {
    pub kind: SeriesKind,
    pub dims_at_origin: Vec<usize>,
    pub r: Vec<usize>,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub m: usize,
    pub k: usize,
}

impl FlagProfile {
    /// Layer index of each new coordinate.
    pub fn layer_of(&self) -> Vec<usize> {
        self.a.iter().enumerate().flat_map(|(j, &aj)| std::iter::repeat(j).take(aj)).collect()
    }
}

/// Reads `r`, `a`, `b` off the origin dimensions of a series that reaches
/// zero and starts at the full tangent space.
pub fn flag_profile(series: &SeriesReport, n: usize) -> Result<FlagProfile> {
    let d = &series.dims_at_origin;
    if d.first() != Some(&n) {
        return Err(Error::NotTransitive);
    }
    let Some(k) = series.height else {
        return Err(Error::NotNilpotent);
    };
    let (mut r, mut a, mut b) = (Vec::new(), Vec::new(), Vec::new());
    for idx in 0..d.len() - 1 {
        if d[idx + 1] < d[idx] {
            r.push(series.start_index + idx);
            a.push(d[idx] - d[idx + 1]);
            b.push(n - d[idx + 1]);
        }
    }
    Ok(FlagProfile {
        kind: series.kind,
        dims_at_origin: d.clone(),
        m: r.len(),
        r,
        a,
        b,
        k,
    })
}

/// `r_j` repeated `a_j` times.
pub fn derive_weights(profile: &FlagProfile) -> Vec<u32> {
    profile.layer_of().iter().map(|&j| profile.r[j] as u32).collect()
}

/// Frame fields `Y_1..Y_n` grouped by layer.
#[derive(Debug, Clone)]
pub struct AdaptedFrame {
    pub fields: Vec<VectorField>,
    /// Coordinates of each frame field in the algebra's basis.
    pub coords: Vec<Vec<Rational>>,
    pub layer_of: Vec<usize>,
}

/// Greedy layer-by-layer choice: for layer `j`, scan the echelon basis of
/// `L^{r_j}` and keep elements whose origin values are independent modulo
/// `L^{r_j + 1}(0)` and the picks so far. Elements with polynomial
/// coefficients are scanned first, then the rest, each group in basis order.
pub fn adapted_frame(l: &LieAlgebraVF, series: &SeriesReport, profile: &FlagProfile) -> Result<AdaptedFrame> {
    let value = |v: &[Rational]| l.field_of(v).eval_origin();
    let mut fields = Vec::new();
    let mut coords = Vec::new();
    let mut layer_of = Vec::new();
    for (j, (&rj, &aj)) in profile.r.iter().zip(&profile.a).enumerate() {
        let idx = |i: usize| i - series.start_index;
        let member = &series.chain[idx(rj)];
        let deeper = &series.chain[idx(rj + 1)];
        let mut ech = SparseEchelon::new();
        for v in deeper.basis() {
            ech.insert(&dense_to_sparse(&value(v)));
        }
        let mut cands: Vec<&Vec<Rational>> = member.basis().iter().collect();
        cands.sort_by_key(|v| !l.field_of(v).components().iter().all(ExpPolyCoeff::is_polynomial));
        let mut picked = 0;
        for v in cands {
            if picked == aj {
                break;
            }
            if ech.insert(&dense_to_sparse(&value(v))) {
                fields.push(l.field_of(v));
                coords.push(v.clone());
                layer_of.push(j);
                picked += 1;
            }
        }
        if picked < aj {
            return Err(Error::NotTransitive);
        }
    }
    Ok(AdaptedFrame {
        fields,
        coords,
        layer_of,
    })
}

/// Builds the chart `x -> y` as a jet map of order `order`.
pub fn build_chart(frame: &AdaptedFrame, profile: &FlagProfile, order: u32, strategy: Strategy) -> Result<QJetMap> {
    if order < 2 {
        return Err(Error::InvalidArgument("jet order must be at least 2".into()));
    }
    match strategy {
        Strategy::Forms => chart_forms(frame, profile, order),
        Strategy::Flows => chart_flows(frame, order),
    }
}

fn chart_forms(frame: &AdaptedFrame, profile: &FlagProfile, order: u32) -> Result<QJetMap> {
    let n = frame.fields.len();
    let ys: Vec<JetField<Rational>> = frame.fields.iter().map(|f| truncate_field(f, order)).collect();
    let mut phi = JetMap::identity(n, order);
    let mut done = 0;
    for &a in &profile.a {
        let psi = phi.invert()?;
        let pushed = (done..n)
            .map(|s| pushforward_with_inverse(&ys[s], &phi, &psi))
            .collect::<Result<Vec<_>>>()?;
        for (s, z) in pushed.iter().enumerate() {
            if (0..done).any(|p| !z.component(p).is_zero()) {
                return Err(Error::NotClosedForm(format!(
                    "frame field {} is not tangent to the leaves of the previous layer",
                    done + s + 1
                )));
            }
        }
        let t_mat: Vec<Vec<Jet>> = pushed.iter().map(|z| z.components()[done..].to_vec()).collect();
        let t_inv = invert_jet_matrix(&t_mat)?;
        let active: Vec<bool> = (0..n).map(|i| i >= done).collect();
        let mut new_fns = Vec::with_capacity(a);
        for l in 0..a {
            let mut coeffs = vec![JetFunction::zero(n, order - 1); n];
            for (t, row) in t_inv.iter().enumerate() {
                coeffs[done + t] = row[l].clone();
            }
            let y = JetForm::new(coeffs).integrate_leafwise(&active)?;
            new_fns.push(y.compose(&phi));
        }
        if done > 0 {
            // Move the zero level of each new coordinate from the chart slice
            // to the transversal swept out by the earlier frame flows.
            let sweep = JetMap::new(flow_point(&ys[..done], order))?;
            let u = JetMap::new(phi.components()[..done].to_vec())?;
            let u_on_sweep = JetMap::new(u.components().iter().map(|c| c.compose(&sweep)).collect())?;
            let back = u_on_sweep.invert()?;
            for g in &mut new_fns {
                let offset = g.compose(&sweep).compose(&back).compose(&u);
                *g = g.sub(&offset);
            }
        }
        let mut comps: Vec<Jet> = phi.components()[..done].to_vec();
        comps.extend(new_fns);
        let mut ech = SparseEchelon::new();
        for c in &comps {
            ech.insert(&dense_to_sparse(&gradient_at_origin(c)));
        }
        for c in &phi.components()[done..] {
            if comps.len() == n {
                break;
            }
            if ech.insert(&dense_to_sparse(&gradient_at_origin(c))) {
                comps.push(c.clone());
            }
        }
        if comps.len() < n {
            return Err(Error::SingularJetMap);
        }
        phi = JetMap::new(comps)?;
        done += a;
    }
    Ok(phi)
}

fn gradient_at_origin(f: &Jet) -> Vec<Rational> {
    (0..f.nvars())
        .map(|i| {
            let mut m = vec![0; f.nvars()];
            m[i] = 1;
            f.coeff(&m)
        })
        .collect()
}

/// `Phi(s) = exp(s_n Y_n) o ... o exp(s_1 Y_1)(0)`, inverted.
fn chart_flows(frame: &AdaptedFrame, order: u32) -> Result<QJetMap> {
    let ys: Vec<JetField<Rational>> = frame.fields.iter().map(|f| truncate_field(f, order)).collect();
    JetMap::new(flow_point(&ys, order))?.invert()
}

/// `s -> exp(s_b Y_b) o ... o exp(s_1 Y_1)(0)` as jets in `b` variables.
fn flow_point(ys: &[JetField<Rational>], order: u32) -> Vec<Jet> {
    let n = ys.first().map_or(0, |y| y.components().len());
    let b = ys.len();
    let nv = n + b;
    let embed = |f: &Jet| -> Jet {
        JetFunction::from_coeffs(
            nv,
            order,
            f.coeffs().iter().map(|(m, c)| {
                let mut m2 = m.clone();
                m2.resize(nv, 0);
                (m2, c.clone())
            }),
        )
    };
    let wide: Vec<JetField<Rational>> = ys
        .iter()
        .map(|y| {
            let mut comps: Vec<Jet> = y.components().iter().map(embed).collect();
            comps.resize(nv, JetFunction::zero(nv, order));
            JetField::new(comps)
        })
        .collect();
    (0..n)
        .map(|i| {
            let mut f = JetFunction::var(nv, i, order);
            for (k, y) in wide.iter().enumerate().rev() {
                f = exp_action(y, &f, n + k, order);
            }
            JetFunction::from_coeffs(
                b,
                order,
                f.coeffs()
                    .iter()
                    .filter(|(m, _)| m[..n].iter().all(|&e| e == 0))
                    .map(|(m, c)| (m[n..].to_vec(), c.clone())),
            )
        })
        .collect()
}

/// `exp(s Y) f = sum s^k / k! Y^k f`. Each term gains a factor of `s` for
/// the order consumed by `Y`, so the result stays valid to `order`.
fn exp_action(y: &JetField<Rational>, f: &Jet, s: usize, order: u32) -> Jet {
    let sv = JetFunction::var(f.nvars(), s, order);
    let mut acc = f.clone();
    let mut term = f.clone();
    for k in 1..=order {
        term = y.apply(&term).with_order(order).mul(&sv);
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term.scale(&(Rational::one() / factorial(k))));
    }
    acc
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Status {
    Certified,
    CertifiedNilpotent,
    Failed(String),
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct JetTerm {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ChartEntry {
    pub coordinate: String,
    pub jet: Vec<JetTerm>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BasisDegrees {
    pub field: String,
    pub degrees: Vec<i64>,
    pub max_degree: Option<i64>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SeriesBound {
    pub index: usize,
    pub dim: usize,
    pub max_degree: Option<i64>,
    pub bound: i64,
    pub holds: bool,
}

/// Everything the normalization established, with exact rationals as
/// `"p/q"` strings in the serialized form.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NormalizationCertificate {
    pub path: Path,
    pub strategy: Strategy,
    pub jet_order: u32,
    pub profile: FlagProfile,
    pub variables: Vec<String>,
    pub weights: Vec<u32>,
    /// `name:weight` pairs, e.g. `"y:1, x:3"`.
    pub dilation: String,
    pub frame: Vec<String>,
    pub linear_change: Vec<Vec<String>>,
    pub chart: Vec<ChartEntry>,
    pub per_basis_degrees: Vec<BasisDegrees>,
    pub series_degree_bounds: Vec<SeriesBound>,
    pub zero_part: Vec<String>,
    pub zero_part_commutes: bool,
    /// `r_1 > 0` together with a nonzero degree-0 part.
    pub zero_part_with_positive_r1: bool,
    pub membership_recheck: bool,
    pub standing_assumption: String,
    pub status: Status,
    #[serde(skip)]
    pub chart_map: QJetMap,
}

impl NormalizationCertificate {
    pub fn is_certified(&self) -> bool {
        matches!(self.status, Status::Certified | Status::CertifiedNilpotent)
    }

    pub fn new_context(&self) -> Result<crate::vfield::Ctx> {
        VarContext::new(&self.variables)
    }
}

const ASSUMPTION: &str =
    "frame spanning and flag regularity are checked at the origin and to the certificate's jet order";

/// Reuses an old variable name for chart components that are exactly that
/// coordinate; the rest get fresh names `y1, y2, ...` (or another prefix
/// if those clash).
fn coordinate_names(chart: &QJetMap, old: &[String]) -> Vec<String> {
    let n = chart.nvars();
    let order = chart.order();
    let reused: Vec<Option<String>> = chart
        .components()
        .iter()
        .map(|c| (0..n).find(|&j| *c == JetFunction::var(n, j, order)).map(|j| old[j].clone()))
        .collect();
    for prefix in ["y", "w", "v", "s", "q"] {
        let names: Vec<String> = reused
            .iter()
            .enumerate()
            .map(|(k, r)| r.clone().unwrap_or_else(|| format!("{prefix}{}", k + 1)))
            .collect();
        let fresh_clash = reused.iter().enumerate().any(|(k, r)| {
            r.is_none() && (old.contains(&names[k]) || names.iter().filter(|x| **x == names[k]).count() > 1)
        });
        if !fresh_clash {
            return names;
        }
    }
    (0..n).map(|k| format!("ynew{}", k + 1)).collect()
}

fn degree_of(w: &[u32], k: usize, m: &[u32]) -> i64 {
    m.iter().zip(w).map(|(&e, &wi)| e as i64 * wi as i64).sum::<i64>() - w[k] as i64
}

fn jet_degrees(z: &JetField<Rational>, w: &[u32]) -> BTreeSet<i64> {
    let mut out = BTreeSet::new();
    for (k, c) in z.components().iter().enumerate() {
        for m in c.coeffs().keys() {
            out.insert(degree_of(w, k, m));
        }
    }
    out
}

fn degree_part(z: &JetField<Rational>, w: &[u32], d: i64) -> JetField<Rational> {
    JetField::new(
        z.components()
            .iter()
            .enumerate()
            .map(|(k, c)| {
                JetFunction::from_coeffs(
                    c.nvars(),
                    c.order(),
                    c.coeffs()
                        .iter()
                        .filter(|(m, _)| degree_of(w, k, m) == d)
                        .map(|(m, v)| (m.clone(), v.clone())),
                )
            })
            .collect(),
    )
}

fn combine_jets(fields: &[JetField<Rational>], coeffs: &[Rational], n: usize, order: u32) -> JetField<Rational> {
    let mut acc = JetField::new(vec![JetFunction::zero(n, order); n]);
    for (f, c) in fields.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&f.scale(c));
        }
    }
    acc
}

fn jet_field_to_vf(z: &JetField<Rational>, ctx: &crate::vfield::Ctx) -> VectorField {
    VectorField::new(ctx.clone(), z.components().iter().map(to_ring).collect())
}

/// Runs the whole construction and assembles the certificate. Check
/// failures are reported in `status`; violated preconditions and chart
/// breakdowns are errors.
pub fn normalize(l: &LieAlgebraVF, opts: &NormalizeOptions) -> Result<NormalizationCertificate> {
    let n = l.nvars();
    if !l.is_transitive_at_origin() {
        return Err(Error::NotTransitive);
    }
    if !l.is_solvable() {
        return Err(Error::NotSolvable);
    }
    let nilpotent = l.is_nilpotent();
    let path = match opts.path {
        PathChoice::Auto if nilpotent => Path::Nilpotent,
        PathChoice::Auto | PathChoice::Solvable => Path::Solvable,
        PathChoice::Nilpotent if nilpotent => Path::Nilpotent,
        PathChoice::Nilpotent => return Err(Error::NotNilpotent),
    };
    let series = match path {
        Path::Nilpotent => l.lower_central_series(),
        Path::Solvable => nilradical_series(l)?,
    };
    let profile = flag_profile(&series, n)?;
    let w = derive_weights(&profile);
    let wh = w.iter().copied().max().unwrap_or(0);
    let order = opts.jet_order.unwrap_or(2 * (wh + 1));
    let frame = adapted_frame(l, &series, &profile)?;
    let chart = build_chart(&frame, &profile, order, opts.strategy)?;
    let inv = chart.invert()?;
    let names = coordinate_names(&chart, l.ctx().names());
    let new_ctx = VarContext::new(&names)?;

    let push = |x: &VectorField| pushforward_with_inverse(&truncate_field(x, order), &chart, &inv);
    let pushed = l.basis().iter().map(push).collect::<Result<Vec<_>>>()?;
    let pushed_frame = frame.fields.iter().map(push).collect::<Result<Vec<_>>>()?;
    let pushed_order = order - 1;

    let mut failures: Vec<String> = Vec::new();

    // frame adaptation: Y_k = d/dy_k plus terms along later layers
    for (k, z) in pushed_frame.iter().enumerate() {
        for i in 0..n {
            if frame.layer_of[i] > frame.layer_of[k] {
                continue;
            }
            let expect = if i == k {
                JetFunction::constant(n, z.component(i).order(), Rational::one())
            } else {
                JetFunction::zero(n, z.component(i).order())
            };
            if *z.component(i) != expect {
                failures.push(format!("frame field {} is not adapted in coordinate {}", k + 1, names[i]));
            }
        }
    }

    let strict = path == Path::Nilpotent;
    let top = if strict { -1 } else { 0 };
    let mut per_basis = Vec::new();
    for (x, z) in l.basis().iter().zip(&pushed) {
        let degs = jet_degrees(z, &w);
        let max = degs.iter().next_back().copied();
        let field = format_field(x);
        if let Some(d) = max.filter(|&d| d > top) {
            failures.push(format!("basis element {field} has degree {d} > {top}"));
        }
        if let Some(&d) = degs.iter().next().filter(|&&d| d < -(wh as i64)) {
            failures.push(format!("basis element {field} has degree {d} < -{wh}"));
        }
        for (k, c) in z.components().iter().enumerate() {
            for m in c.coeffs().keys() {
                let total: u32 = m.iter().sum();
                if total == pushed_order && m.iter().zip(&w).all(|(&e, &wi)| e == 0 || wi > 0) {
                    failures.push(format!(
                        "OrderTooLow: basis element {field} has a term of order {total} in component {}",
                        names[k]
                    ));
                }
            }
        }
        per_basis.push(BasisDegrees {
            field,
            degrees: degs.into_iter().collect(),
            max_degree: max,
        });
    }

    let mut bounds = Vec::new();
    for (pos, member) in series.chain.iter().enumerate() {
        let index = series.start_index + pos;
        if index == 0 || member.is_zero() {
            continue;
        }
        let mut degs = BTreeSet::new();
        for v in member.basis() {
            degs.extend(jet_degrees(&combine_jets(&pushed, v, n, pushed_order), &w));
        }
        let max = degs.iter().next_back().copied();
        let bound = -(index as i64);
        let holds = max.is_none_or(|d| d <= bound);
        if !holds {
            failures.push(format!("series member {index} has degree {} > {bound}", max.unwrap()));
        }
        bounds.push(SeriesBound {
            index,
            dim: member.dim(),
            max_degree: max,
            bound,
            holds,
        });
    }

    let zero_parts: Vec<JetField<Rational>> = pushed
        .iter()
        .map(|z| degree_part(z, &w, 0))
        .filter(|z| !z.is_zero())
        .collect();
    let mut zero_part_commutes = true;
    for i in 0..zero_parts.len() {
        for j in i + 1..zero_parts.len() {
            if !zero_parts[i].bracket(&zero_parts[j]).is_zero() {
                zero_part_commutes = false;
            }
        }
    }
    if !zero_part_commutes {
        failures.push("degree-0 parts do not commute".into());
    }
    let mut zero_span = SparseEchelon::new();
    let mut zero_part = Vec::new();
    for z in &zero_parts {
        let vf = jet_field_to_vf(z, &new_ctx);
        if zero_span.insert(&vf.to_sparse()) {
            zero_part.push(format_field(&vf));
        }
    }

    if path == Path::Solvable {
        let top_vars: Vec<bool> = (0..n).map(|i| frame.layer_of[i] + 1 == profile.m).collect();
        for (x, z) in l.basis().iter().zip(&pushed) {
            for (k, c) in z.components().iter().enumerate() {
                let limit = if top_vars[k] { 1 } else { 0 };
                let bad = c
                    .coeffs()
                    .keys()
                    .any(|m| m.iter().zip(&top_vars).filter(|(_, &t)| t).map(|(e, _)| *e).sum::<u32>() > limit);
                if bad {
                    failures.push(format!(
                        "basis element {} is not affine in the top block (component {})",
                        format_field(x),
                        names[k]
                    ));
                }
            }
        }
    }

    let dil = Dilation::new(new_ctx.clone(), w.clone())?;
    let ring_fields: Vec<VectorField> = pushed.iter().map(|z| jet_field_to_vf(z, &new_ctx)).collect();
    let mode = if strict { Mode::StrictNeg } else { Mode::NonPos };
    let mut membership_recheck = dil.membership(&ring_fields, mode)?.holds;
    if !strict {
        let derived = l.derived_series();
        if let Some(d1) = derived.chain.get(1) {
            let fs: Vec<VectorField> = d1
                .basis()
                .iter()
                .map(|v| jet_field_to_vf(&combine_jets(&pushed, v, n, pushed_order), &new_ctx))
                .collect();
            membership_recheck &= dil.membership(&fs, Mode::StrictNeg)?.holds;
        }
    }
    if !membership_recheck {
        failures.push("independent membership re-check failed".into());
    }

    let status = match failures.into_iter().next() {
        Some(reason) => Status::Failed(reason),
        None if strict => Status::CertifiedNilpotent,
        None => Status::Certified,
    };
    let linear = chart.linear_part();
    Ok(NormalizationCertificate {
        path,
        strategy: opts.strategy,
        jet_order: order,
        dilation: names.iter().zip(&w).map(|(v, k)| format!("{v}:{k}")).collect::<Vec<_>>().join(", "),
        weights: w,
        frame: frame.fields.iter().map(format_field).collect(),
        linear_change: (0..n).map(|i| linear.row(i).iter().map(|c| c.to_string()).collect()).collect(),
        chart: chart
            .components()
            .iter()
            .zip(&names)
            .map(|(c, name)| ChartEntry {
                coordinate: name.clone(),
                jet: c
                    .coeffs()
                    .iter()
                    .map(|(m, v)| JetTerm {
                        exponents: m.clone(),
                        coeff: v.to_string(),
                    })
                    .collect(),
            })
            .collect(),
        variables: names,
        per_basis_degrees: per_basis,
        series_degree_bounds: bounds,
        zero_part_with_positive_r1: path == Path::Solvable && profile.r[0] > 0 && !zero_part.is_empty(),
        profile,
        zero_part,
        zero_part_commutes,
        membership_recheck,
        standing_assumption: ASSUMPTION.to_string(),
        status,
        chart_map: chart,
    })
}

/// The chart and its inverse as ring polynomials, when both are exact
/// polynomial maps (their exact composites are the identity).
pub fn polynomial_chart(chart: &QJetMap) -> Option<(Vec<ExpPolyCoeff>, Vec<ExpPolyCoeff>)> {
    let n = chart.nvars();
    let inv = chart.invert().ok()?;
    let phi: Vec<ExpPolyCoeff> = chart.components().iter().map(to_ring).collect();
    let psi: Vec<ExpPolyCoeff> = inv.components().iter().map(to_ring).collect();
    for i in 0..n {
        let id = ExpPolyCoeff::var(n, i);
        if phi[i].substitute(&psi).ok()? != id || psi[i].substitute(&phi).ok()? != id {
            return None;
        }
    }
    Some((phi, psi))
}

/// The algebra rewritten exactly in the certificate's coordinates. Needs a
/// polynomial chart with polynomial inverse.
pub fn transform_exact(l: &LieAlgebraVF, cert: &NormalizationCertificate) -> Result<LieAlgebraVF> {
    let (phi, psi) = polynomial_chart(&cert.chart_map)
        .ok_or_else(|| Error::NotRepresentable("chart is not an exact polynomial diffeomorphism".into()))?;
    let ctx = cert.new_context()?;
    let mut basis = Vec::with_capacity(l.dim());
    for x in l.basis() {
        let comps = phi
            .iter()
            .map(|p| x.apply(p)?.substitute(&psi))
            .collect::<Result<Vec<_>>>()?;
        basis.push(VectorField::new(ctx.clone(), comps));
    }
    LieAlgebraVF::from_basis(ctx, basis)
}

/// Truncated Taylor data of a ring element, re-exported for callers that
/// inspect certificates.
pub fn jet_of(f: &ExpPolyCoeff, order: u32) -> Jet {
    truncate(f, order)
}

/// Sum of fields with rational coefficients in the original coordinates.
pub fn field_of_coords(l: &LieAlgebraVF, v: &[Rational]) -> VectorField {
    combine(l.ctx(), l.basis(), v)
}
