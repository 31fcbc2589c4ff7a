//! Finite-dimensional Lie algebras of vector fields as rational spans:
//! bracket closure, structure constants, derived and lower central series,
//! transitivity and projection onto a quotient of the variables.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{dense_to_sparse, Matrix, SparseEchelon};
use crate::vfield::{combine, Ctx, FieldKey, VarContext, VectorField};
use crate::Rational;

/// Structure constants `c[i][j][k]` with `[e_i, e_j] = sum_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    dim: usize,
    c: Vec<Rational>,
}

impl StructureConstants {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            c: vec![Rational::zero(); dim * dim * dim],
        }
    }

    /// Builds antisymmetric constants from the brackets `[e_i, e_j]`, `i < j`.
    pub fn from_upper(dim: usize, mut f: impl FnMut(usize, usize) -> Vec<Rational>) -> Self {
        let mut sc = Self::zero(dim);
        for i in 0..dim {
            for j in i + 1..dim {
                let v = f(i, j);
                for (k, a) in v.into_iter().enumerate() {
                    if !a.is_zero() {
                        sc.c[(j * dim + i) * dim + k] = -a.clone();
                        sc.c[(i * dim + j) * dim + k] = a;
                    }
                }
            }
        }
        sc
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let d = self.dim;
        let mut out = vec![Rational::zero(); d];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() || i == j {
                    continue;
                }
                let w = ui * vj;
                let base = (i * d + j) * d;
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = &self.c[base + k];
                    if !c.is_zero() {
                        *slot += &w * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad(u)` acting on coordinate columns.
    pub fn ad_of(&self, u: &[Rational]) -> Matrix<Rational> {
        let d = self.dim;
        let mut m = Matrix::zeros(d, d);
        for j in 0..d {
            let mut e = vec![Rational::zero(); d];
            e[j] = Rational::one();
            for (k, v) in self.bracket(u, &e).into_iter().enumerate() {
                m[(k, j)] = v;
            }
        }
        m
    }

    pub fn is_antisymmetric(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| {
            (0..d).all(|j| (0..d).all(|k| (self.get(i, j, k) + self.get(j, i, k)).is_zero()))
        })
    }

    pub fn satisfies_jacobi(&self) -> bool {
        let d = self.dim;
        let e = |i: usize| {
            let mut v = vec![Rational::zero(); d];
            v[i] = Rational::one();
            v
        };
        for i in 0..d {
            for j in i + 1..d {
                for k in j + 1..d {
                    let a = self.bracket(&e(i), &self.bracket(&e(j), &e(k)));
                    let b = self.bracket(&e(j), &self.bracket(&e(k), &e(i)));
                    let c = self.bracket(&e(k), &self.bracket(&e(i), &e(j)));
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(x + y + z).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Linear subspace of `Q^d` kept in reduced row echelon form. Ideals and
/// series members are subspaces of the parent's coordinate space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<Rational>>,
}

/// Ideals are stored as coordinate subspaces of the parent algebra.
pub type Ideal = Subspace;

impl Subspace {
    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vec<Rational>>) -> Self {
        let rows: Vec<Vec<Rational>> = vectors.into_iter().collect();
        if rows.is_empty() {
            return Self::zero(ambient);
        }
        let m = Matrix::from_rows(rows, ambient);
        let (r, piv) = m.rref();
        Self {
            ambient,
            rows: (0..piv.len()).map(|i| r.row(i).to_vec()).collect(),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(
            ambient,
            (0..ambient).map(|i| {
                let mut v = vec![Rational::zero(); ambient];
                v[i] = Rational::one();
                v
            }),
        )
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut r = v.to_vec();
        for row in &self.rows {
            let p = row.iter().position(|a| !a.is_zero()).unwrap();
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
        }
        r.iter().all(Zero::is_zero)
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Self) -> Self {
        Self::span(self.ambient, self.rows.iter().chain(&other.rows).cloned())
    }

    /// `[A, B]` as a span of brackets of basis vectors.
    pub fn bracket_span(sc: &StructureConstants, a: &Self, b: &Self) -> Self {
        let mut v = Vec::new();
        for x in &a.rows {
            for y in &b.rows {
                let z = sc.bracket(x, y);
                if z.iter().any(|t| !t.is_zero()) {
                    v.push(z);
                }
            }
        }
        Self::span(sc.dim(), v)
    }

    /// `[L, self] ⊆ self`.
    pub fn is_ideal(&self, sc: &StructureConstants) -> bool {
        Self::bracket_span(sc, &Self::full(sc.dim()), self).is_subspace_of(self)
    }

    /// `[self, self] ⊆ self`.
    pub fn is_subalgebra(&self, sc: &StructureConstants) -> bool {
        Self::bracket_span(sc, self, self).is_subspace_of(self)
    }

    /// Lower central series of the subalgebra reaches zero.
    pub fn is_nilpotent_subalgebra(&self, sc: &StructureConstants) -> bool {
        let mut cur = self.clone();
        loop {
            if cur.is_zero() {
                return true;
            }
            let next = Self::bracket_span(sc, self, &cur);
            if next.dim() == cur.dim() {
                return false;
            }
            cur = next;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum SeriesKind {
    Derived,
    LowerCentral,
    Nilradical,
}

/// A descending chain of ideals with dimensions and origin dimensions.
#[derive(Debug, Clone)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    /// Index of `chain[0]` in the usual notation (`L^1` for the lower
    /// central series, `L^0` otherwise).
    pub start_index: usize,
    pub chain: Vec<Ideal>,
    pub dims: Vec<usize>,
    /// `dim L^i(0)`; empty for abstract algebras.
    pub dims_at_origin: Vec<usize>,
    /// Index `k` of the last nonzero member when the chain reaches zero.
    pub height: Option<usize>,
}

impl SeriesReport {
    pub(crate) fn build(
        kind: SeriesKind,
        start_index: usize,
        chain: Vec<Ideal>,
        origin: Option<&Matrix<Rational>>,
    ) -> Self {
        let dims = chain.iter().map(Subspace::dim).collect::<Vec<_>>();
        let dims_at_origin = origin
            .map(|o| chain.iter().map(|s| dim_at_origin(s, o)).collect())
            .unwrap_or_default();
        let height = if chain.last().is_some_and(Subspace::is_zero) {
            Some(start_index + chain.len().saturating_sub(2))
        } else {
            None
        };
        Self {
            kind,
            start_index,
            chain,
            dims,
            dims_at_origin,
            height,
        }
    }

    pub fn reaches_zero(&self) -> bool {
        self.chain.last().is_some_and(Subspace::is_zero)
    }

    /// Member `L^i` in the report's own indexing.
    pub fn member(&self, i: usize) -> Option<&Ideal> {
        i.checked_sub(self.start_index).and_then(|j| self.chain.get(j))
    }
}

/// Rank of the origin values of the subspace's fields.
pub fn dim_at_origin(s: &Subspace, origin: &Matrix<Rational>) -> usize {
    if s.is_zero() {
        return 0;
    }
    let m = Matrix::from_rows(s.basis().to_vec(), s.ambient());
    m.mul(origin).rank()
}

/// Iterates `next` from `first` until zero or stabilisation; keeps the final member.
fn iterate_chain(first: Subspace, mut next: impl FnMut(&Subspace) -> Subspace) -> Vec<Subspace> {
    let mut chain = vec![first];
    loop {
        let cur = chain.last().unwrap();
        if cur.is_zero() {
            break;
        }
        let n = next(cur);
        let stable = n.dim() == cur.dim();
        chain.push(n);
        if stable {
            break;
        }
    }
    chain
}

pub fn derived_series(sc: &StructureConstants, origin: Option<&Matrix<Rational>>) -> SeriesReport {
    let chain = iterate_chain(Subspace::full(sc.dim()), |s| Subspace::bracket_span(sc, s, s));
    SeriesReport::build(SeriesKind::Derived, 0, chain, origin)
}

pub fn lower_central_series(sc: &StructureConstants, origin: Option<&Matrix<Rational>>) -> SeriesReport {
    let full = Subspace::full(sc.dim());
    let chain = iterate_chain(full.clone(), |s| Subspace::bracket_span(sc, &full, s));
    SeriesReport::build(SeriesKind::LowerCentral, 1, chain, origin)
}

pub fn is_solvable(sc: &StructureConstants) -> bool {
    derived_series(sc, None).reaches_zero()
}

pub fn is_nilpotent(sc: &StructureConstants) -> bool {
    lower_central_series(sc, None).reaches_zero()
}

/// Maximal linearly independent subsequence, earliest wins.
pub fn span_reduce(fields: &[VectorField]) -> Result<Vec<VectorField>> {
    if let Some(first) = fields.first() {
        for f in fields {
            if f.ctx() != first.ctx() {
                return Err(Error::ContextMismatch);
            }
        }
    }
    let mut ech: SparseEchelon<FieldKey, Rational> = SparseEchelon::new();
    Ok(fields
        .iter()
        .filter(|f| ech.insert(&f.to_sparse()))
        .cloned()
        .collect())
}

/// A finite-dimensional, bracket-closed rational span of vector fields.
#[derive(Debug, Clone)]
pub struct LieAlgebraVF {
    ctx: Ctx,
    basis: Vec<VectorField>,
    sc: StructureConstants,
    echelon: SparseEchelon<FieldKey, Rational>,
}

impl LieAlgebraVF {
    /// Validates independence and closure of an explicit basis.
    pub fn from_basis(ctx: Ctx, basis: Vec<VectorField>) -> Result<Self> {
        let mut echelon = SparseEchelon::new();
        for f in &basis {
            if f.ctx() != &ctx {
                return Err(Error::ContextMismatch);
            }
            if !echelon.insert(&f.to_sparse()) {
                return Err(Error::DependentBasis);
            }
        }
        Self::finish(ctx, basis, echelon)
    }

    fn finish(ctx: Ctx, basis: Vec<VectorField>, echelon: SparseEchelon<FieldKey, Rational>) -> Result<Self> {
        let d = basis.len();
        let mut failure = None;
        let sc = StructureConstants::from_upper(d, |i, j| {
            let b = basis[i].bracket(&basis[j]).expect("shared context");
            match echelon.express(&b.to_sparse()) {
                Some(c) => c,
                None => {
                    failure.get_or_insert(Error::NotClosed(i, j));
                    vec![Rational::zero(); d]
                }
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(Self {
            ctx,
            basis,
            sc,
            echelon,
        })
    }

    /// Smallest bracket-closed span containing `generators`.
    pub fn closure(ctx: Ctx, generators: &[VectorField], cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::InvalidArgument("closure cap must be positive".into()));
        }
        let mut echelon: SparseEchelon<FieldKey, Rational> = SparseEchelon::new();
        let mut basis = Vec::new();
        for g in generators {
            if g.ctx() != &ctx {
                return Err(Error::ContextMismatch);
            }
            if echelon.insert(&g.to_sparse()) {
                basis.push(g.clone());
                if basis.len() > cap {
                    return Err(Error::DimensionCapExceeded(cap));
                }
            }
        }
        let mut j = 0;
        while j < basis.len() {
            for i in 0..j {
                let b = basis[i].bracket(&basis[j])?;
                if echelon.insert(&b.to_sparse()) {
                    basis.push(b);
                    if basis.len() > cap {
                        return Err(Error::DimensionCapExceeded(cap));
                    }
                }
            }
            j += 1;
        }
        Self::finish(ctx, basis, echelon)
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn nvars(&self) -> usize {
        self.ctx.len()
    }

    pub fn basis(&self) -> &[VectorField] {
        &self.basis
    }

    pub fn structure(&self) -> &StructureConstants {
        &self.sc
    }

    /// Coordinates of a field in the basis, if it lies in the span.
    pub fn coordinates_of(&self, f: &VectorField) -> Option<Vec<Rational>> {
        self.echelon.express(&f.to_sparse())
    }

    pub fn field_of(&self, coords: &[Rational]) -> VectorField {
        combine(&self.ctx, &self.basis, coords)
    }

    pub fn fields_of(&self, s: &Subspace) -> Vec<VectorField> {
        s.basis().iter().map(|r| self.field_of(r)).collect()
    }

    /// `d x n` matrix of basis values at the origin.
    pub fn origin_matrix(&self) -> Matrix<Rational> {
        Matrix::from_rows(self.basis.iter().map(VectorField::eval_origin).collect(), self.nvars())
    }

    pub fn is_transitive_at_origin(&self) -> bool {
        self.origin_matrix().rank() == self.nvars()
    }

    pub fn derived_series(&self) -> SeriesReport {
        derived_series(&self.sc, Some(&self.origin_matrix()))
    }

    pub fn lower_central_series(&self) -> SeriesReport {
        lower_central_series(&self.sc, Some(&self.origin_matrix()))
    }

    pub fn is_solvable(&self) -> bool {
        is_solvable(&self.sc)
    }

    pub fn is_nilpotent(&self) -> bool {
        is_nilpotent(&self.sc)
    }

    pub fn dim_at_origin(&self, s: &Subspace) -> usize {
        dim_at_origin(s, &self.origin_matrix())
    }

    /// Subalgebra spanned by the fields of `s` as an algebra in its own right.
    pub fn subalgebra(&self, s: &Subspace) -> Result<Self> {
        Self::from_basis(self.ctx.clone(), self.fields_of(s))
    }

    /// Projection `X -> X̄` onto the kept variables, killing the ideal `ideal`
    /// whose members point only along dropped directions.
    pub fn quotient_map(&self, ideal: &Ideal, drop_vars: &[usize]) -> Result<Self> {
        let n = self.nvars();
        if drop_vars.iter().any(|&v| v >= n) {
            return Err(Error::InvalidArgument("variable index out of range".into()));
        }
        let keep: Vec<usize> = (0..n).filter(|i| !drop_vars.contains(i)).collect();
        if keep.is_empty() {
            return Err(Error::InvalidArgument("cannot drop every variable".into()));
        }
        if !ideal.is_ideal(&self.sc) {
            return Err(Error::NotProjectable("subspace is not an ideal".into()));
        }
        for m in self.fields_of(ideal) {
            if keep.iter().any(|&k| !m.component(k).is_zero()) {
                return Err(Error::NotProjectable(
                    "ideal member has a component along a kept variable".into(),
                ));
            }
        }
        let names: Vec<&str> = keep.iter().map(|&i| self.ctx.names()[i].as_str()).collect();
        let qctx = VarContext::new(&names)?;
        let project = |f: &VectorField| -> Result<VectorField> {
            let comps = keep
                .iter()
                .map(|&k| f.component(k).restrict(&keep))
                .collect::<Result<Vec<_>>>()?;
            Ok(VectorField::new(qctx.clone(), comps))
        };
        let images = self.basis.iter().map(project).collect::<Result<Vec<_>>>()?;
        let reduced = span_reduce(&images)?;
        let bar = Self::from_basis(qctx.clone(), reduced)?;
        // homomorphism check: image of [e_i, e_j] equals [ē_i, ē_j]
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                let lhs = project(&self.basis[i].bracket(&self.basis[j])?)?;
                let rhs = images[i].bracket(&images[j])?;
                if lhs != rhs {
                    return Err(Error::NotProjectable(format!(
                        "projection does not respect the bracket of elements {i} and {j}"
                    )));
                }
            }
        }
        Ok(bar)
    }
}

/// Coordinates of `v` as a sparse vector (helper for echelon-based code).
pub fn coords_sparse(v: &[Rational]) -> crate::linalg::SparseVec<usize, Rational> {
    dense_to_sparse(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use crate::text::parse_fields;

    fn alg(vars: &[&str], fields: &[&str]) -> LieAlgebraVF {
        let ctx = VarContext::new(vars).unwrap();
        let gens = parse_fields(&ctx, fields).unwrap();
        LieAlgebraVF::closure(ctx, &gens, 64).unwrap()
    }

    #[test]
    fn span_reduce_examples() {
        let ctx = VarContext::new(&["x", "y"]).unwrap();
        let f = parse_fields(&ctx, &["d_x", "2*d_x", "d_y"]).unwrap();
        assert_eq!(span_reduce(&f).unwrap(), vec![f[0].clone(), f[2].clone()]);
        assert!(span_reduce(&[]).unwrap().is_empty());
        let g = parse_fields(&ctx, &["y*d_x", "y*d_x + d_y", "d_y"]).unwrap();
        assert_eq!(span_reduce(&g).unwrap(), vec![g[0].clone(), g[1].clone()]);
    }

    #[test]
    fn closure_examples() {
        assert_eq!(alg(&["y"], &["d_y", "y*d_y"]).dim(), 2);
        assert_eq!(
            alg(&["x", "y"], &["d_x", "d_y", "x*d_x", "y*d_y", "y^2*d_x", "y*d_x"]).dim(),
            6
        );
        assert_eq!(alg(&["x"], &["x^2*d_x"]).dim(), 1);
        assert_eq!(alg(&["x"], &["d_x", "x^2*d_x"]).dim(), 3);
        let ctx = VarContext::new(&["x"]).unwrap();
        let gens = parse_fields(&ctx, &["d_x", "x^3*d_x"]).unwrap();
        assert_eq!(
            LieAlgebraVF::closure(ctx, &gens, 8).unwrap_err(),
            Error::DimensionCapExceeded(8)
        );
    }

    #[test]
    fn structure_constant_examples() {
        let l = alg(&["y"], &["d_y", "y*d_y"]);
        assert_eq!(*l.structure().get(0, 1, 0), q(1));
        assert_eq!(*l.structure().get(1, 0, 0), q(-1));
        let ab = alg(&["x", "y"], &["d_x", "d_y"]);
        assert!((0..2).all(|i| (0..2).all(|j| (0..2).all(|k| ab.structure().get(i, j, k).is_zero()))));
        let h = alg(&["x", "y"], &["d_y", "y*d_x", "d_x"]);
        assert_eq!(h.dim(), 3);
        assert_eq!(*h.structure().get(0, 1, 2), q(1));
        assert!(h.structure().is_antisymmetric());
        assert!(h.structure().satisfies_jacobi());
    }

    #[test]
    fn series_examples() {
        let l = alg(&["x", "y"], &["d_x", "d_y", "y*d_x", "y^2*d_x"]);
        let lcs = l.lower_central_series();
        assert_eq!(lcs.dims, vec![4, 2, 1, 0]);
        assert_eq!(lcs.height, Some(3));
        assert_eq!(lcs.dims_at_origin, vec![2, 1, 1, 0]);
        let h = alg(&["y", "z"], &["d_y", "d_z", "y*d_z"]);
        assert_eq!(h.lower_central_series().height, Some(2));
        let ab = alg(&["x", "y"], &["d_x", "d_y"]);
        let d = ab.derived_series();
        assert_eq!(d.dims, vec![2, 0]);
        assert_eq!(d.height, Some(0));
        let s = alg(&["y"], &["d_y", "y*d_y"]);
        assert!(s.is_solvable() && !s.is_nilpotent());
    }

    #[test]
    fn transitivity() {
        assert!(alg(&["x", "y"], &["d_x", "d_y"]).is_transitive_at_origin());
        assert!(!alg(&["x", "y"], &["d_x", "y*d_x"]).is_transitive_at_origin());
    }

    #[test]
    fn quotient_examples() {
        let l = alg(&["x", "y"], &["d_x", "d_y", "x*d_x", "y*d_y", "y^2*d_x", "y*d_x"]);
        let dx = l.coordinates_of(&l.basis()[0]).unwrap();
        let ideal = Subspace::span(6, [dx]);
        let bar = l.quotient_map(&ideal, &[0]).unwrap();
        assert_eq!(bar.dim(), 2);
        assert_eq!(bar.ctx().names(), &["y".to_string()]);

        let ab = alg(&["x", "y"], &["d_x", "d_y"]);
        let dy = Subspace::span(2, [vec![q(0), q(1)]]);
        assert_eq!(ab.quotient_map(&dy, &[1]).unwrap().dim(), 1);

        let h = alg(&["x", "y"], &["y*d_x", "d_x", "d_y"]);
        let zero = Subspace::zero(3);
        assert!(matches!(h.quotient_map(&zero, &[1]), Err(Error::NotProjectable(_))));
    }
}
