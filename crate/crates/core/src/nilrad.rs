//! Nilradical of a solvable Lie algebra over the rationals.
//!
//! The adjoint operators generate an associative matrix algebra (the
//! envelope). In characteristic zero its radical is the kernel of the trace
//! form, and for solvable `L` the nilradical is the preimage of that radical
//! under `ad`. The naive kernel of the Killing form on `L` is not enough; see
//! [`killing_radical`] and the trap algebra in the tests.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::liealg::{is_solvable, Ideal, LieAlgebraVF, SeriesKind, SeriesReport, StructureConstants, Subspace};
use crate::linalg::{Matrix, SparseEchelon, SparseVec};
use crate::Rational;

/// Sparse square matrix keyed by `(row, col)`.
pub type SparseMatrix = SparseVec<(usize, usize), Rational>;

pub fn to_dense(d: usize, s: &SparseMatrix) -> Matrix<Rational> {
    let mut m = Matrix::zeros(d, d);
    for (&(r, c), v) in s {
        m[(r, c)] = v.clone();
    }
    m
}

fn sparse_mul(a: &SparseMatrix, b_rows: &[Vec<(usize, Rational)>]) -> SparseMatrix {
    let mut out: SparseMatrix = BTreeMap::new();
    for (&(r, k), x) in a {
        for (c, y) in &b_rows[k] {
            let e = out.entry((r, *c)).or_insert_with(Rational::zero);
            *e += x * y;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn rows_of(d: usize, s: &SparseMatrix) -> Vec<Vec<(usize, Rational)>> {
    let mut rows = vec![Vec::new(); d];
    for (&(r, c), v) in s {
        rows[r].push((c, v.clone()));
    }
    rows
}

/// `tr(a b)`.
fn trace_product(a: &SparseMatrix, b: &SparseMatrix) -> Rational {
    let mut t = Rational::zero();
    for (&(r, c), x) in a {
        if let Some(y) = b.get(&(c, r)) {
            t += x * y;
        }
    }
    t
}

/// Adjoint matrices of a basis and, once computed, a basis of their envelope.
#[derive(Debug, Clone)]
pub struct AdWorkspace {
    pub dim: usize,
    pub ad: Vec<SparseMatrix>,
    pub envelope: Option<Vec<SparseMatrix>>,
}

impl AdWorkspace {
    pub fn ad_dense(&self, i: usize) -> Matrix<Rational> {
        to_dense(self.dim, &self.ad[i])
    }
}

/// `(ad e_i)_{kj} = c_{ij}^k`.
pub fn adjoint_matrices(sc: &StructureConstants) -> AdWorkspace {
    let d = sc.dim();
    let ad = (0..d)
        .map(|i| {
            let mut m = BTreeMap::new();
            for j in 0..d {
                for k in 0..d {
                    let c = sc.get(i, j, k);
                    if !c.is_zero() {
                        m.insert((k, j), c.clone());
                    }
                }
            }
            m
        })
        .collect();
    AdWorkspace {
        dim: d,
        ad,
        envelope: None,
    }
}

/// Basis of the non-unital associative algebra generated by the ad matrices.
pub fn associative_envelope(mut w: AdWorkspace) -> AdWorkspace {
    let gens: Vec<Vec<Vec<(usize, Rational)>>> = w.ad.iter().map(|g| rows_of(w.dim, g)).collect();
    let mut ech: SparseEchelon<(usize, usize), Rational> = SparseEchelon::new();
    let mut basis: Vec<SparseMatrix> = Vec::new();
    for g in &w.ad {
        if ech.insert(g) {
            basis.push(g.clone());
        }
    }
    let mut next = 0;
    while next < basis.len() {
        let a = basis[next].clone();
        for g in &gens {
            let p = sparse_mul(&a, g);
            if !p.is_empty() && ech.insert(&p) {
                basis.push(p);
            }
        }
        next += 1;
    }
    w.envelope = Some(basis);
    w
}

fn envelope_of(w: &AdWorkspace) -> &[SparseMatrix] {
    w.envelope.as_deref().expect("envelope not computed")
}

/// Basis of `J = { a in envelope : tr(a b) = 0 for all b in envelope }`.
pub fn trace_radical(w: &AdWorkspace) -> Vec<SparseMatrix> {
    let env = envelope_of(w);
    let m = env.len();
    if m == 0 {
        return Vec::new();
    }
    let mut gram = Matrix::zeros(m, m);
    for a in 0..m {
        for b in a..m {
            let t = trace_product(&env[a], &env[b]);
            gram[(b, a)] = t.clone();
            gram[(a, b)] = t;
        }
    }
    gram.kernel()
        .into_iter()
        .map(|coeffs| {
            let mut acc: SparseMatrix = BTreeMap::new();
            for (c, e) in coeffs.iter().zip(env) {
                if !c.is_zero() {
                    crate::linalg::axpy(&mut acc, c, e);
                }
            }
            acc
        })
        .collect()
}

/// Nilradical of a solvable algebra given by structure constants, with its
/// postconditions checked.
pub fn nilradical_of(sc: &StructureConstants) -> Result<Ideal> {
    if !is_solvable(sc) {
        return Err(Error::NotSolvable);
    }
    let d = sc.dim();
    let w = associative_envelope(adjoint_matrices(sc));
    let env = envelope_of(&w);
    // ad_x lies in the envelope, so ad_x is in J iff tr(ad_x b) = 0 on a basis.
    let mut m = Matrix::zeros(env.len().max(1), d);
    for (b, e) in env.iter().enumerate() {
        for i in 0..d {
            m[(b, i)] = trace_product(&w.ad[i], e);
        }
    }
    let nr = Subspace::span(d, m.kernel());
    verify_nilradical(sc, &nr)?;
    Ok(nr)
}

fn verify_nilradical(sc: &StructureConstants, nr: &Ideal) -> Result<()> {
    if !nr.is_ideal(sc) {
        return Err(Error::InternalCertificateFailure("nilradical is not an ideal".into()));
    }
    if !nr.is_nilpotent_subalgebra(sc) {
        return Err(Error::InternalCertificateFailure("nilradical is not nilpotent".into()));
    }
    let full = Subspace::full(sc.dim());
    if !Subspace::bracket_span(sc, &full, &full).is_subspace_of(nr) {
        return Err(Error::InternalCertificateFailure(
            "derived algebra is not inside the nilradical".into(),
        ));
    }
    Ok(())
}

pub fn nilradical(l: &LieAlgebraVF) -> Result<Ideal> {
    nilradical_of(l.structure())
}

/// `L^0 = L`, `L^1 = nr(L)`, `L^{i+1} = [nr(L), L^i]`.
pub fn nilradical_series_of(sc: &StructureConstants, origin: Option<&Matrix<Rational>>) -> Result<SeriesReport> {
    let nr = nilradical_of(sc)?;
    let mut chain = vec![Subspace::full(sc.dim()), nr.clone()];
    while !chain.last().unwrap().is_zero() {
        let next = Subspace::bracket_span(sc, &nr, chain.last().unwrap());
        if next.dim() == chain.last().unwrap().dim() {
            return Err(Error::InternalCertificateFailure("nilradical series stalls".into()));
        }
        chain.push(next);
    }
    Ok(SeriesReport::build(SeriesKind::Nilradical, 0, chain, origin))
}

pub fn nilradical_series(l: &LieAlgebraVF) -> Result<SeriesReport> {
    nilradical_series_of(l.structure(), Some(&l.origin_matrix()))
}

/// Kernel of the Killing form on `L`. This is not the nilradical in
/// general; it is kept to exhibit the difference.
pub fn killing_radical(sc: &StructureConstants) -> Subspace {
    let w = adjoint_matrices(sc);
    let d = sc.dim();
    let mut k = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            k[(i, j)] = trace_product(&w.ad[i], &w.ad[j]);
        }
    }
    Subspace::span(d, k.kernel())
}

/// `ad_x` is nilpotent (power test).
pub fn ad_is_nilpotent(sc: &StructureConstants, x: &[Rational]) -> bool {
    sc.ad_of(x).is_nilpotent()
}
