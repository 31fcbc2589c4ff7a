//! Independent reference computations shared by the property suites and
//! the acceptance target.

#![allow(dead_code)]

use lievec::linalg::{dense_to_sparse, Matrix, SparseEchelon};
use lievec::liealg::{StructureConstants, Subspace};
use lievec::scalar::{q, qf};
use lievec::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn unit(d: usize, i: usize) -> Vec<Rational> {
    let mut e = vec![q(0); d];
    e[i] = q(1);
    e
}

fn flatten(m: &Matrix<Rational>) -> Vec<Rational> {
    m.to_rows().into_iter().flatten().collect()
}

fn lin_comb(ms: &[Matrix<Rational>], c: &[Rational]) -> Matrix<Rational> {
    let d = ms[0].rows();
    let mut out: Matrix<Rational> = Matrix::zeros(d, d);
    for (m, ci) in ms.iter().zip(c) {
        for i in 0..d {
            for j in 0..d {
                out[(i, j)] = out[(i, j)].clone() + m[(i, j)].clone() * ci;
            }
        }
    }
    out
}

/// `ad_x^d == 0` by repeated multiplication.
pub fn ad_nilpotent(sc: &StructureConstants, x: &[Rational]) -> bool {
    let a = sc.ad_of(x);
    let mut p = a.clone();
    for _ in 1..sc.dim() {
        p = p.mul(&a);
    }
    p.is_zero()
}

/// Nilradical of a solvable algebra from power sums of eigenvalues.
///
/// With `p_k(y) = tr(ad_y^k)`, an element `v` is ad-nilpotent iff every
/// directional derivative `D_v p_k = k tr(ad_y^(k-1) ad_v)` vanishes
/// identically in `y`. The span of `ad_y^m` is sampled at random integer
/// points until it stops growing.
pub fn nilradical_oracle(sc: &StructureConstants, seed: u64) -> Subspace {
    let d = sc.dim();
    let ad: Vec<Matrix<Rational>> = (0..d).map(|i| sc.ad_of(&unit(d, i))).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ech = SparseEchelon::new();
    let mut span: Vec<Matrix<Rational>> = Vec::new();
    let mut stable = 0;
    while stable < 8 {
        let y: Vec<Rational> = (0..d).map(|_| q(rng.gen_range(-3..=3))).collect();
        let a = lin_comb(&ad, &y);
        let mut p = Matrix::identity(d);
        let mut grew = false;
        for _ in 0..d {
            if ech.insert(&dense_to_sparse(&flatten(&p))) {
                span.push(p.clone());
                grew = true;
            }
            p = p.mul(&a);
        }
        stable = if grew { 0 } else { stable + 1 };
    }
    let rows: Vec<Vec<Rational>> = span
        .iter()
        .map(|p| (0..d).map(|j| p.mul(&ad[j]).trace()).collect())
        .collect();
    let m = Matrix::from_rows(rows, d);
    Subspace::span(d, m.kernel())
}

/// `[x, v1] = v1`, and `ad_x` acts on `(v2, v3)` by the rotation-scaling
/// with eigenvalues `1/4 ± 3/4 i`, so `tr(ad_x^2) = 0`.
pub fn trap() -> StructureConstants {
    StructureConstants::from_upper(4, |i, j| match (i, j) {
        (0, 1) => vec![q(0), q(1), q(0), q(0)],
        (0, 2) => vec![q(0), q(0), qf(1, 4), qf(3, 4)],
        (0, 3) => vec![q(0), q(0), qf(-3, 4), qf(1, 4)],
        _ => vec![q(0); 4],
    })
}

/// Weight list from origin dimensions: the index of each drop, repeated by
/// the size of the drop.
pub fn weights_from_dims(start: usize, dims: &[usize]) -> Vec<u32> {
    let mut w = Vec::new();
    for i in 0..dims.len() - 1 {
        for _ in dims[i + 1]..dims[i] {
            w.push((start + i) as u32);
        }
    }
    w
}
