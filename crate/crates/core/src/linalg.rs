//! Exact linear algebra over a [`Field`]: dense matrices with row reduction,
//! kernels and inverses, and a sparse incremental echelon basis used for span
//! computations.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Field;

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|r| self.row(r).to_vec()))
            .finish()
    }
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Self {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let p = a.clone() * b;
                        out[(i, j)] += &p;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = T::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a.clone() * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.rows.min(self.cols) {
            acc += &self[(i, i)];
        }
        acc
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = T::one() / m[(row, col)].clone();
            for c in col..m.cols {
                let v = m[(row, c)].clone() * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for c in col..m.cols {
                    if m[(row, c)].is_zero() {
                        continue;
                    }
                    let d = f.clone() * &m[(row, c)];
                    m[(r, c)] -= &d;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Basis of the left null space `{y : y A = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<T>> {
        self.transpose().kernel()
    }

    /// One solution of `A x = b`, if the system is consistent.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = b[r].clone();
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red[(i, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = T::one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = red[(r, n + c)].clone();
            }
        }
        Some(inv)
    }

    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let n = self.rows;
        let mut det = T::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return T::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m[(col, col)].clone();
            det *= &pivot;
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone() / &pivot;
                for c in col..n {
                    let d = f.clone() * &m[(col, c)];
                    m[(r, c)] -= &d;
                }
            }
        }
        det
    }

    /// `A^k = 0` for some `k <= n`.
    pub fn is_nilpotent(&self) -> bool {
        assert_eq!(self.rows, self.cols);
        let mut p = self.clone();
        for _ in 0..self.rows {
            if p.is_zero() {
                return true;
            }
            p = p.mul(self);
        }
        p.is_zero()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

/// Sparse vector keyed by an ordered column type.
pub type SparseVec<K, T> = BTreeMap<K, T>;

pub(crate) fn axpy<K: Ord + Clone, T: Field>(y: &mut SparseVec<K, T>, a: &T, x: &SparseVec<K, T>) {
    for (k, v) in x {
        let d = a.clone() * v;
        match y.get_mut(k) {
            Some(slot) => {
                *slot += &d;
                if slot.is_zero() {
                    y.remove(k);
                }
            }
            None => {
                if !d.is_zero() {
                    y.insert(k.clone(), d);
                }
            }
        }
    }
}

/// Incrementally built reduced echelon basis of a span of sparse vectors.
///
/// Every stored row has pivot coefficient one and its pivot column appears in
/// no other row. Each row also carries its expression as a combination of the
/// accepted input vectors, so membership tests return coordinates.
#[derive(Debug, Clone)]
pub struct SparseEchelon<K: Ord + Clone, T: Field> {
    rows: Vec<(K, SparseVec<K, T>, Vec<T>)>,
    accepted: usize,
}

impl<K: Ord + Clone, T: Field> Default for SparseEchelon<K, T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone, T: Field> SparseEchelon<K, T> {
    pub fn new() -> Self {
        Self {
            rows: Vec::new(),
            accepted: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.accepted
    }

    /// Reduces `v` against the basis. Returns the remainder and the
    /// coordinates (w.r.t. accepted inputs) of the removed part.
    pub fn reduce(&self, v: &SparseVec<K, T>) -> (SparseVec<K, T>, Vec<T>) {
        let mut rem = v.clone();
        let mut coords = vec![T::zero(); self.accepted];
        for (pivot, row, comb) in &self.rows {
            let Some(c) = rem.get(pivot).cloned() else {
                continue;
            };
            axpy(&mut rem, &(-c.clone()), row);
            for (slot, w) in coords.iter_mut().zip(comb) {
                if !w.is_zero() {
                    *slot += &(c.clone() * w);
                }
            }
        }
        (rem, coords)
    }

    pub fn contains(&self, v: &SparseVec<K, T>) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Coordinates of `v` in terms of the accepted inputs, if `v` is in the span.
    pub fn express(&self, v: &SparseVec<K, T>) -> Option<Vec<T>> {
        let (rem, coords) = self.reduce(v);
        rem.is_empty().then_some(coords)
    }

    /// Adds `v` if it is independent; returns whether it was accepted.
    pub fn insert(&mut self, v: &SparseVec<K, T>) -> bool {
        let (rem, coords) = self.reduce(v);
        let Some((pivot, lead)) = rem.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = T::one() / lead;
        let row: SparseVec<K, T> = rem.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        // new row = (v - reduced part) * inv, as a combination of inputs
        let mut comb: Vec<T> = coords.into_iter().map(|c| -(c * &inv)).collect();
        comb.push(inv);
        for (_, other, other_comb) in self.rows.iter_mut() {
            other_comb.push(T::zero());
            let Some(c) = other.get(&pivot).cloned() else {
                continue;
            };
            axpy(other, &(-c.clone()), &row);
            for (slot, w) in other_comb.iter_mut().zip(&comb) {
                if !w.is_zero() {
                    *slot -= &(c.clone() * w);
                }
            }
        }
        self.rows.push((pivot, row, comb));
        self.accepted += 1;
        true
    }
}

pub fn dense_to_sparse<T: Field>(v: &[T]) -> SparseVec<usize, T> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}
