//! Small dense row-major matrices over a [`Scalar`], with rank-revealing
//! elimination (exact pivoting for rationals, `tol · ‖M‖` pivot threshold for
//! floats).

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::{ConvertScalar, Scalar, Tolerance};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { expected: c, found: bad.len() });
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let converted = rows
            .iter()
            .map(|row| row.iter().map(|&v| T::from_i64(v)).collect())
            .collect();
        Self::from_rows(converted).expect("ragged rows")
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn convert<U: Scalar>(&self) -> Matrix<U>
    where
        T: ConvertScalar<U>,
    {
        self.map(|v| v.convert())
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(|v| v.to_f64())
    }

    pub fn to_nalgebra(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_f64())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() + other[(i, j)].clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() - other[(i, j)].clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|v| v.clone() * c.clone())
    }

    pub fn neg(&self) -> Self {
        self.map(|v| -v.clone())
    }

    /// In-place `self += c · other`.
    pub fn add_scaled(&mut self, c: &T, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a = a.clone() + c.clone() * b.clone();
            }
        }
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        (0..self.rows).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// Commutator `self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Largest absolute entry, as a float.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, v| acc.max(v.magnitude()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |acc, (a, b)| acc.max((a.clone() - b.clone()).magnitude()))
    }

    /// Sum of squared entries.
    pub fn frobenius_sq(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, v| acc + v.clone() * v.clone())
    }

    /// Entrywise inner product `Σ a_ij b_ij`.
    pub fn frobenius_dot(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn is_zero_within(&self, tol: Tolerance) -> bool {
        self.data.iter().all(|v| v.is_negligible(tol.value()))
    }

    pub fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols)
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| (a.clone() - b.clone()).is_negligible(tol.value()))
    }

    pub fn is_symmetric(&self, tol: Tolerance) -> bool {
        self.is_square() && self.approx_eq(&self.transpose(), tol)
    }

    pub fn is_antisymmetric(&self, tol: Tolerance) -> bool {
        self.is_square() && self.approx_eq(&self.transpose().neg(), tol)
    }

    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Self {
        Self::from_fn(nr, nc, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    /// Vertical concatenation.
    pub fn stack(blocks: &[Self]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "stacked blocks need equal widths");
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        Matrix { rows, cols, data }
    }

    fn pivot_threshold(&self, tol: Tolerance) -> f64 {
        tol.value() * self.max_abs()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self, tol: Tolerance) -> (Self, Vec<usize>) {
        let threshold = self.pivot_threshold(tol);
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            // partial pivoting by magnitude
            let best = (row..a.rows)
                .filter(|&i| !a[(i, col)].is_negligible(threshold))
                .max_by(|&i, &j| {
                    a[(i, col)]
                        .magnitude()
                        .partial_cmp(&a[(j, col)].magnitude())
                        .unwrap_or(std::cmp::Ordering::Equal)
                });
            let Some(best) = best else {
                for i in row..a.rows {
                    a[(i, col)] = T::zero();
                }
                continue;
            };
            a.swap_rows(row, best);
            let p = a[(row, col)].clone();
            for j in col..a.cols {
                a[(row, j)] = a[(row, j)].clone() / p.clone();
            }
            for i in 0..a.rows {
                if i == row {
                    continue;
                }
                let factor = a[(i, col)].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in col..a.cols {
                    let v = factor.clone() * a[(row, j)].clone();
                    a[(i, j)] = a[(i, j)].clone() - v;
                }
                a[(i, col)] = T::zero();
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, tol: Tolerance) -> usize {
        self.rref(tol).1.len()
    }

    /// Basis of `{x : self · x = 0}`.
    pub fn null_space(&self, tol: Tolerance) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref(tol);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (k, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(k, f)].clone();
                }
                v
            })
            .collect()
    }

    /// Inverse via Gauss–Jordan; `None` if singular at the given tolerance.
    pub fn inverse(&self, tol: Tolerance) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Self::identity(n));
        // the threshold must come from the left block only
        let threshold = self.pivot_threshold(tol);
        for col in 0..n {
            let best = (col..n)
                .filter(|&i| !aug[(i, col)].is_negligible(threshold))
                .max_by(|&i, &j| {
                    aug[(i, col)]
                        .magnitude()
                        .partial_cmp(&aug[(j, col)].magnitude())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })?;
            aug.swap_rows(col, best);
            let p = aug[(col, col)].clone();
            for j in 0..2 * n {
                aug[(col, j)] = aug[(col, j)].clone() / p.clone();
            }
            for i in 0..n {
                if i == col {
                    continue;
                }
                let factor = aug[(i, col)].clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..2 * n {
                    let v = factor.clone() * aug[(col, j)].clone();
                    aug[(i, j)] = aug[(i, j)].clone() - v;
                }
            }
        }
        Some(aug.block(0, n, n, n))
    }

    /// Indices of a maximal linearly independent subset of the columns, chosen
    /// greedily from the left.
    pub fn independent_columns(&self, tol: Tolerance) -> Vec<usize> {
        self.rref(tol).1
    }
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    assert_eq!(a.len(), b.len(), "dot product length mismatch");
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| {
        if x.is_zero() || y.is_zero() {
            acc
        } else {
            acc + x.clone() * y.clone()
        }
    })
}

/// `y += c · x`.
pub fn axpy<T: Scalar>(y: &mut [T], c: &T, x: &[T]) {
    assert_eq!(x.len(), y.len());
    if c.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = yi.clone() + c.clone() * xi.clone();
        }
    }
}

pub fn scaled<T: Scalar>(c: &T, x: &[T]) -> Vec<T> {
    x.iter().map(|v| c.clone() * v.clone()).collect()
}

pub fn sub_vec<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn add_vec<T: Scalar>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn unit<T: Scalar>(n: usize, k: usize) -> Vec<T> {
    (0..n).map(|i| if i == k { T::one() } else { T::zero() }).collect()
}

pub fn max_abs_vec<T: Scalar>(v: &[T]) -> f64 {
    v.iter().fold(0.0, |acc, x| acc.max(x.magnitude()))
}

pub fn max_abs_diff_vec<T: Scalar>(a: &[T], b: &[T]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0, |acc, (x, y)| acc.max((x.clone() - y.clone()).magnitude()))
}

/// Rank of a family of vectors of common length `n`.
pub fn rank_of<T: Scalar>(n: usize, vectors: &[Vec<T>], tol: Tolerance) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_columns(n, vectors).rank(tol)
}
