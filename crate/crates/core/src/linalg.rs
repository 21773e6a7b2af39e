//! Dense matrices over a generic scalar.
//!
//! `det` is fraction-free (Bareiss) and therefore exact for integer and
//! rational scalars alike; `solve` and `inverse` need a [`Field`].

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_columns(cols: &[Vec<S>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
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

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn mul(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                }
            }
        }
        out
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Determinant by fraction-free elimination. Exact for integer scalars.
    pub fn det(&self) -> S {
        assert!(self.is_square(), "det of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return S::one();
        }
        let mut a = self.clone();
        let mut sign = S::one();
        let mut prev = S::one();
        for k in 0..n {
            let Some(p) = pivot_row(&a, k, k) else {
                return S::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[(k, k)].clone() * a[(i, j)].clone()
                        - a[(i, k)].clone() * a[(k, j)].clone();
                    a[(i, j)] = v / prev.clone();
                }
                a[(i, k)] = S::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    pub fn rank(&self) -> usize
    where
        S: Field,
    {
        let (_, rank) = self.echelon();
        rank
    }

    fn echelon(&self) -> (Matrix<S>, usize)
    where
        S: Field,
    {
        let mut a = self.clone();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = pivot_row(&a, r, c) else { continue };
            a.swap_rows(p, r);
            let piv = a[(r, c)].clone();
            for i in r + 1..a.rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let factor = a[(i, c)].clone() / piv.clone();
                for j in c..a.cols {
                    let v = a[(i, j)].clone() - factor.clone() * a[(r, j)].clone();
                    a[(i, j)] = v;
                }
            }
            r += 1;
        }
        (a, r)
    }

    /// Solves `A x = b`. Fails with [`Error::Singular`] when `det(A) = 0`.
    pub fn solve(&self, b: &[S]) -> Result<Vec<S>>
    where
        S: Field,
    {
        if !self.is_square() || b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve with a {}x{} matrix and a length-{} right-hand side",
                self.rows,
                self.cols,
                b.len()
            )));
        }
        let cols: Vec<Vec<S>> = vec![b.to_vec()];
        let x = self.solve_many(&Matrix::from_columns(&cols))?;
        Ok(x.column(0))
    }

    pub fn inverse(&self) -> Result<Matrix<S>>
    where
        S: Field,
    {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        self.solve_many(&Matrix::identity(self.rows))
    }

    fn solve_many(&self, rhs: &Matrix<S>) -> Result<Matrix<S>>
    where
        S: Field,
    {
        let n = self.rows;
        let m = rhs.cols;
        let mut a = self.clone();
        let mut b = rhs.clone();
        for k in 0..n {
            let p = pivot_row(&a, k, k).ok_or(Error::Singular)?;
            a.swap_rows(p, k);
            b.swap_rows(p, k);
            let piv = a[(k, k)].clone();
            for i in 0..n {
                if i == k || a[(i, k)].is_zero() {
                    continue;
                }
                let factor = a[(i, k)].clone() / piv.clone();
                for j in k..n {
                    let v = a[(i, j)].clone() - factor.clone() * a[(k, j)].clone();
                    a[(i, j)] = v;
                }
                for j in 0..m {
                    let v = b[(i, j)].clone() - factor.clone() * b[(k, j)].clone();
                    b[(i, j)] = v;
                }
            }
        }
        for k in 0..n {
            let piv = a[(k, k)].clone();
            for j in 0..m {
                b[(k, j)] = b[(k, j)].clone() / piv.clone();
            }
        }
        Ok(b)
    }
}

/// Row at or below `from` with the largest magnitude entry in column `col`.
/// Any nonzero pivot is exact for rationals; the magnitude rule only helps floats.
fn pivot_row<S: Scalar>(a: &Matrix<S>, from: usize, col: usize) -> Option<usize> {
    let mut best: Option<(usize, S)> = None;
    for i in from..a.rows {
        let v = a[(i, col)].abs();
        if v.is_zero() {
            continue;
        }
        match &best {
            Some((_, b)) if *b >= v => {}
            _ => best = Some((i, v)),
        }
    }
    best.map(|(i, _)| i)
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

impl<S: fmt::Debug> fmt::Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[S]> = self.data.chunks(self.cols.max(1)).collect();
        f.debug_list().entries(rows).finish()
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    assert_eq!(a.len(), b.len(), "dimension mismatch in dot");
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn add<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn sub<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn scale<S: Scalar>(a: &[S], s: &S) -> Vec<S> {
    a.iter().map(|x| x.clone() * s.clone()).collect()
}

/// Vector orthogonal to the `n - 1` rows of `rows` (each of length `n`),
/// given by signed maximal minors. Zero iff the rows are dependent.
pub fn generalized_cross<S: Scalar>(rows: &[Vec<S>]) -> Vec<S> {
    let n = rows.len() + 1;
    assert!(rows.iter().all(|r| r.len() == n), "generalized_cross needs n-1 vectors in n dims");
    (0..n)
        .map(|k| {
            let minor: Vec<Vec<S>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, x)| x.clone()).collect())
                .collect();
            let d = if minor.is_empty() { S::one() } else { Matrix::from_rows(minor).det() };
            if (n - 1 + k) % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect()
}
