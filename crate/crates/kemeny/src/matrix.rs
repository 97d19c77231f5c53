//! Dense matrices over any [`Scalar`], with Gauss-Jordan inversion.
//!
//! Pivoting always selects the remaining row whose pivot-column entry has the
//! largest magnitude. For exact scalars this bounds intermediate growth and
//! makes the elimination order (hence the work done) deterministic.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be >= 1");
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
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

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must match");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let term = a.clone() * other[(k, j)].clone();
                    out[(i, j)] += term;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() + other[(i, j)].clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() - other[(i, j)].clone()
        })
    }

    pub fn scale(&self, factor: &S) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].clone() * factor.clone()
        })
    }

    pub fn row_sums(&self) -> Vec<S> {
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for j in 0..self.cols {
                    acc += self[(i, j)].clone();
                }
                acc
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return false;
                }
            }
        }
        true
    }

    /// Gauss-Jordan inverse with magnitude pivoting.
    pub fn inverse(&self) -> Result<Self> {
        assert!(self.is_square(), "inverse requires a square matrix");
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = Self::identity(n);

        for col in 0..n {
            let pivot_row = (col..n)
                .filter(|&r| !work[(r, col)].is_zero())
                .max_by(|&a, &b| {
                    work[(a, col)]
                        .abs()
                        .partial_cmp(&work[(b, col)].abs())
                        .expect("scalar comparison failed")
                })
                .ok_or(Error::SingularMatrix)?;
            work.swap_rows(col, pivot_row);
            inv.swap_rows(col, pivot_row);

            let pivot = work[(col, col)].clone();
            for j in 0..n {
                work[(col, j)] = work[(col, j)].clone() / pivot.clone();
                inv[(col, j)] = inv[(col, j)].clone() / pivot.clone();
            }
            for r in 0..n {
                if r == col || work[(r, col)].is_zero() {
                    continue;
                }
                let factor = work[(r, col)].clone();
                for j in 0..n {
                    let w = work[(col, j)].clone() * factor.clone();
                    work[(r, j)] -= w;
                    let v = inv[(col, j)].clone() * factor.clone();
                    inv[(r, j)] -= v;
                }
            }
        }
        Ok(inv)
    }

    /// Solves `self * x = rhs` by elimination with the same pivoting rule.
    pub fn solve(&self, rhs: &[S]) -> Result<Vec<S>> {
        assert!(self.is_square(), "solve requires a square matrix");
        assert_eq!(rhs.len(), self.rows);
        let n = self.rows;
        let mut work = self.clone();
        let mut b = rhs.to_vec();

        for col in 0..n {
            let pivot_row = (col..n)
                .filter(|&r| !work[(r, col)].is_zero())
                .max_by(|&x, &y| {
                    work[(x, col)]
                        .abs()
                        .partial_cmp(&work[(y, col)].abs())
                        .expect("scalar comparison failed")
                })
                .ok_or(Error::SingularMatrix)?;
            work.swap_rows(col, pivot_row);
            b.swap(col, pivot_row);

            let pivot = work[(col, col)].clone();
            for r in (col + 1)..n {
                if work[(r, col)].is_zero() {
                    continue;
                }
                let factor = work[(r, col)].clone() / pivot.clone();
                for j in col..n {
                    let w = work[(col, j)].clone() * factor.clone();
                    work[(r, j)] -= w;
                }
                let v = b[col].clone() * factor;
                b[r] -= v;
            }
        }

        for col in (0..n).rev() {
            let mut acc = b[col].clone();
            for j in (col + 1)..n {
                acc -= work[(col, j)].clone() * b[j].clone();
            }
            b[col] = acc / work[(col, col)].clone();
        }
        Ok(b)
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}
