//! Dense row-major matrices and the two rank backends.
//!
//! [`Fp`] matrices are reduced exactly by Gauss-Jordan elimination; `f64`
//! matrices go through a singular value decomposition and count singular
//! values above `max(rows, cols) * eps * sigma_max`.

use alloc::vec::Vec;
use core::fmt::Debug;
use core::ops::{Add, Mul, Neg, Sub};

use crate::field::Fp;
use crate::svd::Svd;

pub trait Scalar:
    Copy + PartialEq + Debug + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    const ZERO: Self;
    const ONE: Self;
}

impl Scalar for Fp {
    const ZERO: Fp = Fp::ZERO;
    const ONE: Fp = Fp::ONE;
}

impl Scalar for f64 {
    const ZERO: f64 = 0.0;
    const ONE: f64 = 1.0;
}

/// Rank and kernel computations for a scalar type. The tolerance is the
/// singular-value cutoff of the `f64` backend and is ignored by exact ones.
pub trait Backend: Scalar {
    fn rank_with(m: &Matrix<Self>, tol: Option<f64>) -> usize;
    /// Basis of `{x : M x = 0}`: reduced-echelon (exact) or orthonormal (`f64`).
    fn kernel_with(m: &Matrix<Self>, tol: Option<f64>) -> Vec<Vec<Self>>;

    fn rank(m: &Matrix<Self>) -> usize {
        Self::rank_with(m, None)
    }

    fn kernel(m: &Matrix<Self>) -> Vec<Vec<Self>> {
        Self::kernel_with(m, None)
    }
}

impl Backend for Fp {
    fn rank_with(m: &Matrix<Fp>, _tol: Option<f64>) -> usize {
        m.rref().1.len()
    }

    fn kernel_with(m: &Matrix<Fp>, _tol: Option<f64>) -> Vec<Vec<Fp>> {
        let (r, pivots) = m.rref();
        let mut is_pivot = alloc::vec![false; m.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..m.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = alloc::vec![Fp::ZERO; m.cols];
                x[free] = Fp::ONE;
                for (row, &p) in pivots.iter().enumerate() {
                    x[p] = -r[(row, free)];
                }
                x
            })
            .collect()
    }
}

impl Backend for f64 {
    fn rank_with(m: &Matrix<f64>, tol: Option<f64>) -> usize {
        Svd::new(m).rank(tol)
    }

    fn kernel_with(m: &Matrix<f64>, tol: Option<f64>) -> Vec<Vec<f64>> {
        Svd::new(m).kernel(tol)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: alloc::vec![T::ZERO; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn select_rows(&self, keep: impl IntoIterator<Item = usize>) -> Self {
        let mut data = Vec::new();
        let mut rows = 0;
        for i in keep {
            data.extend_from_slice(self.row(i));
            rows += 1;
        }
        Matrix { rows, cols: self.cols, data }
    }

    /// Keeps the first `cols` columns.
    pub fn leading_columns(&self, cols: usize) -> Self {
        let mut m = Matrix::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..cols {
                m[(i, j)] = self[(i, j)];
            }
        }
        m
    }

    /// Stacks `other` below `self`.
    pub fn stack(&self, other: &Matrix<T>) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).fold(T::ZERO, |acc, (&a, &b)| acc + a * b))
            .collect()
    }

    /// `self^T y`.
    pub fn tmul_vec(&self, y: &[T]) -> Vec<T> {
        assert_eq!(y.len(), self.rows);
        let mut out = alloc::vec![T::ZERO; self.cols];
        for (i, &yi) in y.iter().enumerate() {
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o = *o + a * yi;
            }
        }
        out
    }
}

impl<T> core::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> core::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix<Fp> {
    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix<Fp>, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&i| !a[(i, col)].is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..a.cols {
                    let t = a[(p, j)];
                    a[(p, j)] = a[(row, j)];
                    a[(row, j)] = t;
                }
            }
            let inv = a[(row, col)].inverse().expect("non-zero pivot");
            for j in col..a.cols {
                a[(row, j)] *= inv;
            }
            for i in 0..a.rows {
                if i == row {
                    continue;
                }
                let factor = a[(i, col)];
                if factor.is_zero() {
                    continue;
                }
                for j in col..a.cols {
                    let v = a[(row, j)];
                    a[(i, j)] -= factor * v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }
}

impl Matrix<f64> {
    pub fn svd(&self) -> Svd {
        Svd::new(self)
    }

    /// Numerical rank; `tol = None` uses the default rule.
    pub fn rank_with_tolerance(&self, tol: Option<f64>) -> usize {
        Svd::new(self).rank(tol)
    }

    pub fn norm_max(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(libm::fabs(*x)))
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}
