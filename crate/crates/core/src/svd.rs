//! One-sided Jacobi SVD for small dense matrices.

use alloc::vec::Vec;

use crate::matrix::Matrix;

/// `A = U diag(sigma) V^T` with `sigma` sorted in decreasing order.
#[derive(Clone, Debug)]
pub struct Svd {
    rows: usize,
    cols: usize,
    /// One value per column of `A`.
    pub sigma: Vec<f64>,
    /// `rows x cols`; column `j` is the left singular vector for `sigma[j]`
    /// (zero where `sigma[j] == 0`).
    pub u: Matrix<f64>,
    /// `cols x cols`, orthogonal.
    pub v: Matrix<f64>,
}

const MAX_SWEEPS: usize = 80;

impl Svd {
    pub fn new(a: &Matrix<f64>) -> Svd {
        let (m, n) = (a.rows(), a.cols());
        // Work on columns.
        let mut w: Vec<Vec<f64>> = (0..n).map(|j| a.column(j)).collect();
        let mut v: Vec<Vec<f64>> =
            (0..n).map(|j| (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect()).collect();
        for _ in 0..MAX_SWEEPS {
            let mut rotated = false;
            for p in 0..n {
                for q in p + 1..n {
                    let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                    for i in 0..m {
                        alpha += w[p][i] * w[p][i];
                        beta += w[q][i] * w[q][i];
                        gamma += w[p][i] * w[q][i];
                    }
                    if gamma == 0.0 || libm::fabs(gamma) <= f64::EPSILON * libm::sqrt(alpha * beta) {
                        continue;
                    }
                    rotated = true;
                    let zeta = (beta - alpha) / (2.0 * gamma);
                    let t = libm::copysign(1.0, zeta) / (libm::fabs(zeta) + libm::hypot(1.0, zeta));
                    let c = 1.0 / libm::hypot(1.0, t);
                    let s = c * t;
                    rotate(&mut w, p, q, c, s);
                    rotate(&mut v, p, q, c, s);
                }
            }
            if !rotated {
                break;
            }
        }
        let norms: Vec<f64> = w.iter().map(|col| libm::sqrt(col.iter().map(|x| x * x).sum())).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));
        let mut u = Matrix::zeros(m, n);
        let mut vm = Matrix::zeros(n, n);
        let mut sigma = Vec::with_capacity(n);
        for (jj, &j) in order.iter().enumerate() {
            let s = norms[j];
            sigma.push(s);
            if s > 0.0 {
                for i in 0..m {
                    u[(i, jj)] = w[j][i] / s;
                }
            }
            for i in 0..n {
                vm[(i, jj)] = v[j][i];
            }
        }
        Svd { rows: m, cols: n, sigma, u, v: vm }
    }

    /// `max(rows, cols) * eps * sigma_max`, unless overridden.
    pub fn tolerance(&self, tol: Option<f64>) -> f64 {
        tol.unwrap_or_else(|| {
            let smax = self.sigma.first().copied().unwrap_or(0.0);
            self.rows.max(self.cols) as f64 * f64::EPSILON * smax
        })
    }

    pub fn rank(&self, tol: Option<f64>) -> usize {
        let tau = self.tolerance(tol);
        self.sigma.iter().filter(|&&s| s > tau).count()
    }

    /// Orthonormal basis of the right kernel.
    pub fn kernel(&self, tol: Option<f64>) -> Vec<Vec<f64>> {
        let r = self.rank(tol);
        (r..self.cols).map(|j| self.v.column(j)).collect()
    }

    /// Orthonormal basis of the column space.
    pub fn range(&self, tol: Option<f64>) -> Vec<Vec<f64>> {
        let r = self.rank(tol);
        (0..r).map(|j| self.u.column(j)).collect()
    }

    /// Minimum-norm least-squares solution of `A x = b`.
    pub fn solve(&self, b: &[f64], tol: Option<f64>) -> Vec<f64> {
        assert_eq!(b.len(), self.rows);
        let r = self.rank(tol);
        let mut x = alloc::vec![0.0; self.cols];
        for j in 0..r {
            let coeff = (0..self.rows).map(|i| self.u[(i, j)] * b[i]).sum::<f64>() / self.sigma[j];
            for (i, xi) in x.iter_mut().enumerate() {
                *xi += coeff * self.v[(i, j)];
            }
        }
        x
    }
}

fn rotate(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (head, tail) = cols.split_at_mut(q);
    let (cp, cq) = (&mut head[p], &mut tail[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let (a, b) = (*x, *y);
        *x = c * a - s * b;
        *y = s * a + c * b;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn reconstruct(s: &Svd) -> Matrix<f64> {
        let (m, n) = (s.u.rows(), s.v.rows());
        let mut a = Matrix::zeros(m, n);
        for i in 0..m {
            for j in 0..n {
                a[(i, j)] = (0..n).map(|t| s.u[(i, t)] * s.sigma[t] * s.v[(j, t)]).sum();
            }
        }
        a
    }

    #[test]
    fn diagonal_matrix() {
        let a = Matrix::from_rows(&[vec![3.0, 0.0], vec![0.0, -4.0]]);
        let s = Svd::new(&a);
        assert!((s.sigma[0] - 4.0).abs() < 1e-14);
        assert!((s.sigma[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn empty_shapes() {
        let s = Svd::new(&Matrix::<f64>::zeros(0, 3));
        assert_eq!(s.rank(None), 0);
        assert_eq!(s.kernel(None).len(), 3);
        let s = Svd::new(&Matrix::<f64>::zeros(3, 0));
        assert_eq!(s.rank(None), 0);
    }

    proptest! {
        #[test]
        fn reconstructs_and_solves(rows in 1usize..7, cols in 1usize..7, seed in proptest::collection::vec(-5.0f64..5.0, 49)) {
            let mut a = Matrix::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    a[(i, j)] = seed[i * 7 + j];
                }
            }
            let s = Svd::new(&a);
            let back = reconstruct(&s);
            for i in 0..rows {
                for j in 0..cols {
                    prop_assert!((back[(i, j)] - a[(i, j)]).abs() < 1e-10);
                }
            }
            // Kernel vectors are annihilated; a consistent system is solved.
            for k in s.kernel(None) {
                prop_assert!(a.mul_vec(&k).iter().all(|x| x.abs() < 1e-9));
            }
            let x0: Vec<f64> = (0..cols).map(|j| j as f64 - 1.5).collect();
            let b = a.mul_vec(&x0);
            let x = s.solve(&b, None);
            let r = a.mul_vec(&x);
            prop_assert!(r.iter().zip(&b).all(|(p, q)| (p - q).abs() < 1e-8));
        }
    }
}
