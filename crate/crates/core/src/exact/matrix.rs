use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{ExactReal, FieldContext};

/// Dense square matrix over a real cyclotomic field, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<ExactReal>,
}

impl Hash for Matrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.data.hash(state);
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)].to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

impl Matrix {
    pub fn identity(ctx: &Arc<FieldContext>, n: usize) -> Self {
        let mut data = vec![ExactReal::zero(ctx); n * n];
        for i in 0..n {
            data[i * n + i] = ExactReal::one(ctx);
        }
        Self { n, data }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> ExactReal) -> Self {
        let data = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self { n, data }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn column(&self, j: usize) -> Vec<ExactReal> {
        (0..self.n).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[ExactReal] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        Matrix::from_fn(n, |i, j| {
            let mut acc = ExactReal::zero(self.data[0].context());
            for k in 0..n {
                let a = &self[(i, k)];
                let b = &other[(k, j)];
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
    }

    pub fn apply(&self, v: &[ExactReal]) -> Vec<ExactReal> {
        (0..self.n)
            .map(|i| {
                let mut acc = ExactReal::zero(self.data[0].context());
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.n, |i, j| self[(j, i)].clone())
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let x = &self[(i, j)];
                if i == j {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
        })
    }

    /// Principal submatrix on the given (ordered) index set.
    pub fn principal(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(idx.len(), |i, j| self[(idx[i], idx[j])].clone())
    }

    /// Determinant by Gaussian elimination with pivot search.
    pub fn determinant(&self) -> ExactReal {
        let n = self.n;
        if n == 0 {
            panic!("determinant of an empty matrix needs a field context");
        }
        let ctx = self.data[0].context().clone();
        let mut a = self.data.clone();
        let mut det = ExactReal::one(&ctx);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return ExactReal::zero(&ctx);
            };
            if p != col {
                for j in 0..n {
                    a.swap(p * n + j, col * n + j);
                }
                det = -det;
            }
            let pivot = a[col * n + col].clone();
            det = &det * &pivot;
            let inv = pivot.inverse().expect("nonzero pivot");
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let factor = &a[r * n + col] * &inv;
                for j in col..n {
                    let t = &factor * &a[col * n + j];
                    a[r * n + j] = &a[r * n + j] - &t;
                }
            }
        }
        det
    }

    /// Elimination pivots without row exchanges; `None` at the first zero
    /// pivot. Leading principal minors are the running products.
    pub fn leading_pivots(&self) -> Vec<Option<ExactReal>> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut out = Vec::with_capacity(n);
        for col in 0..n {
            let pivot = a[col * n + col].clone();
            if pivot.is_zero() {
                out.push(None);
                out.resize(n, None);
                return out;
            }
            let inv = pivot.inverse().expect("nonzero pivot");
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let factor = &a[r * n + col] * &inv;
                for j in col..n {
                    let t = &factor * &a[col * n + j];
                    a[r * n + j] = &a[r * n + j] - &t;
                }
            }
            out.push(Some(pivot));
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = ExactReal;
    fn index(&self, (i, j): (usize, usize)) -> &ExactReal {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ExactReal {
        &mut self.data[i * self.n + j]
    }
}
