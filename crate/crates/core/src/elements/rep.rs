use crate::coxeter::CoxeterSystem;
use crate::exact::{Matrix, Overflow};

/// σ(w) with entries in ℤ[θ], stored as flat `i128` coefficient blocks.
/// Equality is group-element equality because σ is faithful.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    d: usize,
    data: Box<[i128]>,
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "IntMatrix({:?})", self.data)
    }
}

impl IntMatrix {
    pub fn identity(sys: &CoxeterSystem) -> Self {
        let n = sys.rank();
        let d = sys.ring().degree();
        let mut data = vec![0i128; n * n * d];
        for i in 0..n {
            data[(i * n + i) * d] = 1;
        }
        Self {
            n,
            d,
            data: data.into(),
        }
    }

    /// σ of an arbitrary word.
    pub fn from_word(sys: &CoxeterSystem, word: &[usize]) -> Result<Self, Overflow> {
        let mut m = Self::identity(sys);
        for &s in word {
            m.right_mul_gen(sys, s)?;
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &[i128] {
        let k = (i * self.n + j) * self.d;
        &self.data[k..k + self.d]
    }

    fn entry_mut(&mut self, i: usize, j: usize) -> &mut [i128] {
        let k = (i * self.n + j) * self.d;
        &mut self.data[k..k + self.d]
    }

    pub fn column(&self, j: usize) -> Vec<Vec<i128>> {
        (0..self.n).map(|i| self.entry(i, j).to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let e = self.entry(i, j);
                e[1..].iter().all(|&c| c == 0) && e[0] == i128::from(i == j)
            })
        })
    }

    pub fn mul(&self, sys: &CoxeterSystem, other: &IntMatrix) -> Result<IntMatrix, Overflow> {
        let ring = sys.ring();
        let (n, d) = (self.n, self.d);
        let mut data = vec![0i128; n * n * d];
        for i in 0..n {
            for k in 0..n {
                let a = self.entry(i, k);
                if a.iter().all(|&x| x == 0) {
                    continue;
                }
                for j in 0..n {
                    let b = other.entry(k, j);
                    if b.iter().any(|&x| x != 0) {
                        let at = (i * n + j) * d;
                        ring.mul_add(&mut data[at..at + d], a, b)?;
                    }
                }
            }
        }
        Ok(IntMatrix {
            n,
            d,
            data: data.into(),
        })
    }

    /// M ← M·σ_s.
    pub fn right_mul_gen(&mut self, sys: &CoxeterSystem, s: usize) -> Result<(), Overflow> {
        let ring = sys.ring();
        for (t, c) in sys.int_couplings(s) {
            for i in 0..self.n {
                let src = self.entry(i, s).to_vec();
                if src.iter().all(|&x| x == 0) {
                    continue;
                }
                ring.mul_add(self.entry_mut(i, *t), &src, c)?;
            }
        }
        for i in 0..self.n {
            for x in self.entry_mut(i, s) {
                *x = -*x;
            }
        }
        Ok(())
    }

    /// M ← σ_s·M.
    pub fn left_mul_gen(&mut self, sys: &CoxeterSystem, s: usize) -> Result<(), Overflow> {
        let ring = sys.ring();
        for j in 0..self.n {
            let mut acc: Vec<i128> = self.entry(s, j).iter().map(|x| -x).collect();
            for (t, c) in sys.int_couplings(s) {
                let e = self.entry(*t, j);
                if e.iter().any(|&x| x != 0) {
                    let e = e.to_vec();
                    ring.mul_add(&mut acc, &e, c)?;
                }
            }
            self.entry_mut(s, j).copy_from_slice(&acc);
        }
        Ok(())
    }

    /// Common sign of column `j` (the image of a simple root).
    ///
    /// Panics if the column has entries of both signs: roots are positive
    /// or negative, so mixed signs mean an arithmetic bug.
    pub fn column_sign(&self, sys: &CoxeterSystem, j: usize) -> i32 {
        let ring = sys.ring();
        let mut sign = 0;
        for i in 0..self.n {
            let sg = ring.signum(self.entry(i, j));
            if sg == 0 {
                continue;
            }
            if sign == 0 {
                sign = sg;
            } else if sg != sign {
                panic!("root with mixed coordinate signs in column {j}: invariant violated");
            }
        }
        sign
    }

    pub fn to_matrix(&self, sys: &CoxeterSystem) -> Matrix {
        let ring = sys.ring();
        Matrix::from_fn(self.n, |i, j| ring.to_exact(self.entry(i, j)))
    }

    /// Largest absolute coefficient, a measure of arithmetic growth.
    pub fn max_coefficient(&self) -> i128 {
        self.data
            .iter()
            .map(|x| x.saturating_abs())
            .max()
            .unwrap_or(0)
    }
}
