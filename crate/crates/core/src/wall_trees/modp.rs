use crate::coxeter::CoxeterSystem;
use crate::elements::IntMatrix;
use crate::exact::IntRing;

/// The finite ring F_p[x]/(f mod p) where f is the minimal polynomial of θ.
/// Reduction ℤ[θ] → this ring is a ring homomorphism whether or not f stays
/// squarefree mod p.
#[derive(Debug, Clone)]
pub struct ModRing {
    p: u32,
    d: usize,
    reduction: Vec<Vec<u32>>,
}

impl ModRing {
    pub fn new(ring: &IntRing, p: u32) -> Self {
        let reduction = ring
            .reduction()
            .iter()
            .map(|row| row.iter().map(|&c| reduce(c, p)).collect())
            .collect();
        let d = ring.degree();
        // degree 1: elements are already integers, nothing to reduce
        Self { p, d, reduction }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    /// acc += a·b.
    fn mul_add(&self, acc: &mut [u32], a: &[u32], b: &[u32]) {
        let p = self.p as u64;
        let d = self.d;
        if d == 1 {
            acc[0] = ((acc[0] as u64 + a[0] as u64 * b[0] as u64) % p) as u32;
            return;
        }
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (i, &r) in self.reduction[k - d].iter().enumerate() {
                prod[i] = (prod[i] + c * r as u64) % p;
            }
        }
        for i in 0..d {
            acc[i] = ((acc[i] as u64 + prod[i]) % p) as u32;
        }
    }
}

fn reduce(c: i128, p: u32) -> u32 {
    c.rem_euclid(p as i128) as u32
}

/// A Tits matrix reduced mod p, flat like [`IntMatrix`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    data: Box<[u16]>,
}

impl ModMatrix {
    pub fn from_int(m: &IntMatrix, p: u32) -> Self {
        let n = m.size();
        let mut data = Vec::new();
        for i in 0..n {
            for j in 0..n {
                data.extend(m.entry(i, j).iter().map(|&c| reduce(c, p) as u16));
            }
        }
        Self { data: data.into() }
    }

    pub fn identity(sys: &CoxeterSystem, p: u32) -> Self {
        Self::from_int(&IntMatrix::identity(sys), p)
    }

    /// M·σ_s mod p.
    pub fn right_mul_gen(&self, sys: &CoxeterSystem, ring: &ModRing, s: usize) -> Self {
        let n = sys.rank();
        let d = ring.d;
        let p = ring.p;
        let mut data: Vec<u32> = self.data.iter().map(|&x| x as u32).collect();
        let at = |i: usize, j: usize| (i * n + j) * d;
        for (t, c) in sys.int_couplings(s) {
            let c: Vec<u32> = c.iter().map(|&x| reduce(x, p)).collect();
            for i in 0..n {
                let src: Vec<u32> = data[at(i, s)..at(i, s) + d].to_vec();
                if src.iter().all(|&x| x == 0) {
                    continue;
                }
                let k = at(i, *t);
                ring.mul_add(&mut data[k..k + d], &src, &c);
            }
        }
        for i in 0..n {
            for x in &mut data[at(i, s)..at(i, s) + d] {
                *x = (p - *x) % p;
            }
        }
        Self {
            data: data.into_iter().map(|x| x as u16).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::library;

    #[test]
    fn reduction_commutes_with_multiplication() {
        let sys = library::triangle(2, 3, 7);
        let ring = ModRing::new(sys.ring(), 3);
        let word = [0, 1, 2, 1, 0, 2, 2, 1, 0, 1];
        let mut m = ModMatrix::identity(&sys, 3);
        for &s in &word {
            m = m.right_mul_gen(&sys, &ring, s);
        }
        let exact = IntMatrix::from_word(&sys, &word).unwrap();
        assert_eq!(m, ModMatrix::from_int(&exact, 3));
    }
}
