use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::{ExactReal, FieldContext};

/// Machine-integer coefficients overflowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("machine-integer overflow in ring arithmetic")]
pub struct Overflow;

/// The order ℤ[θ] with `i128` coefficients. Entries of Tits matrices are
/// polynomials in 2cos values, so they live here.
#[derive(Debug, Clone)]
pub struct IntRing {
    ctx: Arc<FieldContext>,
    degree: usize,
    /// For degree 1, `theta` is the integer value of θ and elements are plain
    /// integers.
    theta: i128,
    reduction: Vec<Vec<i128>>,
}

impl IntRing {
    pub fn new(ctx: &Arc<FieldContext>) -> Self {
        let degree = ctx.degree();
        let theta = if degree == 1 {
            (-&ctx.min_poly()[0]).to_i128().expect("small")
        } else {
            0
        };
        // x^(d+k) mod f, k < d - 1
        let mut reduction = Vec::new();
        if degree > 1 {
            let f: Vec<i128> = ctx
                .min_poly()
                .iter()
                .map(|c| c.to_i128().expect("small min poly"))
                .collect();
            let mut cur: Vec<i128> = f[..degree].iter().map(|c| -c).collect();
            reduction.push(cur.clone());
            for _ in 1..degree - 1 {
                let top = cur[degree - 1];
                let mut next = vec![0i128; degree];
                next[1..degree].copy_from_slice(&cur[..degree - 1]);
                for i in 0..degree {
                    next[i] -= top * f[i];
                }
                reduction.push(next.clone());
                cur = next;
            }
        }
        Self {
            ctx: ctx.clone(),
            degree,
            theta,
            reduction,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    /// Reduction table: `x^(degree + k) mod min_poly`.
    pub fn reduction(&self) -> &[Vec<i128>] {
        &self.reduction
    }

    /// acc += a·b.
    pub fn mul_add(&self, acc: &mut [i128], a: &[i128], b: &[i128]) -> Result<(), Overflow> {
        let d = self.degree;
        if d == 1 {
            let p = a[0].checked_mul(b[0]).ok_or(Overflow)?;
            acc[0] = acc[0].checked_add(p).ok_or(Overflow)?;
            return Ok(());
        }
        let mut stack = [0i128; 64];
        let mut heap;
        let prod: &mut [i128] = if 2 * d - 1 <= stack.len() {
            &mut stack[..2 * d - 1]
        } else {
            heap = vec![0i128; 2 * d - 1];
            &mut heap
        };
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    let t = x.checked_mul(y).ok_or(Overflow)?;
                    prod[i + j] = prod[i + j].checked_add(t).ok_or(Overflow)?;
                }
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (i, &r) in self.reduction[k - d].iter().enumerate() {
                if r != 0 {
                    let t = c.checked_mul(r).ok_or(Overflow)?;
                    prod[i] = prod[i].checked_add(t).ok_or(Overflow)?;
                }
            }
        }
        for i in 0..d {
            acc[i] = acc[i].checked_add(prod[i]).ok_or(Overflow)?;
        }
        Ok(())
    }

    pub fn to_exact(&self, a: &[i128]) -> ExactReal {
        ExactReal::from_parts(
            &self.ctx,
            a.iter().map(|&c| BigInt::from(c)).collect(),
            BigInt::one(),
        )
    }

    /// Integral coefficients of `x`, if it lies in ℤ[θ] and fits.
    pub fn from_exact(&self, x: &ExactReal) -> Option<Vec<i128>> {
        x.integer_coeffs()?.iter().map(|c| c.to_i128()).collect()
    }

    /// Sign under the real embedding; floating filter, then exact.
    pub fn signum(&self, a: &[i128]) -> i32 {
        if self.degree == 1 {
            return a[0].signum() as i32;
        }
        if a.iter().all(|&c| c == 0) {
            return 0;
        }
        let powers = self.ctx.theta_powers();
        let mut val = 0.0;
        let mut mag = 0.0;
        for (&c, &p) in a.iter().zip(powers) {
            val += c as f64 * p;
            mag += (c as f64).abs() * p.abs();
        }
        let tol = mag * (8.0 * self.degree as f64 + 32.0) * f64::EPSILON;
        if val.abs() > tol {
            return if val > 0.0 { 1 } else { -1 };
        }
        self.to_exact(a).signum_exact()
    }

    pub fn theta_value(&self) -> i128 {
        self.theta
    }
}
