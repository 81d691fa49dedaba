use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, Zero};

use super::poly;
use super::ExactReal;
use crate::coxeter::Order;

/// The real cyclotomic field ℚ(θ) with θ = 2cos(π/L).
///
/// `L` is the least common multiple of the finite orders the field must
/// accommodate, so every 2cos(π/m) with m | L is a polynomial in θ.
pub struct FieldContext {
    level: u64,
    min_poly: Vec<BigInt>,
    theta_interval: (BigRational, BigRational),
    theta: f64,
    theta_powers: Vec<f64>,
    /// `x^(degree + k) mod min_poly` for `k` in `0..degree - 1`.
    reduction: Vec<Vec<BigInt>>,
}

impl fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldContext")
            .field("level", &self.level)
            .field("degree", &self.degree())
            .finish()
    }
}

impl PartialEq for FieldContext {
    fn eq(&self, other: &Self) -> bool {
        self.level == other.level
    }
}
impl Eq for FieldContext {}

/// Builds the smallest context containing cos(π/m) for every finite order.
pub fn make_context<I: IntoIterator<Item = Order>>(orders: I) -> Arc<FieldContext> {
    let level = orders
        .into_iter()
        .filter_map(|o| match o {
            Order::Finite(m) => Some(m as u64),
            Order::Infinite => None,
        })
        .fold(1u64, |acc, m| acc.lcm(&m));
    FieldContext::with_level(level)
}

impl FieldContext {
    pub fn with_level(level: u64) -> Arc<Self> {
        assert!(level >= 1, "field level must be positive");
        let min_poly = poly::real_cyclotomic(2 * level);
        let degree = min_poly.len() - 1;
        let theta = 2.0 * (std::f64::consts::PI / level as f64).cos();

        let theta_interval = if degree == 1 {
            let t = BigRational::from_integer(-min_poly[0].clone());
            (t.clone(), t)
        } else {
            // The conjugates of θ are 2cos(kπ/L) for odd k coprime to L; the
            // closest one is at k = 3 or beyond.
            let next = (3..2 * level)
                .step_by(2)
                .find(|k| k.gcd(&(2 * level)) == 1)
                .map(|k| 2.0 * (std::f64::consts::PI * k as f64 / level as f64).cos())
                .unwrap_or(-2.0);
            let half_width = ((theta - next) / 8.0).min(1e-9);
            let lo = BigRational::from_f64(theta - half_width).expect("finite");
            let hi = BigRational::from_f64(theta + half_width).expect("finite");
            let flo = poly::eval_rational(&min_poly, &lo);
            let fhi = poly::eval_rational(&min_poly, &hi);
            assert!(
                flo.signum() * fhi.signum() == -BigRational::one(),
                "theta interval does not bracket a root"
            );
            (lo, hi)
        };

        let mut theta_powers = Vec::with_capacity(degree);
        let mut acc = 1.0;
        for _ in 0..degree {
            theta_powers.push(acc);
            acc *= theta;
        }

        // x^d = -(f_0 + f_1 x + ... + f_{d-1} x^{d-1}); higher powers by shifting.
        let mut reduction: Vec<Vec<BigInt>> = Vec::new();
        if degree > 1 {
            let mut cur: Vec<BigInt> = min_poly[..degree].iter().map(|c| -c).collect();
            reduction.push(cur.clone());
            for _ in 1..degree - 1 {
                let top = cur[degree - 1].clone();
                let mut next = vec![BigInt::zero(); degree];
                for i in 1..degree {
                    next[i] = cur[i - 1].clone();
                }
                if !top.is_zero() {
                    for i in 0..degree {
                        next[i] -= &top * &min_poly[i];
                    }
                }
                reduction.push(next.clone());
                cur = next;
            }
        }

        Arc::new(Self {
            level,
            min_poly,
            theta_interval,
            theta,
            theta_powers,
            reduction,
        })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    /// Monic minimal polynomial of θ, ascending coefficients.
    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub fn theta_interval(&self) -> &(BigRational, BigRational) {
        &self.theta_interval
    }

    pub fn theta_f64(&self) -> f64 {
        self.theta
    }

    pub(crate) fn theta_powers(&self) -> &[f64] {
        &self.theta_powers
    }

    /// Whether `min_poly` stays squarefree modulo `p`, i.e. `p` does not
    /// divide its discriminant.
    pub fn unramified_at(&self, p: u64) -> bool {
        poly::squarefree_mod(&self.min_poly, p)
    }

    /// Reduces a product of length up to `2·degree − 1` in place.
    pub(crate) fn reduce(&self, mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
        let d = self.degree();
        if d == 1 {
            // θ is rational: evaluate.
            let t = -&self.min_poly[0];
            let mut acc = BigInt::zero();
            for c in coeffs.iter().rev() {
                acc = acc * &t + c;
            }
            return vec![acc];
        }
        for k in (d..coeffs.len()).rev() {
            let c = std::mem::take(&mut coeffs[k]);
            if c.is_zero() {
                continue;
            }
            for (i, r) in self.reduction[k - d].iter().enumerate() {
                if !r.is_zero() {
                    coeffs[i] += &c * r;
                }
            }
        }
        coeffs.truncate(d);
        coeffs.resize(d, BigInt::zero());
        coeffs
    }

    pub fn theta(self: &Arc<Self>) -> ExactReal {
        if self.degree() == 1 {
            ExactReal::from_integer(self, -self.min_poly[0].clone())
        } else {
            let mut c = vec![BigInt::zero(); self.degree()];
            c[1] = BigInt::one();
            ExactReal::from_parts(self, c, BigInt::one())
        }
    }

    /// 2cos(kπ/L) as a polynomial in θ (the Chebyshev recursion).
    pub fn two_cos_multiple(self: &Arc<Self>, k: u64) -> ExactReal {
        let theta = self.theta();
        let mut prev = ExactReal::from_integer(self, BigInt::from(2));
        if k == 0 {
            return prev;
        }
        let mut cur = theta.clone();
        for _ in 1..k {
            let next = &(&theta * &cur) - &prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Numerically evaluates a coefficient vector, returning the value and
    /// the magnitude sum used for the rounding bound.
    pub(crate) fn eval_f64(&self, num: &[BigInt]) -> (f64, f64) {
        let mut val = 0.0;
        let mut mag = 0.0;
        for (c, p) in num.iter().zip(&self.theta_powers) {
            if c.is_zero() {
                continue;
            }
            let a = poly::abs_f64(c);
            let x = if c.is_negative() { -a } else { a };
            val += x * p;
            mag += a * p.abs();
        }
        (val, mag)
    }
}
