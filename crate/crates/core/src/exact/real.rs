use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use super::poly;
use super::{FieldContext, FieldError};

/// Element of a real cyclotomic field, stored as `num(θ) / den` with
/// `den > 0` and `gcd(num, den) = 1`. The representation is canonical, so
/// structural equality is field equality.
#[derive(Clone)]
pub struct ExactReal {
    ctx: Arc<FieldContext>,
    num: Vec<BigInt>,
    den: BigInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl ExactReal {
    pub(crate) fn from_parts(ctx: &Arc<FieldContext>, num: Vec<BigInt>, den: BigInt) -> Self {
        debug_assert_eq!(num.len(), ctx.degree());
        let mut x = Self {
            ctx: ctx.clone(),
            num,
            den,
        };
        x.normalize();
        x
    }

    pub fn zero(ctx: &Arc<FieldContext>) -> Self {
        Self {
            ctx: ctx.clone(),
            num: vec![BigInt::zero(); ctx.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(ctx: &Arc<FieldContext>) -> Self {
        Self::from_integer(ctx, BigInt::one())
    }

    pub fn from_integer(ctx: &Arc<FieldContext>, n: BigInt) -> Self {
        let mut num = vec![BigInt::zero(); ctx.degree()];
        num[0] = n;
        Self {
            ctx: ctx.clone(),
            num,
            den: BigInt::one(),
        }
    }

    pub fn from_i64(ctx: &Arc<FieldContext>, n: i64) -> Self {
        Self::from_integer(ctx, BigInt::from(n))
    }

    pub fn from_rational(ctx: &Arc<FieldContext>, q: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); ctx.degree()];
        num[0] = q.numer().clone();
        Self::from_parts(ctx, num, q.denom().clone())
    }

    /// Builds an element from coefficients in the power basis of θ. The
    /// sequence may be longer than the degree; it is reduced.
    pub fn from_coeffs(ctx: &Arc<FieldContext>, coeffs: &[BigRational]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut num: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let d = ctx.degree();
        if num.len() < d {
            num.resize(d, BigInt::zero());
        }
        let num = if num.len() > d { ctx.reduce(num) } else { num };
        Self::from_parts(ctx, num, den)
    }

    pub fn context(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    /// Canonical coefficients in the power basis of θ, each in lowest terms.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Integer coefficients when the element is an algebraic integer in ℤ[θ].
    pub fn integer_coeffs(&self) -> Option<&[BigInt]> {
        self.den.is_one().then_some(&self.num[..])
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.num[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.den.is_one() {
            return;
        }
        let g = self.num.iter().fold(self.den.clone(), |g, c| g.gcd(c));
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    fn same_context(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx.level() == other.ctx.level()
    }

    fn check(&self, other: &Self) -> Result<(), FieldError> {
        if self.same_context(other) {
            Ok(())
        } else {
            Err(FieldError::ContextMismatch {
                left: self.ctx.level(),
                right: other.ctx.level(),
            })
        }
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let num: Vec<BigInt> = if self.den == other.den {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect()
        } else {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let l = a * &other.den;
                    let r = b * &self.den;
                    if negate {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect()
        };
        let den = if self.den == other.den {
            self.den.clone()
        } else {
            &self.den * &other.den
        };
        Self::from_parts(&self.ctx, num, den)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let d = self.ctx.degree();
        let num = if d == 1 {
            vec![&self.num[0] * &other.num[0]]
        } else {
            let mut prod = vec![BigInt::zero(); 2 * d - 1];
            for (i, a) in self.num.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.num.iter().enumerate() {
                    if !b.is_zero() {
                        prod[i + j] += a * b;
                    }
                }
            }
            self.ctx.reduce(prod)
        };
        Self::from_parts(&self.ctx, num, &self.den * &other.den)
    }

    pub fn inverse(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let modulus: Vec<BigRational> = self
            .ctx
            .min_poly()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let inv =
            poly::rat_inverse_mod(&self.coeffs(), &modulus).ok_or(FieldError::DivisionByZero)?;
        Ok(Self::from_coeffs(&self.ctx, &inv))
    }

    /// Field arithmetic with explicit error reporting.
    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self, FieldError> {
        self.check(other)?;
        Ok(match op {
            ArithOp::Add => self.add_impl(other, false),
            ArithOp::Sub => self.add_impl(other, true),
            ArithOp::Mul => self.mul_impl(other),
            ArithOp::Div => self.mul_impl(&other.inverse()?),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.arith(other, ArithOp::Div)
    }

    /// Sign under the embedding θ ↦ 2cos(π/L): −1, 0 or +1.
    pub fn signum(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if self.ctx.degree() == 1 {
            return if self.num[0].is_positive() { 1 } else { -1 };
        }
        let (val, mag) = self.ctx.eval_f64(&self.num);
        if mag.is_finite() {
            let tol = mag * (8.0 * self.ctx.degree() as f64 + 32.0) * f64::EPSILON;
            if val.abs() > tol {
                return if val > 0.0 { 1 } else { -1 };
            }
        }
        self.signum_exact()
    }

    /// Sign by interval evaluation on a bisected isolating interval of θ.
    pub fn signum_exact(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if self.ctx.degree() == 1 {
            return if self.num[0].is_positive() { 1 } else { -1 };
        }
        let f = self.ctx.min_poly();
        let (mut lo, mut hi) = self.ctx.theta_interval().clone();
        let f_lo_sign = poly::eval_rational(f, &lo).signum();
        loop {
            let (a, b) = eval_interval(&self.num, &lo, &hi);
            if a.is_positive() {
                return 1;
            }
            if b.is_negative() {
                return -1;
            }
            let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
            let fm = poly::eval_rational(f, &mid);
            if fm.signum() == f_lo_sign {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let (val, _) = self.ctx.eval_f64(&self.num);
        val / self.den.to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn square(&self) -> Self {
        self.mul_impl(self)
    }

    pub fn scale(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        Self::from_parts(
            &self.ctx,
            self.num.iter().map(|c| c * &k).collect(),
            self.den.clone(),
        )
    }
}

/// Interval evaluation of Σ cᵢ xⁱ for x in [lo, hi] with lo > 0.
fn eval_interval(num: &[BigInt], lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    let mut low = BigRational::zero();
    let mut high = BigRational::zero();
    let mut plo = BigRational::one();
    let mut phi = BigRational::one();
    for c in num {
        if !c.is_zero() {
            let cq = BigRational::from_integer(c.clone());
            if c.is_positive() {
                low += &cq * &plo;
                high += &cq * &phi;
            } else {
                low += &cq * &phi;
                high += &cq * &plo;
            }
        }
        plo *= lo;
        phi *= hi;
    }
    (low, high)
}

impl PartialEq for ExactReal {
    fn eq(&self, other: &Self) -> bool {
        self.same_context(other) && self.den == other.den && self.num == other.num
    }
}
impl Eq for ExactReal {}

impl Hash for ExactReal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl<'a> Add<&'a ExactReal> for &'a ExactReal {
    type Output = ExactReal;
    fn add(self, rhs: &ExactReal) -> ExactReal {
        self.arith(rhs, ArithOp::Add).expect("context mismatch")
    }
}

impl<'a> Sub<&'a ExactReal> for &'a ExactReal {
    type Output = ExactReal;
    fn sub(self, rhs: &ExactReal) -> ExactReal {
        self.arith(rhs, ArithOp::Sub).expect("context mismatch")
    }
}

impl<'a> Mul<&'a ExactReal> for &'a ExactReal {
    type Output = ExactReal;
    fn mul(self, rhs: &ExactReal) -> ExactReal {
        self.arith(rhs, ArithOp::Mul).expect("context mismatch")
    }
}

impl Neg for &ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        ExactReal {
            ctx: self.ctx.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for ExactReal {
    type Output = ExactReal;
    fn neg(mut self) -> ExactReal {
        for c in &mut self.num {
            *c = -&*c;
        }
        self
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, abs) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "θ")?,
                (1, false) => write!(f, "{abs}·θ")?,
                (_, true) => write!(f, "θ^{i}")?,
                (_, false) => write!(f, "{abs}·θ^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactReal({self})")
    }
}

impl Serialize for ExactReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs().iter().map(|c| c.to_string()))
    }
}
