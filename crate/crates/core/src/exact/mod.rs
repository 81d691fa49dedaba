//! Exact arithmetic in the real cyclotomic fields that hold the entries of
//! Tits representations.
//!
//! Every field is generated by a single element θ = 2cos(π/L). Elements are
//! canonical polynomials in θ, so equality and hashing are structural; signs
//! are decided under the real embedding θ ↦ 2cos(π/L), first by a rounding-
//! bounded floating evaluation and, when that is inconclusive, by interval
//! evaluation on a bisected isolating interval of θ.

mod context;
mod intring;
mod matrix;
pub(crate) mod poly;
mod real;

use std::sync::Arc;

pub use context::{make_context, FieldContext};
pub use intring::{IntRing, Overflow};
pub use matrix::Matrix;
pub use real::{ArithOp, ExactReal};

use crate::coxeter::Order;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("field contexts differ (levels {left} and {right})")]
    ContextMismatch { left: u64, right: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("cos(pi/{m}) does not lie in the field of level {level}")]
    NotInField { m: u32, level: u64 },
}

/// cos(π/m) in `ctx`. For m = ∞ this is the limit value 1.
pub fn cos_pi_over(ctx: &Arc<FieldContext>, m: Order) -> Result<ExactReal, FieldError> {
    let two_cos = match m {
        Order::Infinite => return Ok(ExactReal::one(ctx)),
        Order::Finite(1) => return Ok(ExactReal::from_i64(ctx, -1)),
        Order::Finite(2) => return Ok(ExactReal::zero(ctx)),
        Order::Finite(m) => {
            if !ctx.level().is_multiple_of(m as u64) {
                return Err(FieldError::NotInField {
                    m,
                    level: ctx.level(),
                });
            }
            ctx.two_cos_multiple(ctx.level() / m as u64)
        }
    };
    Ok(ExactReal::from_parts(
        ctx,
        two_cos
            .integer_coeffs()
            .expect("2cos values are integral")
            .to_vec(),
        2.into(),
    ))
}

/// 2cos(π/m), which is always an algebraic integer in ℤ[θ].
pub fn two_cos_pi_over(ctx: &Arc<FieldContext>, m: Order) -> Result<ExactReal, FieldError> {
    Ok(cos_pi_over(ctx, m)?.scale(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn ctx_for(orders: &[u32]) -> Arc<FieldContext> {
        make_context(orders.iter().map(|&m| Order::Finite(m)))
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn context_levels_and_degrees() {
        let c = ctx_for(&[2, 3]);
        assert_eq!(c.level(), 6);
        assert_eq!(c.degree(), 2);
        assert_eq!(
            c.min_poly(),
            &[BigInt::from(-3), BigInt::from(0), BigInt::from(1)]
        );

        let c = ctx_for(&[2]);
        assert_eq!(c.degree(), 1);

        let c = ctx_for(&[5]);
        assert_eq!(c.degree(), 2);
        assert_eq!(
            c.min_poly(),
            &[BigInt::from(-1), BigInt::from(-1), BigInt::from(1)]
        );
        // θ² = θ + 1 holds exactly
        let t = c.theta();
        assert_eq!(t.square(), &t + &ExactReal::one(&c));

        let inf_only = make_context([Order::Infinite, Order::Finite(1)]);
        assert_eq!(inf_only.level(), 1);
        assert_eq!(inf_only.degree(), 1);
    }

    #[test]
    fn degree_matches_totient() {
        for level in 2..60u64 {
            let c = FieldContext::with_level(level);
            assert_eq!(
                c.degree() as u64,
                poly::euler_phi(2 * level) / 2,
                "level {level}"
            );
            let (mut value, mut scale, mut power) = (0.0f64, 0.0f64, 1.0f64);
            for k in c.min_poly() {
                let k: f64 = k.to_string().parse().unwrap();
                value += k * power;
                scale += (k * power).abs();
                power *= c.theta_f64();
            }
            assert!(
                value.abs() < 1e-12 * scale.max(1.0),
                "θ is not a root at level {level}"
            );
        }
    }

    /// Trial factorization: no product over a proper nonempty subset of the
    /// conjugates 2cos(kπ/L) has integer coefficients.
    #[test]
    fn min_poly_irreducible_by_trial_factorization() {
        for level in [5u64, 7, 9, 12, 15, 21] {
            let roots: Vec<f64> = (1..2 * level)
                .filter(|k| k % 2 == 1 && num_integer::gcd(*k, 2 * level) == 1 && *k < level)
                .map(|k| 2.0 * (std::f64::consts::PI * k as f64 / level as f64).cos())
                .collect();
            let d = roots.len();
            assert_eq!(d, FieldContext::with_level(level).degree());
            for mask in 1u32..(1 << d) - 1 {
                let mut p = vec![1.0f64];
                for (i, r) in roots.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        let mut q = vec![0.0; p.len() + 1];
                        for (j, c) in p.iter().enumerate() {
                            q[j + 1] += c;
                            q[j] -= c * r;
                        }
                        p = q;
                    }
                }
                let integral = p.iter().all(|c| (c - c.round()).abs() < 1e-6);
                assert!(!integral, "level {level} factors via mask {mask:b}");
            }
        }
    }

    #[test]
    fn cos_values() {
        let c = ctx_for(&[3, 4]);
        assert!(cos_pi_over(&c, Order::Finite(2)).unwrap().is_zero());
        assert_eq!(
            cos_pi_over(&c, Order::Finite(1)).unwrap(),
            ExactReal::from_i64(&c, -1)
        );
        assert_eq!(
            cos_pi_over(&c, Order::Finite(3)).unwrap().as_rational(),
            Some(rat(1, 2))
        );
        assert_eq!(
            cos_pi_over(&c, Order::Infinite).unwrap(),
            ExactReal::one(&c)
        );
        let half = cos_pi_over(&c, Order::Finite(3)).unwrap();
        assert_eq!((&half * &half).as_rational(), Some(rat(1, 4)));
        assert_eq!(
            cos_pi_over(&c, Order::Finite(5)),
            Err(FieldError::NotInField { m: 5, level: 12 })
        );
        // cos(π/4)² = 1/2
        let c4 = cos_pi_over(&c, Order::Finite(4)).unwrap();
        assert_eq!(c4.square().as_rational(), Some(rat(1, 2)));
    }

    #[test]
    fn signs() {
        let c = ctx_for(&[5]);
        assert_eq!(ExactReal::zero(&c).signum(), 0);
        let t = c.theta();
        let d = &t - &ExactReal::one(&c);
        assert_eq!(d.signum(), 1);
        assert_eq!(d.signum_exact(), 1);
        // θ - 1.618034 is tiny but positive: golden ratio = 1.6180339887...
        let approx = ExactReal::from_rational(&c, &rat(1_618_034, 1_000_000));
        assert_eq!((&t - &approx).signum_exact(), -1);
        assert_eq!((&t - &approx).signum(), -1);
    }

    #[test]
    fn division() {
        let c = ctx_for(&[7]);
        let t = c.theta();
        let x = &t - &ExactReal::from_i64(&c, 3);
        let q = x.checked_div(&x).unwrap();
        assert!(q.is_one());
        assert_eq!(
            x.checked_div(&ExactReal::zero(&c)),
            Err(FieldError::DivisionByZero)
        );
        let other = ctx_for(&[5]);
        assert!(matches!(
            x.arith(&other.theta(), ArithOp::Add),
            Err(FieldError::ContextMismatch { .. })
        ));
    }

    fn arb_element(level: u64) -> impl Strategy<Value = ExactReal> {
        let ctx = FieldContext::with_level(level);
        let d = ctx.degree();
        proptest::collection::vec((-50i64..50, 1i64..9), d).prop_map(move |v| {
            let coeffs: Vec<BigRational> = v.iter().map(|&(n, q)| rat(n, q)).collect();
            ExactReal::from_coeffs(&ctx, &coeffs)
        })
    }

    proptest! {
        #[test]
        fn add_sub_roundtrip(a in arb_element(12), b in arb_element(12)) {
            let back = &(&a + &b) - &b;
            prop_assert_eq!(back.coeffs(), a.coeffs());
        }

        #[test]
        fn sign_agrees_with_float(a in arb_element(42)) {
            let f = a.to_f64();
            if f.abs() > 1e-6 {
                prop_assert_eq!(a.signum(), if f > 0.0 { 1 } else { -1 });
                prop_assert_eq!(a.signum_exact(), a.signum());
            }
            prop_assert_eq!(a.signum() == 0, a.coeffs().iter().all(|c| *c == rat(0, 1)));
        }

        #[test]
        fn inverse_roundtrip(a in arb_element(10)) {
            if !a.is_zero() {
                prop_assert!((&a * &a.inverse().unwrap()).is_one());
            }
        }

        #[test]
        fn chebyshev_square_identity(m in prop::sample::select(vec![3u32, 4, 5, 6, 10, 12, 15, 20, 30, 60])) {
            // (2cos x)² = 2 + 2cos 2x
            let ctx = FieldContext::with_level(60);
            let tc = two_cos_pi_over(&ctx, Order::Finite(m)).unwrap();
            let double = ctx.two_cos_multiple(2 * 60 / m as u64);
            prop_assert_eq!(tc.square(), &ExactReal::from_i64(&ctx, 2) + &double);
        }
    }
}
