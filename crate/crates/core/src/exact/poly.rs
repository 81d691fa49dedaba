//! Dense univariate polynomials, coefficients stored in ascending degree.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub(crate) fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

#[cfg(test)]
pub(crate) fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Exact division by a monic integer polynomial. Panics if the division is
/// not exact.
fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    debug_assert!(den[dn].is_one());
    let mut rem = num.to_vec();
    if rem.len() < den.len() {
        assert!(rem.iter().all(Zero::is_zero), "inexact division");
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= &c * d;
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact division");
    quot
}

/// The n-th cyclotomic polynomial.
pub(crate) fn cyclotomic(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    // x^n - 1 divided by every cyclotomic factor of a proper divisor.
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = div_exact_monic(&p, &cyclotomic(d));
        }
    }
    p
}

/// Minimal polynomial of 2cos(2π/n), obtained from the palindromic
/// cyclotomic polynomial through z^k + z^-k = C_k(z + 1/z).
pub(crate) fn real_cyclotomic(n: u64) -> Vec<BigInt> {
    match n {
        1 => return vec![BigInt::from(-2), BigInt::one()],
        2 => return vec![BigInt::from(2), BigInt::one()],
        _ => {}
    }
    let phi = cyclotomic(n);
    let h = (phi.len() - 1) / 2;
    // C_0 = 2, C_1 = x, C_{k+1} = x C_k - C_{k-1}
    let mut cheb: Vec<Vec<BigInt>> =
        vec![vec![BigInt::from(2)], vec![BigInt::zero(), BigInt::one()]];
    for k in 1..h {
        let mut next = vec![BigInt::zero(); k + 2];
        for (i, c) in cheb[k].iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in cheb[k - 1].iter().enumerate() {
            next[i] -= c;
        }
        cheb.push(next);
    }
    let mut out = vec![BigInt::zero(); h + 1];
    out[0] += &phi[h];
    for k in 1..=h {
        for (i, c) in cheb[k].iter().enumerate() {
            out[i] += &phi[h + k] * c;
        }
    }
    out
}

pub(crate) fn eval_rational(p: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

/// Polynomial arithmetic over the rationals, used for field inverses.
pub(crate) fn rat_divmod(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (vec![BigRational::zero()], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, d) in b.iter().enumerate() {
            rem[k + j] = &rem[k + j] - &c * d;
        }
        quot[k] = c;
    }
    rem.truncate(db.max(1));
    trim(&mut rem);
    (quot, rem)
}

fn rat_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + x * y;
        }
    }
    out
}

fn rat_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] = &out[i] + x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] = &out[i] - y;
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo the irreducible `modulus`, or `None` if `a` is zero.
pub(crate) fn rat_inverse_mod(
    a: &[BigRational],
    modulus: &[BigRational],
) -> Option<Vec<BigRational>> {
    let mut r0 = modulus.to_vec();
    let mut r1 = a.to_vec();
    trim(&mut r1);
    if r1.iter().all(Zero::is_zero) {
        return None;
    }
    let mut t0 = vec![BigRational::zero()];
    let mut t1 = vec![BigRational::one()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = rat_divmod(&r0, &r1);
        let t = rat_sub(&t0, &rat_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    // r0 is a nonzero constant since the modulus is irreducible
    assert_eq!(r0.len(), 1, "modulus is not irreducible");
    let c = r0[0].clone();
    let (_, t) = rat_divmod(&t0, modulus);
    Some(t.into_iter().map(|x| x / &c).collect())
}

/// Squarefreeness of an integer polynomial modulo a prime `p`.
pub(crate) fn squarefree_mod(poly: &[BigInt], p: u64) -> bool {
    let reduce = |c: &BigInt| -> u64 {
        let m = c.mod_floor(&BigInt::from(p));
        m.iter_u64_digits().next().unwrap_or(0)
    };
    let f: Vec<u64> = poly.iter().map(reduce).collect();
    let df: Vec<u64> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| (c * (i as u64 % p)) % p)
        .collect();
    let g = gcd_mod(f, df, p);
    g.len() == 1
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut newt) = (0i128, 1i128);
    let (mut r, mut newr) = (p as i128, a as i128);
    while newr != 0 {
        let q = r / newr;
        (t, newt) = (newt, t - q * newt);
        (r, newr) = (newr, r - q * newr);
    }
    t.rem_euclid(p as i128) as u64
}

fn trim_mod(p: &mut Vec<u64>) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim_mod(&mut a);
    trim_mod(&mut b);
    while !(b.len() == 1 && b[0] == 0) && !b.is_empty() {
        // a mod b
        let lead_inv = inv_mod(*b.last().unwrap(), p);
        while a.len() >= b.len() && !(a.len() == 1 && a[0] == 0) {
            let shift = a.len() - b.len();
            let c = a.last().unwrap() * lead_inv % p;
            for (j, d) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + p * p - c * d % p) % p;
            }
            a.pop();
            if a.is_empty() {
                a.push(0);
            }
            trim_mod(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn abs_f64(c: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    c.abs().to_f64().unwrap_or(f64::INFINITY)
}
