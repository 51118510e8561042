//! Exact integer and rational arithmetic shared by every other module.
//!
//! Integers are [`BigInt`] and rationals are [`BigRational`], which keeps
//! fractions reduced with a positive denominator after every operation.
//! The number-theoretic helpers here (Todd numbers, Bernoulli numbers,
//! p-adic valuations) are the small exact kernels the rest of the crate
//! is built on.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

pub fn int(n: i64) -> Integer {
    BigInt::from(n)
}

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_from_int(n: Integer) -> Rational {
    BigRational::from_integer(n)
}

/// `a / b`, failing instead of panicking when `b` is zero.
pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        return Err(Error::InvalidOperand("division by zero".into()));
    }
    Ok(a / b)
}

/// Returns the value as an integer if its denominator is one.
pub fn to_integer(q: &Rational) -> Option<Integer> {
    q.is_integer().then(|| q.to_integer())
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// All primes `p <= n` in increasing order.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

pub fn gcd(a: &Integer, b: &Integer) -> Integer {
    a.gcd(b)
}

/// `true` iff `d` divides `n`. Zero divides only zero.
pub fn divides(d: &Integer, n: &Integer) -> bool {
    if d.is_zero() {
        return n.is_zero();
    }
    (n % d).is_zero()
}

/// Positive divisors of `n >= 1` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn factorial(n: u64) -> Integer {
    (1..=n).fold(Integer::one(), |acc, k| acc * k)
}

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> Integer {
    if k < 0 || n < 0 || k > n {
        return Integer::zero();
    }
    let k = k.min(n - k);
    let mut acc = Integer::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Largest `e` with `p^e | n`.
pub fn p_adic_valuation(n: &Integer, p: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::InvalidOperand(format!("{p} is not prime")));
    }
    if n.is_zero() {
        return Err(Error::UndefinedValuation);
    }
    let p = Integer::from(p);
    let mut n = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Ok(e);
        }
        n = q;
        e += 1;
    }
}

/// p-adic valuation of a nonzero rational: `v_p(num) - v_p(den)`.
pub fn p_adic_valuation_rational(q: &Rational, p: u64) -> Result<i64> {
    if q.is_zero() {
        return Err(Error::UndefinedValuation);
    }
    let num = p_adic_valuation(q.numer(), p)? as i64;
    let den = p_adic_valuation(q.denom(), p)? as i64;
    Ok(num - den)
}

/// Legendre's formula `v_p(m!) = sum_{j>=1} floor(m / p^j)`.
pub fn factorial_valuation(m: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut pk = p;
    while pk <= m {
        total += m / pk;
        pk = match pk.checked_mul(p) {
            Some(next) => next,
            None => break,
        };
    }
    total
}

/// The Todd number `tau_d = prod_p p^floor(d / (p - 1))`, the denominator
/// of the degree-`d` part of the Todd class.
pub fn todd_number(d: u32) -> Integer {
    primes_up_to(d as u64 + 1).into_iter().fold(Integer::one(), |acc, p| {
        acc * num_traits::pow(Integer::from(p), (d as u64 / (p - 1)) as usize)
    })
}

/// A Todd number together with its index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToddNumber {
    pub index: u32,
    pub value: Integer,
}

impl ToddNumber {
    pub fn new(index: u32) -> Self {
        ToddNumber {
            index,
            value: todd_number(index),
        }
    }
}

/// Bernoulli numbers `B_0..=B_r` with `B_1 = -1/2`, from the recurrence
/// `sum_{j=0}^{k} C(k+1, j) B_j = 0`.
pub fn bernoulli_table(r: u32) -> Vec<Rational> {
    let mut table: Vec<Rational> = Vec::with_capacity(r as usize + 1);
    table.push(Rational::one());
    for k in 1..=r as i64 {
        let mut acc = Rational::zero();
        for (j, b) in table.iter().enumerate() {
            acc += rat_from_int(binomial(k + 1, j as i64)) * b;
        }
        table.push(-acc / rat_from_int(int(k + 1)));
    }
    table
}

pub fn bernoulli(r: u32) -> Rational {
    bernoulli_table(r).pop().expect("table holds B_0..=B_r")
}
