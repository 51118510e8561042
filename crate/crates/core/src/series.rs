//! Truncated univariate power series over the rationals.
//!
//! A [`PowerSeries`] of order `N` stores exactly the coefficients of
//! `z^0..=z^N`. Products are truncated at `N`, and binary operations between
//! series of different orders are rejected rather than silently re-truncated.
//! Only Taylor series are represented: every residue in this crate is
//! pre-factored into a power of `z` times a unit series, so the residue is a
//! single coefficient of the unit part.

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{factorial, int, rat_from_int, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Builds a series from `c_0, c_1, ...`; the order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidOperand(
                "a series needs at least the constant coefficient".into(),
            ));
        }
        Ok(PowerSeries { coeffs })
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(coeffs.iter().map(|&c| rat_from_int(int(c))).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> Result<&Rational> {
        self.coeffs.get(k).ok_or_else(|| {
            Error::InvalidOperand(format!(
                "coefficient index {k} beyond truncation order {}",
                self.order()
            ))
        })
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::InvalidOperand(format!(
                "truncation orders differ: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(PowerSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn invert(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NonInvertibleSeries);
        }
        let inv_c0 = c0.recip();
        let n = self.order();
        let mut out = Self::zero(n);
        out.coeffs[0] = inv_c0.clone();
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out.coeffs[k - j];
            }
            out.coeffs[k] = -acc * &inv_c0;
        }
        Ok(out)
    }

    /// Integer power by repeated squaring; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.invert()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.order());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

/// `(1 - e^{-d z}) / z` truncated at `order`: coefficient `k` is
/// `(-1)^k d^{k+1} / (k+1)!`.
pub fn reduced_exp_series(d: u64, order: usize) -> Result<PowerSeries> {
    if d == 0 {
        return Err(Error::InvalidOperand("degree must be positive".into()));
    }
    let d = int(d as i64);
    let coeffs = (0..=order)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let num = num_traits::pow(d.clone(), k + 1) * sign;
            Rational::new(num, factorial(k as u64 + 1))
        })
        .collect();
    PowerSeries::from_coeffs(coeffs)
}

/// The Todd series `z / (1 - e^{-z})`.
pub fn todd_series(order: usize) -> PowerSeries {
    reduced_exp_series(1, order)
        .and_then(|s| s.invert())
        .expect("(1 - e^{-z})/z has constant term 1")
}
