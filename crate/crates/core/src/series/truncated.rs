use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Power-series prefix `c_0 + c_1 z + ... + c_N z^N` with explicit order `N`.
///
/// Every operation returns the exact prefix of the corresponding
/// infinite-series operation; binary operations truncate to the smaller order.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries<S> {
    coeffs: Vec<S>,
}

impl<S: Field> TruncatedSeries<S> {
    /// Pads with zeros or drops coefficients so that exactly `order + 1` remain.
    pub fn new(mut coeffs: Vec<S>, order: usize) -> Self {
        coeffs.resize(order + 1, S::zero());
        Self { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> S) -> Self {
        Self { coeffs: (0..=order).map(f).collect() }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: S, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(S::one(), order)
    }

    /// The identity series `z`.
    pub fn variable(order: usize) -> Self {
        Self::new(vec![S::zero(), S::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// `[z^i]`; zero beyond the order.
    pub fn coeff(&self, i: usize) -> S {
        self.coeffs.get(i).cloned().unwrap_or_else(S::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order.min(self.order()))
    }

    pub fn scale(&self, c: &S) -> Self {
        Self { coeffs: self.coeffs.iter().map(|v| v.clone() * c.clone()).collect() }
    }

    /// Multiplication by `z`; the top coefficient falls off.
    pub fn shift_up(&self) -> Self {
        let mut c = Vec::with_capacity(self.coeffs.len());
        c.push(S::zero());
        c.extend_from_slice(&self.coeffs[..self.order()]);
        Self { coeffs: c }
    }

    /// `z f'(z)`, same order.
    pub fn z_derivative(&self) -> Self {
        Self::from_fn(self.order(), |i| S::from_i64(i as i64) * self.coeffs[i].clone())
    }

    pub fn eval(&self, z: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, c| acc * z.clone() + c.clone())
    }

    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return Err(Error::SeriesPrecondition("reciprocal needs a nonzero constant term".into()));
        }
        let inv0 = S::one() / c0;
        let mut out: Vec<S> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for n in 1..=self.order() {
            let acc = (1..=n).fold(S::zero(), |acc, k| acc + self.coeffs[k].clone() * out[n - k].clone());
            out.push(-(acc * inv0.clone()));
        }
        Ok(Self { coeffs: out })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.reciprocal()?)
    }

    /// `self(inner(z))`; requires `inner(0) = 0`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::SeriesPrecondition("inner series of a composition must vanish at 0".into()));
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Self::zero(order);
        for c in self.coeffs[..=order].iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] = acc.coeffs[0].clone() + c.clone();
        }
        Ok(acc)
    }

    /// `self^alpha` for a series with constant term one.
    pub fn pow(&self, alpha: &S) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::SeriesPrecondition("power series base must start with 1".into()));
        }
        let mut out: Vec<S> = Vec::with_capacity(self.coeffs.len());
        out.push(S::one());
        for n in 1..=self.order() {
            let acc = (1..=n).fold(S::zero(), |acc, k| {
                let w = alpha.clone() * S::from_i64(k as i64) - S::from_i64((n - k) as i64);
                acc + w * self.coeffs[k].clone() * out[n - k].clone()
            });
            out.push(acc / S::from_i64(n as i64));
        }
        Ok(Self { coeffs: out })
    }

    /// Compositional inverse; requires `c_0 = 0` and `c_1 != 0`.
    ///
    /// Uses Lagrange inversion `[w^n] g = (1/n) [z^{n-1}] (z / f(z))^n`.
    pub fn reversion(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() || self.order() == 0 || self.coeffs[1].is_zero() {
            return Err(Error::SeriesPrecondition("reversion needs c0 = 0 and c1 != 0".into()));
        }
        let order = self.order();
        // f(z)/z, truncated to order - 1
        let quotient = Self::new(self.coeffs[1..].to_vec(), order - 1);
        let h = quotient.reciprocal()?;
        let mut out = vec![S::zero(); order + 1];
        let mut power = Self::one(order - 1);
        for n in 1..=order {
            power = &power * &h;
            out[n] = power.coeffs[n - 1].clone() / S::from_i64(n as i64);
        }
        Ok(Self { coeffs: out })
    }
}

impl<S: Field> Add for &TruncatedSeries<S> {
    type Output = TruncatedSeries<S>;
    fn add(self, rhs: Self) -> TruncatedSeries<S> {
        let order = self.order().min(rhs.order());
        TruncatedSeries::from_fn(order, |i| self.coeffs[i].clone() + rhs.coeffs[i].clone())
    }
}

impl<S: Field> Sub for &TruncatedSeries<S> {
    type Output = TruncatedSeries<S>;
    fn sub(self, rhs: Self) -> TruncatedSeries<S> {
        let order = self.order().min(rhs.order());
        TruncatedSeries::from_fn(order, |i| self.coeffs[i].clone() - rhs.coeffs[i].clone())
    }
}

impl<S: Field> Mul for &TruncatedSeries<S> {
    type Output = TruncatedSeries<S>;
    fn mul(self, rhs: Self) -> TruncatedSeries<S> {
        let order = self.order().min(rhs.order());
        TruncatedSeries::from_fn(order, |n| {
            (0..=n).fold(S::zero(), |acc, k| acc + self.coeffs[k].clone() * rhs.coeffs[n - k].clone())
        })
    }
}

impl<S: Field> Neg for &TruncatedSeries<S> {
    type Output = TruncatedSeries<S>;
    fn neg(self) -> TruncatedSeries<S> {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}
