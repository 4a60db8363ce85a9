//! Truncated power series over an exact or floating scalar.
//!
//! `Series { c }` represents Σ c[k] ρ^k modulo ρ^len. Every operation keeps
//! only coefficients that are fully determined by its inputs.

use crate::rational::{qi, Q};
use num_traits::{One, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_q(q: &Q) -> Self;
    fn from_i64(i: i64) -> Self {
        Self::from_q(&qi(i))
    }
    fn is_zero_s(&self) -> bool;
    fn to_f64(&self) -> f64;
}

impl Scalar for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_q(q: &Q) -> Self {
        q.clone()
    }
    fn is_zero_s(&self) -> bool {
        Zero::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        crate::rational::to_f64(self)
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_q(q: &Q) -> Self {
        crate::rational::to_f64(q)
    }
    fn from_i64(i: i64) -> Self {
        i as f64
    }
    fn is_zero_s(&self) -> bool {
        *self == 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Series<T: Scalar> {
    pub c: Vec<T>,
}

impl<T: Scalar> Series<T> {
    pub fn zeros(len: usize) -> Self {
        Series { c: vec![T::zero(); len] }
    }

    pub fn constant(x: T, len: usize) -> Self {
        let mut s = Self::zeros(len);
        if len > 0 {
            s.c[0] = x;
        }
        s
    }

    pub fn from_vec(c: Vec<T>) -> Self {
        Series { c }
    }

    /// Series with prescribed derivatives d[k] = f^{(k)}(0).
    pub fn from_jets(d: &[T]) -> Self {
        let mut fact = T::one();
        let mut c = Vec::with_capacity(d.len());
        for (k, dk) in d.iter().enumerate() {
            if k > 0 {
                fact = fact * T::from_i64(k as i64);
            }
            c.push(dk.clone() / fact.clone());
        }
        Series { c }
    }

    /// The variable ρ itself (shifted by a base value `x0`).
    pub fn variable(x0: T, len: usize) -> Self {
        let mut s = Self::constant(x0, len);
        if len > 1 {
            s.c[1] = T::one();
        }
        s
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeff(&self, k: usize) -> T {
        self.c.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// k-th derivative at the base point.
    pub fn jet(&self, k: usize) -> T {
        let mut f = T::one();
        for i in 2..=k {
            f = f * T::from_i64(i as i64);
        }
        self.coeff(k) * f
    }

    pub fn truncate(&self, len: usize) -> Self {
        let mut c = self.c.clone();
        c.truncate(len);
        Series { c }
    }

    pub fn add(&self, o: &Self) -> Self {
        let len = self.len().min(o.len());
        Series { c: (0..len).map(|k| self.c[k].clone() + o.c[k].clone()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let len = self.len().min(o.len());
        Series { c: (0..len).map(|k| self.c[k].clone() - o.c[k].clone()).collect() }
    }

    pub fn neg(&self) -> Self {
        Series { c: self.c.iter().map(|x| -x.clone()).collect() }
    }

    pub fn scale(&self, s: &T) -> Self {
        Series { c: self.c.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    pub fn add_const(&self, s: &T) -> Self {
        let mut r = self.clone();
        if !r.c.is_empty() {
            r.c[0] = r.c[0].clone() + s.clone();
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let len = self.len().min(o.len());
        let mut c = vec![T::zero(); len];
        for i in 0..len {
            if self.c[i].is_zero_s() {
                continue;
            }
            for j in 0..(len - i) {
                c[i + j] = c[i + j].clone() + self.c[i].clone() * o.c[j].clone();
            }
        }
        Series { c }
    }

    pub fn deriv(&self) -> Self {
        if self.c.is_empty() {
            return self.clone();
        }
        Series {
            c: (1..self.len()).map(|k| self.c[k].clone() * T::from_i64(k as i64)).collect(),
        }
    }

    /// Antiderivative vanishing at the base point.
    pub fn integral(&self) -> Self {
        let mut c = vec![T::zero()];
        for (k, x) in self.c.iter().enumerate() {
            c.push(x.clone() / T::from_i64(k as i64 + 1));
        }
        Series { c }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn recip(&self) -> Self {
        let len = self.len();
        let a0 = self.c[0].clone();
        assert!(!a0.is_zero_s(), "series reciprocal of a zero constant term");
        let mut r = vec![T::zero(); len];
        r[0] = T::one() / a0.clone();
        for k in 1..len {
            let mut s = T::zero();
            for j in 1..=k {
                s = s + self.c[j].clone() * r[k - j].clone();
            }
            r[k] = -s / a0.clone();
        }
        Series { c: r }
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.recip())
    }

    /// s^a for a series with constant term one.
    pub fn pow_q(&self, a: &Q) -> Self {
        let len = self.len();
        assert!(self.c[0] == T::one(), "pow_q needs a unit constant term");
        let a = T::from_q(a);
        let mut y = vec![T::zero(); len];
        y[0] = T::one();
        for k in 1..len {
            let mut s = T::zero();
            for j in 1..=k {
                let coef = a.clone() * T::from_i64(j as i64) - T::from_i64((k - j) as i64);
                s = s + coef * self.c[j].clone() * y[k - j].clone();
            }
            y[k] = s / T::from_i64(k as i64);
        }
        Series { c: y }
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut r = Series::constant(T::one(), self.len());
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// exp(s) for a series with zero constant term.
    pub fn exp(&self) -> Self {
        let len = self.len();
        assert!(self.c[0].is_zero_s(), "exp needs zero constant term");
        let mut y = vec![T::zero(); len];
        y[0] = T::one();
        for k in 1..len {
            let mut s = T::zero();
            for j in 1..=k {
                s = s + T::from_i64(j as i64) * self.c[j].clone() * y[k - j].clone();
            }
            y[k] = s / T::from_i64(k as i64);
        }
        Series { c: y }
    }

    /// ln(s) for a series with unit constant term.
    pub fn ln(&self) -> Self {
        assert!(self.c[0] == T::one(), "ln needs a unit constant term");
        let mut d = self.deriv().div(&self.truncate(self.len() - 1));
        d = d.integral();
        d
    }

    /// Composition self(inner) where inner has zero constant term.
    pub fn compose(&self, inner: &Self) -> Self {
        assert!(inner.c[0].is_zero_s(), "compose needs inner with zero constant term");
        let len = self.len().min(inner.len());
        let mut acc = Series::zeros(len);
        let mut p = Series::constant(T::one(), len);
        for k in 0..len {
            acc = acc.add(&p.scale(&self.c[k]));
            p = p.mul(&inner.truncate(len));
        }
        acc
    }

    /// Compositional inverse of a series with c0 = 0, c1 ≠ 0.
    pub fn reversion(&self) -> Self {
        let len = self.len();
        assert!(self.c[0].is_zero_s() && !self.c[1].is_zero_s());
        // Fixed-point iteration r ← (x − (s(r) − c1 r)) / c1, exact after len steps.
        let c1 = self.c[1].clone();
        let x = Series::variable(T::zero(), len);
        let mut tail = self.clone();
        tail.c[1] = T::zero();
        let mut r = x.scale(&(T::one() / c1.clone()));
        for _ in 0..len {
            r = x.sub(&tail.compose(&r)).scale(&(T::one() / c1.clone()));
        }
        r
    }

    pub fn to_f64(&self) -> Series<f64> {
        Series { c: self.c.iter().map(|x| x.to_f64()).collect() }
    }
}

/// sin(ρ0 + ε) and cos(ρ0 + ε) as series in ε given sin ρ0, cos ρ0.
pub fn sin_cos_at<T: Scalar>(s0: T, c0: T, len: usize) -> (Series<T>, Series<T>) {
    let mut sin = Vec::with_capacity(len);
    let mut cos = Vec::with_capacity(len);
    let mut fact = T::one();
    for k in 0..len {
        if k > 0 {
            fact = fact * T::from_i64(k as i64);
        }
        // derivatives cycle: sin, cos, -sin, -cos
        let (ds, dc) = match k % 4 {
            0 => (s0.clone(), c0.clone()),
            1 => (c0.clone(), -s0.clone()),
            2 => (-s0.clone(), -c0.clone()),
            _ => (-c0.clone(), s0.clone()),
        };
        sin.push(ds / fact.clone());
        cos.push(dc / fact.clone());
    }
    (Series { c: sin }, Series { c: cos })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn exp_ln_roundtrip() {
        let s = Series::<Q>::from_vec(vec![qi(0), qi(1), q(1, 3), qi(-2), qi(0), q(5, 7)]);
        let e = s.exp();
        assert_eq!(e.ln(), s);
    }

    #[test]
    fn reversion_inverts_sine() {
        let (s, _) = sin_cos_at::<Q>(qi(0), qi(1), 8);
        let r = s.reversion();
        let id = s.compose(&r);
        assert_eq!(id, Series::variable(qi(0), 8));
    }

    #[test]
    fn binomial_power_matches_product() {
        let s = Series::<Q>::from_vec(vec![qi(1), q(1, 2), qi(3), qi(-1)]);
        assert_eq!(s.pow_q(&qi(3)), s.powi(3));
        let h = s.pow_q(&q(1, 2));
        assert_eq!(h.mul(&h), s);
    }
}
