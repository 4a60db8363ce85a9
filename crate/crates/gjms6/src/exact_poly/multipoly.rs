//! Sparse multivariate polynomials with rational coefficients.
//!
//! Exponents are packed eight bits per variable into a `u128`, so up to 16
//! variables are supported with per-variable degree at most 255.

use crate::error::{Gjms6Error, Result};
use crate::rational::{qi, Q};
use num_traits::{One, Zero};
use rand::Rng;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub const MAX_VARS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Mono(u128);

impl Mono {
    #[inline]
    fn shift(i: usize) -> u32 {
        (8 * (MAX_VARS - 1 - i)) as u32
    }

    pub fn one() -> Self {
        Mono(0)
    }

    pub fn from_exps(e: &[u32]) -> Self {
        let mut m = 0u128;
        for (i, &x) in e.iter().enumerate() {
            assert!(x < 256 && i < MAX_VARS, "monomial exponent out of range");
            m |= (x as u128) << Self::shift(i);
        }
        Mono(m)
    }

    #[inline]
    pub fn exp(self, i: usize) -> u32 {
        ((self.0 >> Self::shift(i)) & 0xff) as u32
    }

    #[inline]
    pub fn with_exp(self, i: usize, e: u32) -> Self {
        let s = Self::shift(i);
        Mono((self.0 & !(0xffu128 << s)) | ((e as u128) << s))
    }

    #[inline]
    pub fn times(self, o: Mono) -> Self {
        debug_assert!((0..MAX_VARS).all(|i| self.exp(i) + o.exp(i) < 256));
        Mono(self.0 + o.0)
    }

    pub fn degree(self) -> u32 {
        (0..MAX_VARS).map(|i| self.exp(i)).sum()
    }

    pub fn exps(self, dim: usize) -> Vec<u32> {
        (0..dim).map(|i| self.exp(i)).collect()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    dim: usize,
    terms: BTreeMap<Mono, Q>,
}

impl MultiPoly {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_VARS);
        MultiPoly { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Q) -> Self {
        let mut p = Self::zero(dim);
        if !c.is_zero() {
            p.terms.insert(Mono::one(), c);
        }
        p
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Q::one())
    }

    pub fn var(dim: usize, i: usize) -> Self {
        assert!(i < dim);
        let mut e = vec![0; dim];
        e[i] = 1;
        Self::monomial(dim, &e, Q::one())
    }

    pub fn monomial(dim: usize, exps: &[u32], c: Q) -> Self {
        let mut p = Self::zero(dim);
        if !c.is_zero() {
            p.terms.insert(Mono::from_exps(exps), c);
        }
        p
    }

    pub fn from_terms(dim: usize, it: impl IntoIterator<Item = (Mono, Q)>) -> Self {
        let mut p = Self::zero(dim);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Mono) -> Q {
        self.terms.get(&m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(Mono::one())
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(i)).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, o: &Self) {
        assert_eq!(self.dim, o.dim, "polynomial dimension mismatch");
    }

    pub fn scale(&self, s: &Q) -> Self {
        if s.is_zero() {
            return Self::zero(self.dim);
        }
        MultiPoly { dim: self.dim, terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect() }
    }

    /// ∂/∂x_i.
    pub fn deriv(&self, i: usize) -> Self {
        let mut p = Self::zero(self.dim);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e > 0 {
                p.add_term(m.with_exp(i, e - 1), c * qi(e as i64));
            }
        }
        p
    }

    pub fn laplacian(&self) -> Self {
        let mut p = Self::zero(self.dim);
        for (m, c) in &self.terms {
            for i in 0..self.dim {
                let e = m.exp(i);
                if e > 1 {
                    p.add_term(m.with_exp(i, e - 2), c * qi((e * (e - 1)) as i64));
                }
            }
        }
        p
    }

    /// Euler operator Σ x_i ∂_i (multiplies each monomial by its degree).
    pub fn euler(&self) -> Self {
        MultiPoly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() > 0)
                .map(|(m, c)| (*m, c * qi(m.degree() as i64)))
                .collect(),
        }
    }

    /// Substitute x_i = v.
    pub fn eval_var(&self, i: usize, v: &Q) -> Self {
        let mut p = Self::zero(self.dim);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            let mut c = c.clone();
            for _ in 0..e {
                c *= v;
            }
            p.add_term(m.with_exp(i, 0), c);
        }
        p
    }

    /// Substitute x_i = 0.
    pub fn restrict_zero(&self, i: usize) -> Self {
        MultiPoly {
            dim: self.dim,
            terms: self.terms.iter().filter(|(m, _)| m.exp(i) == 0).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        let mut s = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, xi) in x.iter().enumerate().take(self.dim) {
                for _ in 0..m.exp(i) {
                    t *= xi;
                }
            }
            s += t;
        }
        s
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        let mut s = 0.0;
        for (m, c) in &self.terms {
            let mut t = crate::rational::to_f64(c);
            for (i, xi) in x.iter().enumerate().take(self.dim) {
                t *= xi.powi(m.exp(i) as i32);
            }
            s += t;
        }
        s
    }

    /// Polynomial in more variables (new variables appended, unused).
    pub fn embed(&self, dim: usize) -> Self {
        assert!(dim >= self.dim);
        MultiPoly { dim, terms: self.terms.clone() }
    }

    /// Replace the variable list by a permutation: variable i goes to perm[i].
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut p = Self::zero(self.dim);
        for (m, c) in &self.terms {
            let mut e = vec![0; self.dim];
            for i in 0..self.dim {
                e[perm[i]] = m.exp(i);
            }
            p.add_term(Mono::from_exps(&e), c.clone());
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one(self.dim);
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    pub fn map_coeffs(&self, f: impl Fn(&Q) -> Q) -> Self {
        Self::from_terms(self.dim, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// |x|² in `dim` variables.
    pub fn radius_sq(dim: usize) -> Self {
        let mut p = Self::zero(dim);
        for i in 0..dim {
            let mut e = vec![0; dim];
            e[i] = 2;
            p.add_term(Mono::from_exps(&e), Q::one());
        }
        p
    }

    /// Random polynomial in the variables `active` with at most `terms` terms
    /// of total degree ≤ `max_deg` and small integer coefficients.
    pub fn random<R: Rng>(rng: &mut R, dim: usize, active: &[usize], max_deg: u32, terms: usize) -> Self {
        let mut p = Self::zero(dim);
        for _ in 0..terms {
            let deg = rng.gen_range(0..=max_deg);
            let mut e = vec![0u32; dim];
            for _ in 0..deg {
                e[active[rng.gen_range(0..active.len())]] += 1;
            }
            let mut c = rng.gen_range(-4i64..=4);
            if c == 0 {
                c = 1;
            }
            p.add_term(Mono::from_exps(&e), qi(c));
        }
        p
    }
}

/// Euclidean Laplacian with an explicit dimension check.
pub fn laplacian(p: &MultiPoly, d: usize) -> Result<MultiPoly> {
    if p.dim() != d {
        return Err(Gjms6Error::DimensionMismatch { expected: d, got: p.dim() });
    }
    Ok(p.laplacian())
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", crate::rational::fmt_q(c))?;
            for i in 0..self.dim {
                match m.exp(i) {
                    0 => {}
                    1 => write!(f, "*x{}", i)?,
                    e => write!(f, "*x{}^{}", i, e)?,
                }
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        self.check_dim(o);
        let (big, small) = if self.terms.len() >= o.terms.len() { (self, o) } else { (o, self) };
        let mut p = big.clone();
        for (m, c) in &small.terms {
            p.add_term(*m, c.clone());
        }
        p
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        self.check_dim(o);
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(*m, -c.clone());
        }
        p
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        self.check_dim(o);
        let mut p = MultiPoly::zero(self.dim);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                p.add_term(m1.times(*m2), c1 * c2);
            }
        }
        p
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Q::one())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: &MultiPoly) -> MultiPoly {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<MultiPoly> for &'a MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                self.$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn x(d: usize, i: usize) -> MultiPoly {
        MultiPoly::var(d, i)
    }

    #[test]
    fn laplacian_examples() {
        let d = 6;
        assert_eq!(x(d, 0).pow(2).laplacian(), MultiPoly::constant(d, qi(2)));
        let r6 = MultiPoly::radius_sq(d).pow(3);
        let r4 = MultiPoly::radius_sq(d).pow(2);
        assert_eq!(r6.laplacian(), r4.scale(&qi(60)));
        assert!((x(d, 0) * x(d, 5)).laplacian().is_zero());
        assert!(laplacian(&r6, 5).is_err());
    }

    #[test]
    fn euler_and_restriction() {
        let d = 3;
        let p = x(d, 0).pow(2) * x(d, 2) + x(d, 1).scale(&q(1, 2));
        assert_eq!(p.euler(), (x(d, 0).pow(2) * x(d, 2)).scale(&qi(3)) + x(d, 1).scale(&q(1, 2)));
        assert_eq!(p.restrict_zero(2), x(d, 1).scale(&q(1, 2)));
        assert_eq!(p.eval(&[qi(1), qi(2), qi(3)]), qi(4));
    }

    #[test]
    fn product_rule() {
        let d = 3;
        let a = x(d, 0).pow(3) + x(d, 1) * x(d, 2);
        let b = x(d, 0) * x(d, 2) + MultiPoly::constant(d, qi(5));
        assert_eq!((&a * &b).deriv(0), a.deriv(0) * &b + &a * b.deriv(0));
    }
}
