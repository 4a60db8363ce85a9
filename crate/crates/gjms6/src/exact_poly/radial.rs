//! Laurent polynomials in the radial variable r, integrated against r^n on [0,1].

use crate::rational::{qi, Q};
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RadialPoly {
    terms: BTreeMap<i32, Q>,
}

impl RadialPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(e: i32, c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c);
        p
    }

    fn add_term(&mut self, e: i32, c: Q) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(e).or_insert_with(Q::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// (exponent, coefficient) pairs in increasing exponent.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &Q)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (e, c) in &o.terms {
            p.add_term(*e, c.clone());
        }
        p
    }

    pub fn scale(&self, s: &Q) -> Self {
        let mut p = Self::zero();
        for (e, c) in &self.terms {
            p.add_term(*e, c * s);
        }
        p
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                p.add_term(e1 + e2, c1 * c2);
            }
        }
        p
    }

    /// Multiply by r^k.
    pub fn shift(&self, k: i32) -> Self {
        RadialPoly { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn deriv(&self) -> Self {
        let mut p = Self::zero();
        for (e, c) in &self.terms {
            p.add_term(e - 1, c * qi(*e as i64));
        }
        p
    }

    pub fn eval_one(&self) -> Q {
        self.terms.values().fold(Q::zero(), |a, c| a + c)
    }

    /// ∫_0^1 p(r) r^n dr; every exponent must satisfy e + n > −1.
    pub fn integrate_weight(&self, n: i32) -> Q {
        let mut s = Q::zero();
        for (e, c) in &self.terms {
            assert!(e + n > -1, "radial integral diverges at the origin");
            s += c / qi((e + n + 1) as i64);
        }
        s
    }

    /// Mode Laplacian R'' + (n/r)R' − λR/r² on the unit ball B^{n+1}.
    pub fn mode_laplacian(&self, n: i64, lambda: &Q) -> Self {
        let d1 = self.deriv();
        self.deriv().deriv().add(&d1.shift(-1).scale(&qi(n))).add(&self.shift(-2).scale(&-lambda.clone()))
    }
}
