//! Exact rings for conformal rescalings e^{2σ}g of a flat metric with σ
//! polynomial: finite sums Σ p_k e^{kσ/2}, and first-order jets a + εb in the
//! deformation parameter of e^{2εσ}g.

use crate::exact_poly::MultiPoly;
use crate::rational::{q, qi, Q};
use std::collections::BTreeMap;
use std::fmt::Debug;
use std::rc::Rc;

/// Operations the rescaled calculus needs from its coefficient ring.
pub trait ConfRing: Clone + Debug + PartialEq {
    fn sigma(&self) -> &MultiPoly;
    fn zero_like(&self) -> Self;
    fn poly_like(&self, p: MultiPoly) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, s: &Q) -> Self;
    fn deriv(&self, i: usize) -> Self;
    /// e^{kσ/2}
    fn epow(&self, k: i32) -> Self;
    /// Multiplication by e^{kσ/2}, which may be cheaper than `mul(epow(k))`.
    fn shift(&self, k: i32) -> Self {
        self.mul(&self.epow(k))
    }
    /// ∂_i σ as a ring element.
    fn sig(&self, i: usize) -> Self;
    /// ∂_i∂_j σ as a ring element.
    fn sig2(&self, i: usize, j: usize) -> Self;
    /// Restriction to the hyperplane x_var = 0; σ is restricted alongside.
    fn restrict_zero(&self, var: usize) -> Self;
    fn is_zero(&self) -> bool;

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&qi(-1)))
    }
}

/// Σ_k p_k E^k with E = e^{σ/2}.
#[derive(Clone, Debug)]
pub struct ConfPoly {
    sigma: Rc<MultiPoly>,
    terms: BTreeMap<i32, MultiPoly>,
}

impl PartialEq for ConfPoly {
    fn eq(&self, o: &Self) -> bool {
        self.sub(o).is_zero()
    }
}

impl ConfPoly {
    pub fn new(sigma: MultiPoly, p: MultiPoly) -> Self {
        let mut c = ConfPoly { sigma: Rc::new(sigma), terms: BTreeMap::new() };
        c.push(0, p);
        c
    }

    fn with_terms(&self, terms: BTreeMap<i32, MultiPoly>) -> Self {
        ConfPoly { sigma: self.sigma.clone(), terms }.normalized()
    }

    fn push(&mut self, k: i32, p: MultiPoly) {
        if p.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(|| MultiPoly::zero(p.dim()));
        *e = &*e + &p;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// With σ ≡ 0 every power of E is 1; collapse to a single term.
    fn normalized(mut self) -> Self {
        if self.sigma.is_zero() && self.terms.keys().any(|&k| k != 0) {
            let old = std::mem::take(&mut self.terms);
            for (_, p) in old {
                self.push(0, p);
            }
        }
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i32, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn dim(&self) -> usize {
        self.sigma.dim()
    }
}

impl ConfRing for ConfPoly {
    fn sigma(&self) -> &MultiPoly {
        &self.sigma
    }
    fn zero_like(&self) -> Self {
        ConfPoly { sigma: self.sigma.clone(), terms: BTreeMap::new() }
    }
    fn poly_like(&self, p: MultiPoly) -> Self {
        let mut c = self.zero_like();
        c.push(0, p);
        c
    }
    fn add(&self, o: &Self) -> Self {
        let mut c = self.clone();
        for (k, p) in &o.terms {
            c.push(*k, p.clone());
        }
        c
    }
    fn mul(&self, o: &Self) -> Self {
        let mut c = self.zero_like();
        for (k1, p1) in &self.terms {
            for (k2, p2) in &o.terms {
                c.push(k1 + k2, p1 * p2);
            }
        }
        c.normalized()
    }
    fn scale(&self, s: &Q) -> Self {
        self.with_terms(self.terms.iter().map(|(k, p)| (*k, p.scale(s))).filter(|(_, p)| !p.is_zero()).collect())
    }
    fn deriv(&self, i: usize) -> Self {
        let si = self.sigma.deriv(i);
        let mut c = self.zero_like();
        for (k, p) in &self.terms {
            c.push(*k, p.deriv(i));
            if *k != 0 {
                c.push(*k, (&si * p).scale(&q(*k as i64, 2)));
            }
        }
        c
    }
    fn epow(&self, k: i32) -> Self {
        let mut c = self.zero_like();
        c.push(k, MultiPoly::one(self.dim()));
        c.normalized()
    }
    fn shift(&self, k: i32) -> Self {
        self.with_terms(self.terms.iter().map(|(j, p)| (j + k, p.clone())).collect())
    }
    fn sig(&self, i: usize) -> Self {
        self.poly_like(self.sigma.deriv(i))
    }
    fn sig2(&self, i: usize, j: usize) -> Self {
        self.poly_like(self.sigma.deriv(i).deriv(j))
    }
    fn restrict_zero(&self, var: usize) -> Self {
        let mut c = ConfPoly { sigma: Rc::new(self.sigma.restrict_zero(var)), terms: BTreeMap::new() };
        for (k, p) in &self.terms {
            c.push(*k, p.restrict_zero(var));
        }
        c.normalized()
    }
    fn is_zero(&self) -> bool {
        self.terms.values().all(|p| p.is_zero())
    }
}

/// a + εb for the metric e^{2εσ}g, truncated after first order in ε.
#[derive(Clone, Debug)]
pub struct DualPoly {
    sigma: Rc<MultiPoly>,
    pub a: MultiPoly,
    pub b: MultiPoly,
}

impl PartialEq for DualPoly {
    fn eq(&self, o: &Self) -> bool {
        self.a == o.a && self.b == o.b
    }
}

impl DualPoly {
    pub fn new(sigma: MultiPoly, a: MultiPoly) -> Self {
        let b = MultiPoly::zero(a.dim());
        DualPoly { sigma: Rc::new(sigma), a, b }
    }

    fn make(&self, a: MultiPoly, b: MultiPoly) -> Self {
        DualPoly { sigma: self.sigma.clone(), a, b }
    }
}

impl ConfRing for DualPoly {
    fn sigma(&self) -> &MultiPoly {
        &self.sigma
    }
    fn zero_like(&self) -> Self {
        let z = MultiPoly::zero(self.sigma.dim());
        self.make(z.clone(), z)
    }
    fn poly_like(&self, p: MultiPoly) -> Self {
        let z = MultiPoly::zero(p.dim());
        self.make(p, z)
    }
    fn add(&self, o: &Self) -> Self {
        self.make(&self.a + &o.a, &self.b + &o.b)
    }
    fn mul(&self, o: &Self) -> Self {
        self.make(&self.a * &o.a, &(&self.a * &o.b) + &(&self.b * &o.a))
    }
    fn scale(&self, s: &Q) -> Self {
        self.make(self.a.scale(s), self.b.scale(s))
    }
    fn deriv(&self, i: usize) -> Self {
        self.make(self.a.deriv(i), self.b.deriv(i))
    }
    fn epow(&self, k: i32) -> Self {
        let d = self.sigma.dim();
        self.make(MultiPoly::one(d), self.sigma.scale(&q(k as i64, 2)))
    }
    fn sig(&self, i: usize) -> Self {
        let d = self.sigma.dim();
        self.make(MultiPoly::zero(d), self.sigma.deriv(i))
    }
    fn sig2(&self, i: usize, j: usize) -> Self {
        let d = self.sigma.dim();
        self.make(MultiPoly::zero(d), self.sigma.deriv(i).deriv(j))
    }
    fn restrict_zero(&self, var: usize) -> Self {
        DualPoly {
            sigma: Rc::new(self.sigma.restrict_zero(var)),
            a: self.a.restrict_zero(var),
            b: self.b.restrict_zero(var),
        }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_derivative() {
        // σ = y in two variables; ∂_y(E²) = E².
        let s = MultiPoly::var(2, 1);
        let e2 = ConfPoly::new(s.clone(), MultiPoly::one(2)).epow(2);
        assert_eq!(e2.deriv(1), e2);
        assert!(e2.deriv(0).is_zero());
        let d = DualPoly::new(s, MultiPoly::one(2)).epow(2);
        assert_eq!(d.b, MultiPoly::var(2, 1));
    }

    #[test]
    fn zero_sigma_collapses_powers() {
        let c = ConfPoly::new(MultiPoly::zero(2), MultiPoly::one(2));
        assert!(c.epow(3).sub(&c).is_zero());
    }
}
