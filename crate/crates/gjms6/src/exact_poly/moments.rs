//! Exact integration of polynomials over the unit ball B^{n+1} and sphere S^n.
//!
//! Results are rational multiples of Vol(S^n); the volume itself is only
//! expanded numerically on request.

use super::multipoly::{Mono, MultiPoly};
use crate::error::{Gjms6Error, Result};
use crate::rational::{fmt_q, qi, to_f64, Q};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MomentUnit {
    Pure,
    VolSn,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentScalar {
    pub q: Q,
    pub unit: MomentUnit,
}

impl MomentScalar {
    pub fn pure(q: Q) -> Self {
        MomentScalar { q, unit: MomentUnit::Pure }
    }

    pub fn vol(q: Q) -> Self {
        MomentScalar { q, unit: MomentUnit::VolSn }
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    /// Sum; zero is compatible with either unit.
    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        if self.q.is_zero() {
            return Ok(o.clone());
        }
        if o.q.is_zero() {
            return Ok(self.clone());
        }
        if self.unit != o.unit {
            return Err(Gjms6Error::Unsupported("adding moments with different units".into()));
        }
        Ok(MomentScalar { q: &self.q + &o.q, unit: self.unit })
    }

    pub fn scale(&self, s: &Q) -> Self {
        MomentScalar { q: &self.q * s, unit: self.unit }
    }

    pub fn to_f64(&self, n: usize) -> f64 {
        match self.unit {
            MomentUnit::Pure => to_f64(&self.q),
            MomentUnit::VolSn => to_f64(&self.q) * sphere_volume(n),
        }
    }

    pub fn render(&self) -> String {
        match self.unit {
            MomentUnit::Pure => fmt_q(&self.q),
            MomentUnit::VolSn => format!("{}*Vol(S^n)", fmt_q(&self.q)),
        }
    }
}

/// Vol(S^n) via Vol(S^n) = 2π/(n−1)·Vol(S^{n−2}).
pub fn sphere_volume(n: usize) -> f64 {
    match n {
        0 => 2.0,
        1 => 2.0 * PI,
        _ => 2.0 * PI / (n as f64 - 1.0) * sphere_volume(n - 2),
    }
}

/// ∮_{S^n} x^α / Vol(S^n) with d = n+1 ambient variables.
pub fn sphere_monomial(m: Mono, d: usize) -> Q {
    let mut num = qi(1);
    let mut deg = 0u32;
    for i in 0..d {
        let e = m.exp(i);
        if e % 2 == 1 {
            return Q::zero();
        }
        let mut k = e as i64 - 1;
        while k > 1 {
            num *= qi(k);
            k -= 2;
        }
        deg += e;
    }
    let mut den = qi(1);
    for k in 0..(deg / 2) {
        den *= qi(d as i64 + 2 * k as i64);
    }
    num / den
}

pub fn sphere_integral(p: &MultiPoly) -> MomentScalar {
    let d = p.dim();
    let mut s = Q::zero();
    for (m, c) in p.terms() {
        s += c * sphere_monomial(*m, d);
    }
    MomentScalar::vol(s)
}

pub fn ball_integral(p: &MultiPoly) -> MomentScalar {
    let d = p.dim();
    let mut s = Q::zero();
    for (m, c) in p.terms() {
        s += c * sphere_monomial(*m, d) / qi(m.degree() as i64 + d as i64);
    }
    MomentScalar::vol(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn basic_moments() {
        let d = 8;
        assert_eq!(sphere_integral(&MultiPoly::one(d)), MomentScalar::vol(qi(1)));
        let x1sq = MultiPoly::var(d, 0).pow(2);
        assert_eq!(sphere_integral(&x1sq), MomentScalar::vol(q(1, 8)));
        assert_eq!(ball_integral(&MultiPoly::one(d)), MomentScalar::vol(q(1, 8)));
        assert!(sphere_integral(&MultiPoly::var(d, 3)).is_zero());
    }

    #[test]
    fn volumes() {
        assert!((sphere_volume(2) - 4.0 * PI).abs() < 1e-12);
        assert!((sphere_volume(7) - PI.powi(4) / 3.0).abs() < 1e-12);
    }

    #[test]
    fn unit_mismatch_is_rejected() {
        let a = MomentScalar::vol(qi(1));
        let b = MomentScalar::pure(qi(1));
        assert!(a.checked_add(&b).is_err());
        assert!(a.checked_add(&MomentScalar::pure(qi(0))).is_ok());
    }
}
