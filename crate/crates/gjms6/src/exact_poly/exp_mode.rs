//! Single-frequency half-space modes e^{−ty}·p(t, y, …) with Δ̄ acting as −t².

use super::multipoly::MultiPoly;
use crate::error::{Gjms6Error, Result};
use crate::rational::{factorial, qi, Q};
use num_traits::Zero;

/// Variable index of the frequency symbol t.
pub const T_VAR: usize = 0;
/// Variable index of the normal coordinate y.
pub const Y_VAR: usize = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeOp {
    Dy,
    Lap,
    BarLap,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpPolyMode {
    pub profile: MultiPoly,
}

impl ExpPolyMode {
    pub fn new(profile: MultiPoly) -> Result<Self> {
        if profile.dim() < 2 {
            return Err(Gjms6Error::DimensionMismatch { expected: 2, got: profile.dim() });
        }
        Ok(ExpPolyMode { profile })
    }

    pub fn dim(&self) -> usize {
        self.profile.dim()
    }

    pub fn t(&self) -> MultiPoly {
        MultiPoly::var(self.dim(), T_VAR)
    }

    pub fn y(&self) -> MultiPoly {
        MultiPoly::var(self.dim(), Y_VAR)
    }

    /// ∂_y(e^{−ty}p) = e^{−ty}(p_y − t p).
    pub fn dy(&self) -> Self {
        let p = &self.profile;
        ExpPolyMode { profile: p.deriv(Y_VAR) - self.t() * p }
    }

    /// (∂_y² − t²)(e^{−ty}p) = e^{−ty}(p_yy − 2t p_y).
    pub fn lap(&self) -> Self {
        let p = &self.profile;
        let two_t = self.t().scale(&qi(2));
        ExpPolyMode { profile: p.deriv(Y_VAR).deriv(Y_VAR) - two_t * p.deriv(Y_VAR) }
    }

    pub fn bar_lap(&self) -> Self {
        let t2 = self.t().pow(2);
        ExpPolyMode { profile: -(t2 * &self.profile) }
    }

    pub fn add(&self, o: &Self) -> Self {
        ExpPolyMode { profile: &self.profile + &o.profile }
    }

    pub fn scale(&self, s: &Q) -> Self {
        ExpPolyMode { profile: self.profile.scale(s) }
    }

    /// Profile at y = 0, a polynomial in t and the remaining symbols.
    pub fn boundary(&self) -> MultiPoly {
        self.profile.restrict_zero(Y_VAR)
    }

    pub fn substitute_t(&self, t: &Q) -> Self {
        ExpPolyMode { profile: self.profile.eval_var(T_VAR, t) }
    }
}

pub fn mode_apply(op: ModeOp, m: &ExpPolyMode) -> ExpPolyMode {
    match op {
        ModeOp::Dy => m.dy(),
        ModeOp::Lap => m.lap(),
        ModeOp::BarLap => m.bar_lap(),
    }
}

/// ∫_0^∞ e^{−2ty} p(y) dy for a profile product p with t already numeric.
pub fn half_line_integral(p: &MultiPoly, t: &Q) -> MultiPoly {
    assert!(p.degree_in(T_VAR) == 0, "substitute t before integrating");
    assert!(*t > Q::zero());
    let two_t = qi(2) * t;
    let mut out = MultiPoly::zero(p.dim());
    for (m, c) in p.terms() {
        let k = m.exp(Y_VAR);
        let mut den = two_t.clone();
        for _ in 0..k {
            den *= &two_t;
        }
        let mut exps = m.exps(p.dim());
        exps[Y_VAR] = 0;
        out = out + MultiPoly::monomial(p.dim(), &exps, c * factorial(k) / den);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mode(p: MultiPoly) -> ExpPolyMode {
        ExpPolyMode::new(p).unwrap()
    }

    #[test]
    fn operator_examples() {
        let d = 2;
        let y = MultiPoly::var(d, Y_VAR);
        let t = MultiPoly::var(d, T_VAR);
        assert!(mode(MultiPoly::one(d)).lap().profile.is_zero());
        assert_eq!(mode(y.clone()).dy().profile, MultiPoly::one(d) - &t * &y);
        let two = MultiPoly::constant(d, qi(2));
        assert_eq!(mode(y.pow(2)).lap().profile, two - (&t * &y).scale(&qi(4)));
    }

    #[test]
    fn triharmonic_kernel() {
        let d = 5;
        let y = MultiPoly::var(d, Y_VAR);
        let p = MultiPoly::var(d, 2) + MultiPoly::var(d, 3) * &y + MultiPoly::var(d, 4) * y.pow(2);
        let m = mode(p);
        assert!(m.lap().lap().lap().profile.is_zero());
        assert!(!m.lap().lap().profile.is_zero());
    }

    #[test]
    fn half_line_moments() {
        let d = 2;
        let y = MultiPoly::var(d, Y_VAR);
        // ∫ e^{−2y} y² dy = 2/8
        let v = half_line_integral(&y.pow(2), &qi(1));
        assert_eq!(v.constant_term(), crate::rational::q(1, 4));
    }
}
