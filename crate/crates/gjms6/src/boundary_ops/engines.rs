//! Concrete calculi: exact polynomials on the unit ball, boundary modes on
//! warped products dρ² + w(ρ)²h, and exponential modes on the half-space.

use super::calculus::{BoundaryCalculus, Curvature};
use crate::error::{Gjms6Error, Result};
use crate::exact_poly::{sphere_integral, MultiPoly, Series, T_VAR, Y_VAR};
use crate::model_geometry::ModelGeometry;
use crate::rational::{q, q0, qi, Q};
use num_traits::Zero;

/// Polynomials in n+1 variables on the unit ball; boundary values are
/// polynomials read on the unit sphere.
#[derive(Clone, Debug)]
pub struct BallPoly {
    pub n: i64,
}

impl BallPoly {
    pub fn new(n: i64) -> Result<Self> {
        if n < 2 {
            return Err(Gjms6Error::InvalidDimension(n));
        }
        Ok(BallPoly { n })
    }

    pub fn d(&self) -> usize {
        self.n as usize + 1
    }

    /// Equality of restrictions to the sphere, via ∮(a − b)² = 0.
    pub fn sphere_eq(&self, a: &MultiPoly, b: &MultiPoly) -> bool {
        let diff = a - b;
        sphere_integral(&(&diff * &diff)).is_zero()
    }
}

impl BoundaryCalculus for BallPoly {
    type Field = MultiPoly;
    type Bdry = MultiPoly;

    fn dim(&self) -> i64 {
        self.n
    }
    fn lap(&self, u: &MultiPoly) -> MultiPoly {
        u.laplacian()
    }
    fn restrict(&self, u: &MultiPoly) -> MultiPoly {
        u.clone()
    }
    fn eta(&self, u: &MultiPoly) -> MultiPoly {
        u.euler()
    }
    fn hess_nn(&self, u: &MultiPoly) -> MultiPoly {
        let e = u.euler();
        &e.euler() - &e
    }
    fn eta_p_hess(&self, u: &MultiPoly) -> MultiPoly {
        MultiPoly::zero(u.dim())
    }
    fn bar_lap(&self, f: &MultiPoly) -> MultiPoly {
        let e = f.euler();
        let t = &e.euler() + &e.scale(&qi(self.n - 1));
        &f.laplacian() - &t
    }
    fn bar_grad_dot(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let ab = a * b;
        let t = &(&self.bar_lap(&ab) - &(a * &self.bar_lap(b))) - &(b * &self.bar_lap(a));
        t.scale(&q(1, 2))
    }
    fn bar_hess_dot(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let g = self.bar_grad_dot(a, b);
        let la = self.bar_lap(a);
        let lb = self.bar_lap(b);
        let mut t = self.bar_lap(&g).scale(&q(1, 2));
        t = &t - &(&self.bar_grad_dot(a, &lb) + &self.bar_grad_dot(b, &la)).scale(&q(1, 2));
        &t - &g.scale(&qi(self.n - 1))
    }
    fn pbar_hess_dot(&self, a: &MultiPoly) -> MultiPoly {
        self.bar_lap(a).scale(&q(1, 2))
    }
    fn pbar_grad(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        self.bar_grad_dot(a, b).scale(&q(1, 2))
    }
    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a + b
    }
    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a * b
    }
    fn scale(&self, a: &MultiPoly, s: &Q) -> MultiPoly {
        a.scale(s)
    }
    fn konst(&self, s: &Q) -> MultiPoly {
        MultiPoly::constant(self.d(), s.clone())
    }
    fn curvature(&self) -> Curvature<MultiPoly> {
        let n = qi(self.n);
        let z = self.konst(&q0());
        Curvature {
            h: self.konst(&n),
            jbar: self.konst(&(&n / qi(2))),
            pnn: z.clone(),
            eta_j: z.clone(),
            lap_j: z.clone(),
            hess_j_nn: z.clone(),
            eta_p_nn: z.clone(),
            eta_p_sq: z.clone(),
            eta_lap_j: z,
            pbar_sq: self.konst(&(&n / qi(4))),
        }
    }
}

/// Boundary value c + m·Y with Y a fixed eigenfunction of Δ_h.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeVal {
    pub c: Q,
    pub m: Q,
}

impl ModeVal {
    pub fn konst(c: Q) -> Self {
        ModeVal { c, m: q0() }
    }
}

/// One boundary eigenmode R(ρ)Y on dρ² + w(ρ)²h, h of constant curvature κ,
/// handled through Taylor coefficients of R at ρ = 0.
#[derive(Clone, Debug)]
pub struct Warped {
    pub n: i64,
    pub lambda: Q,
    pub kappa: Q,
    w_ratio: Series<Q>,
    inv_w2: Series<Q>,
    p: Series<Q>,
    qt: Series<Q>,
    cv: Curvature<ModeVal>,
}

impl Warped {
    /// Series length used for the warp and curvature profiles.
    pub const LEN: usize = 14;

    pub fn new(w: &Series<Q>, kappa: Q, n: i64, lambda: Q) -> Result<Self> {
        if w.len() < Self::LEN || w.coeff(0) != qi(1) {
            return Err(Gjms6Error::MissingSeries("warp needs w(0) = 1 and 14 coefficients".into()));
        }
        let nq = qi(n);
        let wi = w.recip();
        let w1 = w.deriv();
        let w2 = w1.deriv();
        let w_ratio = w1.mul(&wi);
        let inv_w2 = wi.mul(&wi);
        let ric_rr = w2.mul(&wi).scale(&-nq.clone());
        let ric_t = w2
            .mul(&wi)
            .neg()
            .sub(&w1.mul(&w1).add_const(&-kappa.clone()).mul(&inv_w2).scale(&qi(n - 1)));
        let scal = ric_rr.add(&ric_t.scale(&nq));
        let half = scal.scale(&(qi(1) / (qi(2) * &nq)));
        let inv = qi(1) / qi(n - 1);
        let p = ric_rr.sub(&half).scale(&inv);
        let qt = ric_t.sub(&half).scale(&inv);
        let j = p.add(&qt.scale(&nq));
        let j1 = j.deriv();
        let lap_j = j1.deriv().add(&w_ratio.mul(&j1).scale(&nq));
        let psq = p.mul(&p).add(&qt.mul(&qt).scale(&nq));
        let k = |x: Q| ModeVal::konst(x);
        let cv = Curvature {
            h: k(-nq.clone() * w1.coeff(0)),
            jbar: k(&nq * &kappa / qi(2)),
            pnn: k(p.coeff(0)),
            eta_j: k(-j1.coeff(0)),
            lap_j: k(lap_j.coeff(0)),
            hess_j_nn: k(j.jet(2)),
            eta_p_nn: k(-p.jet(1)),
            eta_p_sq: k(-psq.jet(1)),
            eta_lap_j: k(-lap_j.jet(1)),
            pbar_sq: k(&nq * &kappa * &kappa / qi(4)),
        };
        Ok(Warped { n, lambda, kappa, w_ratio, inv_w2, p, qt, cv })
    }

    pub fn for_model(geom: &ModelGeometry, lambda: Q) -> Result<Self> {
        let (w, kappa) = geom.warp_profile(Self::LEN);
        Self::new(&w, kappa, geom.n, lambda)
    }

    /// Profile with prescribed derivatives r_k = R^{(k)}(0).
    pub fn field_from_jets(jets: &[Q]) -> Series<Q> {
        let mut v = jets.to_vec();
        v.resize(Self::LEN, q0());
        Series::from_jets(&v)
    }

    /// w'/w as a series in ρ.
    pub fn w_ratio(&self) -> &Series<Q> {
        &self.w_ratio
    }

    /// 1/w² as a series in ρ.
    pub fn inv_w2(&self) -> &Series<Q> {
        &self.inv_w2
    }

    /// Schouten tensor as (P(∂ρ, ∂ρ), tangential eigenvalue), both series in ρ.
    pub fn schouten(&self) -> (&Series<Q>, &Series<Q>) {
        (&self.p, &self.qt)
    }

    fn need(&self, u: &Series<Q>, k: usize) {
        assert!(u.len() > k, "mode profile truncated below the required order");
    }
}

impl BoundaryCalculus for Warped {
    type Field = Series<Q>;
    type Bdry = ModeVal;

    fn dim(&self) -> i64 {
        self.n
    }
    fn lap(&self, u: &Series<Q>) -> Series<Q> {
        let u1 = u.deriv();
        u1.deriv()
            .add(&self.w_ratio.mul(&u1).scale(&qi(self.n)))
            .sub(&self.inv_w2.mul(u).scale(&self.lambda))
    }
    fn restrict(&self, u: &Series<Q>) -> ModeVal {
        self.need(u, 0);
        ModeVal { c: q0(), m: u.coeff(0) }
    }
    fn eta(&self, u: &Series<Q>) -> ModeVal {
        self.need(u, 1);
        ModeVal { c: q0(), m: -u.jet(1) }
    }
    fn hess_nn(&self, u: &Series<Q>) -> ModeVal {
        self.need(u, 2);
        ModeVal { c: q0(), m: u.jet(2) }
    }
    fn eta_p_hess(&self, u: &Series<Q>) -> ModeVal {
        self.need(u, 3);
        let u2 = u.deriv().deriv();
        let tang = self.lap(u).sub(&u2);
        let f = self.p.mul(&u2).add(&self.qt.mul(&tang));
        ModeVal { c: q0(), m: -f.jet(1) }
    }
    fn bar_lap(&self, f: &ModeVal) -> ModeVal {
        ModeVal { c: q0(), m: -&self.lambda * &f.m }
    }
    fn bar_grad_dot(&self, a: &ModeVal, b: &ModeVal) -> ModeVal {
        debug_assert!(a.m.is_zero() || b.m.is_zero());
        ModeVal::konst(q0())
    }
    fn bar_hess_dot(&self, a: &ModeVal, b: &ModeVal) -> ModeVal {
        debug_assert!(a.m.is_zero() || b.m.is_zero());
        ModeVal::konst(q0())
    }
    fn pbar_hess_dot(&self, a: &ModeVal) -> ModeVal {
        self.scale(&self.bar_lap(a), &(&self.kappa / qi(2)))
    }
    fn pbar_grad(&self, a: &ModeVal, b: &ModeVal) -> ModeVal {
        debug_assert!(a.m.is_zero() || b.m.is_zero());
        ModeVal::konst(q0())
    }
    fn add(&self, a: &ModeVal, b: &ModeVal) -> ModeVal {
        ModeVal { c: &a.c + &b.c, m: &a.m + &b.m }
    }
    fn mul(&self, a: &ModeVal, b: &ModeVal) -> ModeVal {
        debug_assert!(a.m.is_zero() || b.m.is_zero());
        ModeVal { c: &a.c * &b.c, m: &a.c * &b.m + &a.m * &b.c }
    }
    fn scale(&self, a: &ModeVal, s: &Q) -> ModeVal {
        ModeVal { c: &a.c * s, m: &a.m * s }
    }
    fn konst(&self, s: &Q) -> ModeVal {
        ModeVal::konst(s.clone())
    }
    fn curvature(&self) -> Curvature<ModeVal> {
        self.cv.clone()
    }
}

/// Exponential modes e^{ix·ξ − ty}p(t, y, …) on the upper half-space with
/// |ξ| = t; boundary values are profiles at y = 0.
#[derive(Clone, Debug)]
pub struct ExpMode {
    pub n: i64,
    pub vars: usize,
}

impl ExpMode {
    pub fn new(n: i64, vars: usize) -> Result<Self> {
        if vars < 2 {
            return Err(Gjms6Error::DimensionMismatch { expected: 2, got: vars });
        }
        Ok(ExpMode { n, vars })
    }

    fn t(&self) -> MultiPoly {
        MultiPoly::var(self.vars, T_VAR)
    }
}

impl BoundaryCalculus for ExpMode {
    type Field = MultiPoly;
    type Bdry = MultiPoly;

    fn dim(&self) -> i64 {
        self.n
    }
    fn lap(&self, p: &MultiPoly) -> MultiPoly {
        let py = p.deriv(Y_VAR);
        &py.deriv(Y_VAR) - &(&self.t().scale(&qi(2)) * &py)
    }
    fn restrict(&self, p: &MultiPoly) -> MultiPoly {
        p.restrict_zero(Y_VAR)
    }
    fn eta(&self, p: &MultiPoly) -> MultiPoly {
        (&(&self.t() * p) - &p.deriv(Y_VAR)).restrict_zero(Y_VAR)
    }
    fn hess_nn(&self, p: &MultiPoly) -> MultiPoly {
        let t = self.t();
        let py = p.deriv(Y_VAR);
        let v = &(&py.deriv(Y_VAR) - &(&t.scale(&qi(2)) * &py)) + &(&t.pow(2) * p);
        v.restrict_zero(Y_VAR)
    }
    fn eta_p_hess(&self, _p: &MultiPoly) -> MultiPoly {
        MultiPoly::zero(self.vars)
    }
    fn bar_lap(&self, f: &MultiPoly) -> MultiPoly {
        -(&self.t().pow(2) * f)
    }
    fn bar_grad_dot(&self, _a: &MultiPoly, _b: &MultiPoly) -> MultiPoly {
        MultiPoly::zero(self.vars)
    }
    fn bar_hess_dot(&self, _a: &MultiPoly, _b: &MultiPoly) -> MultiPoly {
        MultiPoly::zero(self.vars)
    }
    fn pbar_hess_dot(&self, _a: &MultiPoly) -> MultiPoly {
        MultiPoly::zero(self.vars)
    }
    fn pbar_grad(&self, _a: &MultiPoly, _b: &MultiPoly) -> MultiPoly {
        MultiPoly::zero(self.vars)
    }
    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a + b
    }
    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a * b
    }
    fn scale(&self, a: &MultiPoly, s: &Q) -> MultiPoly {
        a.scale(s)
    }
    fn konst(&self, s: &Q) -> MultiPoly {
        MultiPoly::constant(self.vars, s.clone())
    }
    fn curvature(&self) -> Curvature<MultiPoly> {
        let z = MultiPoly::zero(self.vars);
        Curvature {
            h: z.clone(),
            jbar: z.clone(),
            pnn: z.clone(),
            eta_j: z.clone(),
            lap_j: z.clone(),
            hess_j_nn: z.clone(),
            eta_p_nn: z.clone(),
            eta_p_sq: z.clone(),
            eta_lap_j: z.clone(),
            pbar_sq: z,
        }
    }
}
