//! The abstract calculus that the boundary operator formulas are written in.
//!
//! A calculus supplies interior operators on fields, tangential operators on
//! boundary values and the curvature scalars that appear as coefficients.
//! The formulas themselves live in `generic` and are instantiated by every
//! engine (exact polynomials on the ball, warped-product modes, half-space
//! exponential modes, conformally rescaled half-spaces).

use crate::rational::{qi, Q};

/// Boundary values of the curvature scalars entering the operators.
#[derive(Clone, Debug)]
pub struct Curvature<B> {
    pub h: B,
    pub jbar: B,
    /// P(η, η)
    pub pnn: B,
    /// ηJ
    pub eta_j: B,
    /// (ΔJ)|_M
    pub lap_j: B,
    /// ∇²J(η, η)
    pub hess_j_nn: B,
    /// (∇_η P)(η, η)
    pub eta_p_nn: B,
    /// η|P|²
    pub eta_p_sq: B,
    /// ηΔJ
    pub eta_lap_j: B,
    /// |P̄|²
    pub pbar_sq: B,
}

pub trait BoundaryCalculus {
    type Field: Clone;
    type Bdry: Clone;

    /// Boundary dimension n.
    fn dim(&self) -> i64;

    fn lap(&self, u: &Self::Field) -> Self::Field;
    fn restrict(&self, u: &Self::Field) -> Self::Bdry;
    fn eta(&self, u: &Self::Field) -> Self::Bdry;
    /// ∇²u(η, η) on the boundary.
    fn hess_nn(&self, u: &Self::Field) -> Self::Bdry;
    /// η⟨P, ∇²u⟩.
    fn eta_p_hess(&self, u: &Self::Field) -> Self::Bdry;

    fn bar_lap(&self, f: &Self::Bdry) -> Self::Bdry;
    fn bar_grad_dot(&self, a: &Self::Bdry, b: &Self::Bdry) -> Self::Bdry;
    /// ⟨∇̄²a, ∇̄²b⟩
    fn bar_hess_dot(&self, a: &Self::Bdry, b: &Self::Bdry) -> Self::Bdry;
    /// ⟨P̄, ∇̄²a⟩
    fn pbar_hess_dot(&self, a: &Self::Bdry) -> Self::Bdry;
    /// P̄(∇̄a, ∇̄b)
    fn pbar_grad(&self, a: &Self::Bdry, b: &Self::Bdry) -> Self::Bdry;

    fn add(&self, a: &Self::Bdry, b: &Self::Bdry) -> Self::Bdry;
    fn mul(&self, a: &Self::Bdry, b: &Self::Bdry) -> Self::Bdry;
    fn scale(&self, a: &Self::Bdry, s: &Q) -> Self::Bdry;
    fn konst(&self, s: &Q) -> Self::Bdry;

    fn curvature(&self) -> Curvature<Self::Bdry>;

    fn sub(&self, a: &Self::Bdry, b: &Self::Bdry) -> Self::Bdry {
        self.add(a, &self.scale(b, &qi(-1)))
    }

    /// δ̄(P̄(∇̄a)) = ⟨P̄, ∇̄²a⟩ + ⟨∇̄J̄, ∇̄a⟩ by the contracted Bianchi identity.
    fn div_pbar_grad(&self, a: &Self::Bdry, jbar: &Self::Bdry) -> Self::Bdry {
        self.add(&self.pbar_hess_dot(a), &self.bar_grad_dot(jbar, a))
    }
}

/// Linear combination builder: Σ coef·term.
pub struct Acc<'a, C: BoundaryCalculus + ?Sized> {
    c: &'a C,
    v: C::Bdry,
}

impl<'a, C: BoundaryCalculus + ?Sized> Acc<'a, C> {
    pub fn new(c: &'a C) -> Self {
        Acc { c, v: c.konst(&qi(0)) }
    }

    pub fn add(&mut self, coef: &Q, term: &C::Bdry) -> &mut Self {
        self.v = self.c.add(&self.v, &self.c.scale(term, coef));
        self
    }

    /// coef·a·b
    pub fn add2(&mut self, coef: &Q, a: &C::Bdry, b: &C::Bdry) -> &mut Self {
        let t = self.c.mul(a, b);
        self.add(coef, &t)
    }

    pub fn add3(&mut self, coef: &Q, a: &C::Bdry, b: &C::Bdry, d: &C::Bdry) -> &mut Self {
        let t = self.c.mul(&self.c.mul(a, b), d);
        self.add(coef, &t)
    }

    pub fn value(self) -> C::Bdry {
        self.v
    }
}

/// Rational functions of n written as ascending coefficient lists.
#[derive(Clone, Debug)]
pub struct NPoly {
    pub n: Q,
}

impl NPoly {
    pub fn new(n: i64) -> Self {
        NPoly { n: qi(n) }
    }

    pub fn p(&self, c: &[i64]) -> Q {
        let mut s = qi(0);
        let mut pw = qi(1);
        for &ck in c {
            s += qi(ck) * &pw;
            pw *= &self.n;
        }
        s
    }

    /// num(n)/den(n)
    pub fn r(&self, num: &[i64], den: &[i64]) -> Q {
        self.p(num) / self.p(den)
    }
}
