//! Exact polynomials on the flat upper half-space {y > 0}, y the last variable.

use super::calculus::{BoundaryCalculus, Curvature};
use crate::error::{Gjms6Error, Result};
use crate::exact_poly::MultiPoly;
use crate::rational::Q;

#[derive(Clone, Debug)]
pub struct HalfPoly {
    pub n: i64,
}

impl HalfPoly {
    pub fn new(n: i64) -> Result<Self> {
        if n < 1 {
            return Err(Gjms6Error::InvalidDimension(n));
        }
        Ok(HalfPoly { n })
    }

    fn y(&self) -> usize {
        self.n as usize
    }

    fn d(&self) -> usize {
        self.n as usize + 1
    }
}

impl BoundaryCalculus for HalfPoly {
    type Field = MultiPoly;
    type Bdry = MultiPoly;

    fn dim(&self) -> i64 {
        self.n
    }
    fn lap(&self, u: &MultiPoly) -> MultiPoly {
        u.laplacian()
    }
    fn restrict(&self, u: &MultiPoly) -> MultiPoly {
        u.restrict_zero(self.y())
    }
    fn eta(&self, u: &MultiPoly) -> MultiPoly {
        -u.deriv(self.y()).restrict_zero(self.y())
    }
    fn hess_nn(&self, u: &MultiPoly) -> MultiPoly {
        u.deriv(self.y()).deriv(self.y()).restrict_zero(self.y())
    }
    fn eta_p_hess(&self, _u: &MultiPoly) -> MultiPoly {
        MultiPoly::zero(self.d())
    }
    fn bar_lap(&self, f: &MultiPoly) -> MultiPoly {
        let mut s = MultiPoly::zero(self.d());
        for i in 0..self.y() {
            s = &s + &f.deriv(i).deriv(i);
        }
        s
    }
    fn bar_grad_dot(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let mut s = MultiPoly::zero(self.d());
        for i in 0..self.y() {
            s = &s + &(&a.deriv(i) * &b.deriv(i));
        }
        s
    }
    fn bar_hess_dot(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        let mut s = MultiPoly::zero(self.d());
        for i in 0..self.y() {
            for j in 0..self.y() {
                s = &s + &(&a.deriv(i).deriv(j) * &b.deriv(i).deriv(j));
            }
        }
        s
    }
    fn pbar_hess_dot(&self, _a: &MultiPoly) -> MultiPoly {
        MultiPoly::zero(self.d())
    }
    fn pbar_grad(&self, _a: &MultiPoly, _b: &MultiPoly) -> MultiPoly {
        MultiPoly::zero(self.d())
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
        let z = MultiPoly::zero(self.d());
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
