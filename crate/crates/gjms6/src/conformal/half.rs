//! The half-space {y > 0} with metric e^{2σ}(dx² + dy²), σ depending on the
//! active variables x_0 … x_{k−1}, y only. The remaining n − k boundary
//! directions are carried through traces without materializing variables.

use super::ring::ConfRing;
use crate::boundary_ops::{BoundaryCalculus, Curvature};
use crate::rational::{q, qi, Q};

#[derive(Clone, Debug)]
pub struct ConfHalf<R: ConfRing> {
    pub n: i64,
    /// Number of active boundary variables.
    pub active: usize,
    /// False gives the flat calculus acting on the same ring.
    pub conformal: bool,
    proto: R,
    proto_bar: R,
    p: Vec<Vec<R>>,
    p_in: R,
    pbar: Vec<Vec<R>>,
    pbar_in: R,
}

impl<R: ConfRing> ConfHalf<R> {
    /// `proto` is any element carrying σ; its dimension is active + 1.
    pub fn new(n: i64, proto: &R, conformal: bool) -> Self {
        let d = proto.sigma().dim();
        let active = d - 1;
        assert!(active as i64 <= n, "more active variables than boundary dimensions");
        let proto = proto.zero_like();
        let proto_bar = proto.restrict_zero(active);
        let (p, p_in) = schouten(&proto, d, conformal);
        let (pbar, pbar_in) = schouten(&proto_bar, active, conformal);
        ConfHalf { n, active, conformal, proto, proto_bar, p, p_in, pbar, pbar_in }
    }

    pub fn y(&self) -> usize {
        self.active
    }

    fn inactive(&self) -> Q {
        qi(self.n - self.active as i64)
    }

    fn e(&self, f: &R, k: i32) -> R {
        if self.conformal {
            f.shift(k)
        } else {
            f.clone()
        }
    }

    fn s(&self, f: &R, i: usize) -> R {
        if self.conformal {
            f.sig(i)
        } else {
            f.zero_like()
        }
    }

    /// Σ_i σ_i ∂_i f over `count` variables.
    fn sig_dot(&self, f: &R, count: usize) -> R {
        let mut acc = f.zero_like();
        if self.conformal {
            for i in 0..count {
                acc = acc.add(&f.sig(i).mul(&f.deriv(i)));
            }
        }
        acc
    }

    /// Coordinate Hessian of the rescaled metric and its inactive diagonal entry.
    fn hess(&self, f: &R, count: usize) -> (Vec<Vec<R>>, R) {
        let sd = self.sig_dot(f, count);
        let grads: Vec<R> = (0..count).map(|i| f.deriv(i)).collect();
        let sig: Vec<R> = (0..count).map(|i| self.s(f, i)).collect();
        let mut h = vec![vec![f.zero_like(); count]; count];
        for i in 0..count {
            for j in i..count {
                let mut v = grads[i].deriv(j);
                if self.conformal {
                    v = v.sub(&sig[i].mul(&grads[j])).sub(&sig[j].mul(&grads[i]));
                    if i == j {
                        v = v.add(&sd);
                    }
                }
                h[i][j] = v.clone();
                h[j][i] = v;
            }
        }
        (h, sd)
    }

    /// ĝ-contraction Σ A_ij B_ij + m·A_in B_in of two symmetric coordinate
    /// tensors, before the e^{−4σ} factor.
    fn contract(&self, a: &[Vec<R>], a_in: &R, b: &[Vec<R>], b_in: &R) -> R {
        let mut acc = a_in.mul(b_in).scale(&self.inactive());
        for (ra, rb) in a.iter().zip(b) {
            for (x, y) in ra.iter().zip(rb) {
                acc = acc.add(&x.mul(y));
            }
        }
        acc
    }

    /// Ĵ and |P̂|² as interior fields.
    fn j_field(&self) -> R {
        let mut tr = self.p_in.scale(&self.inactive());
        for i in 0..self.p.len() {
            tr = tr.add(&self.p[i][i]);
        }
        self.e(&tr, -4)
    }

    fn p_sq_field(&self) -> R {
        self.e(&self.contract(&self.p, &self.p_in, &self.p, &self.p_in), -8)
    }
}

/// Coordinate components of −∇²σ + dσ⊗dσ − ½|dσ|²δ in `d` variables plus
/// the inactive diagonal entry −½|dσ|².
fn schouten<R: ConfRing>(proto: &R, d: usize, conformal: bool) -> (Vec<Vec<R>>, R) {
    let z = proto.zero_like();
    let mut p = vec![vec![z.clone(); d]; d];
    if !conformal {
        return (p, z);
    }
    let s: Vec<R> = (0..d).map(|i| proto.sig(i)).collect();
    let mut g2 = z.clone();
    for si in &s {
        g2 = g2.add(&si.mul(si));
    }
    let half = g2.scale(&q(-1, 2));
    for i in 0..d {
        for j in i..d {
            let mut v = proto.sig2(i, j).scale(&qi(-1)).add(&s[i].mul(&s[j]));
            if i == j {
                v = v.add(&half);
            }
            p[i][j] = v.clone();
            p[j][i] = v;
        }
    }
    (p, half)
}

impl<R: ConfRing> BoundaryCalculus for ConfHalf<R> {
    type Field = R;
    type Bdry = R;

    fn dim(&self) -> i64 {
        self.n
    }
    fn lap(&self, f: &R) -> R {
        let mut acc = f.zero_like();
        for i in 0..=self.active {
            acc = acc.add(&f.deriv(i).deriv(i));
        }
        acc = acc.add(&self.sig_dot(f, self.active + 1).scale(&qi(self.n - 1)));
        self.e(&acc, -4)
    }
    fn restrict(&self, f: &R) -> R {
        f.restrict_zero(self.y())
    }
    fn eta(&self, f: &R) -> R {
        self.restrict(&self.e(&f.deriv(self.y()), -2).scale(&qi(-1)))
    }
    fn hess_nn(&self, f: &R) -> R {
        let y = self.y();
        let fy = f.deriv(y);
        let mut v = fy.deriv(y);
        if self.conformal {
            v = v.sub(&f.sig(y).mul(&fy).scale(&qi(2))).add(&self.sig_dot(f, self.active + 1));
        }
        self.restrict(&self.e(&v, -4))
    }
    fn eta_p_hess(&self, f: &R) -> R {
        if !self.conformal {
            return self.restrict(&f.zero_like());
        }
        let (h, h_in) = self.hess(f, self.active + 1);
        let field = self.e(&self.contract(&self.p, &self.p_in, &h, &h_in), -8);
        self.eta(&field)
    }
    fn bar_lap(&self, f: &R) -> R {
        let mut acc = f.zero_like();
        for i in 0..self.active {
            acc = acc.add(&f.deriv(i).deriv(i));
        }
        acc = acc.add(&self.sig_dot(f, self.active).scale(&qi(self.n - 2)));
        self.e(&acc, -4)
    }
    fn bar_grad_dot(&self, a: &R, b: &R) -> R {
        let mut acc = a.zero_like();
        for i in 0..self.active {
            acc = acc.add(&a.deriv(i).mul(&b.deriv(i)));
        }
        self.e(&acc, -4)
    }
    fn bar_hess_dot(&self, a: &R, b: &R) -> R {
        let (ha, ha_in) = self.hess(a, self.active);
        let (hb, hb_in) = self.hess(b, self.active);
        self.e(&self.contract(&ha, &ha_in, &hb, &hb_in), -8)
    }
    fn pbar_hess_dot(&self, a: &R) -> R {
        let (ha, ha_in) = self.hess(a, self.active);
        self.e(&self.contract(&self.pbar, &self.pbar_in, &ha, &ha_in), -8)
    }
    fn pbar_grad(&self, a: &R, b: &R) -> R {
        let mut acc = a.zero_like();
        for i in 0..self.active {
            for j in 0..self.active {
                acc = acc.add(&self.pbar[i][j].mul(&a.deriv(i)).mul(&b.deriv(j)));
            }
        }
        self.e(&acc, -8)
    }
    fn add(&self, a: &R, b: &R) -> R {
        a.add(b)
    }
    fn mul(&self, a: &R, b: &R) -> R {
        a.mul(b)
    }
    fn scale(&self, a: &R, s: &Q) -> R {
        a.scale(s)
    }
    fn konst(&self, s: &Q) -> R {
        let d = self.proto_bar.sigma().dim();
        self.proto_bar.poly_like(crate::exact_poly::MultiPoly::constant(d, s.clone()))
    }
    fn curvature(&self) -> Curvature<R> {
        let y = self.y();
        let j = self.j_field();
        let lap_j = self.lap(&j);
        let h = if self.conformal {
            self.restrict(&self.e(&self.proto.sig(y), -2).scale(&qi(-self.n)))
        } else {
            self.konst(&qi(0))
        };
        let pnn = self.restrict(&self.e(&self.p[y][y], -4));
        let eta_p_nn = if self.conformal {
            let pyy = &self.p[y][y];
            let mut v = pyy.deriv(y).sub(&self.proto.sig(y).mul(pyy).scale(&qi(2)));
            for a in 0..self.active {
                v = v.add(&self.proto.sig(a).mul(&self.p[a][y]).scale(&qi(2)));
            }
            self.restrict(&self.e(&v, -6).scale(&qi(-1)))
        } else {
            self.konst(&qi(0))
        };
        let mut trb = self.pbar_in.scale(&self.inactive());
        for i in 0..self.active {
            trb = trb.add(&self.pbar[i][i]);
        }
        let jbar = self.e(&trb, -4);
        let pbar_sq = self.e(&self.contract(&self.pbar, &self.pbar_in, &self.pbar, &self.pbar_in), -8);
        Curvature {
            h,
            jbar,
            pnn,
            eta_j: self.eta(&j),
            lap_j: self.restrict(&lap_j),
            hess_j_nn: self.hess_nn(&j),
            eta_p_nn,
            eta_p_sq: self.eta(&self.p_sq_field()),
            eta_lap_j: self.eta(&lap_j),
            pbar_sq,
        }
    }
}
