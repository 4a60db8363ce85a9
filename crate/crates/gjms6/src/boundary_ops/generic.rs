//! B_0 … B_5 for conformally flat metrics with umbilic boundary, written once
//! over an abstract calculus. Weyl and Fialkow contributions vanish there and
//! are omitted.

use super::calculus::{Acc, BoundaryCalculus, Curvature, NPoly};
use crate::error::{Gjms6Error, Result};
use crate::rational::{q, qi};

/// Boundary scalars built from the curvature that several formulas share.
pub struct Scalars<B> {
    pub cv: Curvature<B>,
    pub h2: B,
    pub h3: B,
    pub h4: B,
    pub h5: B,
    pub lap_h: B,
    pub lap_jbar: B,
    pub lap_pnn: B,
}

impl<B: Clone> Scalars<B> {
    pub fn new<C: BoundaryCalculus<Bdry = B> + ?Sized>(c: &C) -> Self {
        let cv = c.curvature();
        let h2 = c.mul(&cv.h, &cv.h);
        let h3 = c.mul(&h2, &cv.h);
        let h4 = c.mul(&h3, &cv.h);
        let h5 = c.mul(&h4, &cv.h);
        let lap_h = c.bar_lap(&cv.h);
        let lap_jbar = c.bar_lap(&cv.jbar);
        let lap_pnn = c.bar_lap(&cv.pnn);
        Scalars { cv, h2, h3, h4, h5, lap_h, lap_jbar, lap_pnn }
    }
}

fn check_j(j: usize) -> Result<()> {
    if j > 5 {
        return Err(Gjms6Error::OperatorIndex(j));
    }
    Ok(())
}

/// The zeroth-order scalar T_j (T_0 = 0).
pub fn t_scalar<C: BoundaryCalculus + ?Sized>(c: &C, j: usize) -> Result<C::Bdry> {
    check_j(j)?;
    let s = Scalars::new(c);
    Ok(t_scalar_with(c, j, &s))
}

pub fn t_scalar_with<C: BoundaryCalculus + ?Sized>(c: &C, j: usize, s: &Scalars<C::Bdry>) -> C::Bdry {
    let k = NPoly::new(c.dim());
    let n = k.n.clone();
    let cv = &s.cv;
    let (h, jb, pnn) = (&cv.h, &cv.jbar, &cv.pnn);
    let mut a = Acc::new(c);
    match j {
        0 => {}
        1 => {
            a.add(&(qi(1) / &n), h);
        }
        2 => {
            a.add(&q(1, 3), jb).add(&qi(-1), pnn).add(&k.r(&[-4, 1], &[0, 0, 2]), &s.h2);
        }
        3 => {
            a.add(&qi(-1), &cv.eta_j)
                .add(&-(qi(4) / &n), &s.lap_h)
                .add2(&-k.r(&[-9, 1], &[0, 2]), h, pnn)
                .add2(&k.r(&[-11, 3], &[0, 2]), h, jb)
                .add(&k.r(&[12, -5, 1], &[0, 0, 0, 4]), &s.h3);
        }
        4 => {
            let gh2 = c.bar_grad_dot(h, h);
            a.add(&qi(1), &cv.lap_j)
                .add(&qi(-4), &s.lap_jbar)
                .add(&qi(4), &s.lap_pnn)
                .add2(&-k.r(&[-16, 4], &[0, 0, 1]), h, &s.lap_h)
                .add2(&-(qi(4) / &n), h, &cv.eta_j)
                .add2(&-k.p(&[-3, 3]), jb, pnn)
                .add2(&k.r(&[18, -3, 1], &[0, 0, 2]), &s.h2, pnn)
                .add2(&k.r(&[2, -13, 3], &[0, 0, 2]), &s.h2, jb)
                .add(&-k.r(&[-24, 4], &[0, 0, 1]), &gh2)
                .add(&qi(-4), &cv.pbar_sq)
                .add2(&k.r(&[-3, 3], &[2]), jb, jb)
                .add2(&-k.r(&[-9, 1], &[2]), pnn, pnn)
                .add(&-k.r(&[-24, 4, -5, 1], &[0, 0, 0, 0, 8]), &s.h4);
        }
        _ => {
            let gh2 = c.bar_grad_dot(h, h);
            let lap_ej = c.bar_lap(&cv.eta_j);
            let lap2_h = c.bar_lap(&s.lap_h);
            let gh_gpnn = c.bar_grad_dot(h, pnn);
            let gh_gjb = c.bar_grad_dot(h, jb);
            let pbar_hess_h = c.pbar_hess_dot(h);
            a.add(&qi(-1), &cv.eta_lap_j)
                .add(&q(-4, 3), &lap_ej)
                .add(&k.r(&[8], &[0, 3]), &lap2_h)
                .add2(&(qi(4) / &n), h, &cv.hess_j_nn)
                .add2(&-k.r(&[3, 1], &[0, 2]), h, &cv.lap_j)
                .add2(&-k.r(&[-14, 6], &[0, 3]), h, &s.lap_jbar)
                .add2(&-k.r(&[-18, 2], &[0, 3]), h, &s.lap_pnn)
                .add(&-k.r(&[-48, 4], &[0, 3]), &gh_gpnn)
                .add(&-k.r(&[-64, 12], &[0, 3]), &gh_gjb)
                .add2(&k.r(&[-1, 5], &[3]), jb, &cv.eta_j)
                .add2(&k.p(&[-5, 1]), pnn, &cv.eta_j)
                .add2(&-k.r(&[8], &[0, 0, 1]), &s.h2, &cv.eta_p_nn)
                .add(&qi(-4), &cv.eta_p_sq)
                .add2(&-k.r(&[-6, -7, 1], &[0, 0, 2]), &s.h2, &cv.eta_j)
                .add2(&-k.r(&[-18, 2], &[0, 3]), pnn, &s.lap_h)
                .add2(&k.r(&[12, -5, 1], &[0, 0, 0, 1]), &s.h2, &s.lap_h)
                .add(&(qi(16) / &n), &pbar_hess_h)
                .add2(&-k.r(&[-10, 10], &[0, 3]), jb, &s.lap_h)
                .add3(&k.r(&[-37, -10, 15], &[0, 12]), h, jb, jb)
                .add3(&k.r(&[45, -14, 1], &[0, 4]), h, pnn, pnn)
                .add2(&-k.r(&[-6, 6], &[0, 1]), h, &cv.pbar_sq)
                .add3(&k.r(&[-15, -22, 5], &[0, 6]), h, jb, pnn)
                .add2(&-k.r(&[-30, 33, -4, 1], &[0, 0, 0, 4]), &s.h3, pnn)
                .add2(&k.r(&[28, -18, 2], &[0, 0, 0, 1]), h, &gh2)
                .add2(&-k.r(&[-42, -19, -8, 5], &[0, 0, 0, 12]), &s.h3, jb)
                .add(&k.r(&[24, -52, -3, -2, 1], &[0, 0, 0, 0, 0, 16]), &s.h5);
        }
    }
    a.value()
}

/// B_j(u) without its zeroth-order block ((n−5)/2)T_j·u.
pub fn b_main<C: BoundaryCalculus + ?Sized>(c: &C, j: usize, u: &C::Field) -> Result<C::Bdry> {
    check_j(j)?;
    let s = Scalars::new(c);
    Ok(b_main_with(c, j, u, &s))
}

pub fn b_main_with<C: BoundaryCalculus + ?Sized>(c: &C, j: usize, u: &C::Field, s: &Scalars<C::Bdry>) -> C::Bdry {
    let k = NPoly::new(c.dim());
    let n = k.n.clone();
    let cv = &s.cv;
    let (h, jb, pnn) = (&cv.h, &cv.jbar, &cv.pnn);
    let r = c.restrict(u);
    if j == 0 {
        return r;
    }
    let e = c.eta(u);
    if j == 1 {
        return e;
    }
    let lu = c.lap(u);
    let rl = c.restrict(&lu);
    let lap_r = c.bar_lap(&r);
    let mut a = Acc::new(c);
    match j {
        2 => {
            a.add(&qi(1), &rl).add(&q(-4, 3), &lap_r).add2(&-(qi(4) / &n), h, &e);
        }
        3 => {
            let el = c.eta(&lu);
            let hnn = c.hess_nn(u);
            let s2 = s2_with(c, s);
            a.add(&qi(1), &el)
                .add(&qi(-4), &c.bar_lap(&e))
                .add2(&k.r(&[-9, 1], &[0, 2]), h, &hnn)
                .add2(&-k.r(&[-19, 3], &[0, 2]), h, &lap_r)
                .add(&-k.r(&[-16, 4], &[0, 1]), &c.bar_grad_dot(h, &r))
                .add2(&qi(1), &s2, &e);
        }
        4 => {
            let el = c.eta(&lu);
            let hnn = c.hess_nn(u);
            let rl2 = c.restrict(&c.lap(&lu));
            let c1 = c1_with(c, s);
            let c2 = c2_with(c, s);
            let x = x_with(c, s);
            let s3 = s3_with(c, s);
            a.add(&qi(-1), &rl2)
                .add(&qi(-4), &c.bar_lap(&rl))
                .add(&qi(8), &c.bar_lap(&lap_r))
                .add2(&(qi(4) / &n), h, &el)
                .add2(&(qi(16) / &n), h, &c.bar_lap(&e))
                .add2(&qi(1), &c1, &hnn)
                .add2(&qi(-1), &c2, &lap_r)
                .add(&qi(8), &c.div_pbar_grad(&r, jb))
                .add(&(qi(48) / &n), &c.bar_grad_dot(h, &e))
                .add(&qi(-1), &c.bar_grad_dot(&x, &r))
                .add2(&qi(1), &s3, &e);
        }
        _ => {
            let el = c.eta(&lu);
            let hnn = c.hess_nn(u);
            let l2u = c.lap(&lu);
            let rl2 = c.restrict(&l2u);
            let el2 = c.eta(&l2u);
            let hnn_l = c.hess_nn(&lu);
            let lap_e = c.bar_lap(&e);
            let lap2_r = c.bar_lap(&lap_r);
            let d1 = d1_with(c, s);
            let d2 = d2_with(c, s);
            let r13 = r13_with(c, s);
            let r23 = r23_with(c, s);
            let y = y_with(c, s);
            let s4 = s4_with(c, s);
            // ⟨σ4, ∇̄r⟩
            let sigma4 = {
                let mut b = Acc::new(c);
                b.add(&k.r(&[-96, 16], &[0, 3]), &c.bar_grad_dot(&s.lap_h, &r))
                    .add(&k.r(&[-64, -96, 16], &[0, 3]), &c.pbar_grad(h, &r))
                    .add(&-k.r(&[-47, 7], &[3]), &c.bar_grad_dot(&cv.eta_j, &r))
                    .add2(&-k.r(&[119, -70, 15], &[0, 6]), h, &c.bar_grad_dot(jb, &r))
                    .add2(&-k.r(&[184, -90, 10], &[0, 3]), jb, &c.bar_grad_dot(h, &r))
                    .add2(&-k.r(&[168, -34, 2], &[0, 3]), pnn, &c.bar_grad_dot(h, &r))
                    .add2(&-k.r(&[303, -86, 7], &[0, 6]), h, &c.bar_grad_dot(pnn, &r))
                    .add(&k.r(&[-144, 117, -32, 3], &[0, 0, 0, 6]), &c.bar_grad_dot(&s.h3, &r));
                b.value()
            };
            a.add(&qi(1), &el2)
                .add(&q(4, 3), &c.bar_lap(&el))
                .add(&q(8, 3), &c.bar_lap(&lap_e))
                .add2(&k.r(&[3, 1], &[0, 2]), h, &rl2)
                .add2(&k.r(&[-18, 2], &[0, 3]), h, &c.bar_lap(&hnn))
                .add2(&-(qi(4) / &n), h, &hnn_l)
                .add2(&k.r(&[-22, 6], &[0, 3]), h, &lap2_r)
                .add2(&qi(-1), &d1, &el)
                .add2(&qi(-1), &d2, &lap_e)
                .add(&qi(8), &c.eta_p_hess(u))
                .add(&qi(16), &c.div_pbar_grad(&e, jb))
                .add(&k.r(&[-48, 4], &[0, 3]), &c.bar_grad_dot(h, &hnn))
                .add(&k.r(&[-112, 20], &[0, 3]), &c.bar_grad_dot(h, &lap_r))
                .add2(&qi(1), &r13, &hnn)
                .add2(&k.r(&[-28, 12], &[0, 1]), h, &c.div_pbar_grad(&r, jb))
                .add(&k.r(&[-112, 16], &[0, 3]), &c.bar_hess_dot(h, &r))
                .add2(&qi(1), &r23, &lap_r)
                .add(&qi(-1), &c.bar_grad_dot(&y, &e))
                .add(&qi(1), &sigma4)
                .add2(&qi(1), &s4, &e);
        }
    }
    a.value()
}

/// S_2
pub fn s2_with<C: BoundaryCalculus + ?Sized>(c: &C, s: &Scalars<C::Bdry>) -> C::Bdry {
    let k = NPoly::new(c.dim());
    let cv = &s.cv;
    let (jb, pnn) = (&cv.jbar, &cv.pnn);
    let mut b = Acc::new(c);
    b.add(&k.r(&[-7, 3], &[2]), jb)
        .add(&-k.r(&[-13, 1], &[2]), pnn)
        .add(&k.r(&[36, -19, 3], &[0, 0, 4]), &s.h2);
    b.value()
}

/// coefficient of ∇²u(η,η) in B_4
pub fn c1_with<C: BoundaryCalculus + ?Sized>(c: &C, s: &Scalars<C::Bdry>) -> C::Bdry {
    let k = NPoly::new(c.dim());
    let cv = &s.cv;
    let (jb, pnn) = (&cv.jbar, &cv.pnn);
    let mut b = Acc::new(c);
    b.add(&k.p(&[-5, 3]), jb).add(&k.p(&[-11, 1]), pnn).add(&-k.r(&[18, -5, 1], &[0, 0, 2]), &s.h2);
    b.value()
}

/// coefficient of −Δ̄u in B_4
pub fn c2_with<C: BoundaryCalculus + ?Sized>(c: &C, s: &Scalars<C::Bdry>) -> C::Bdry {
    let k = NPoly::new(c.dim());
    let cv = &s.cv;
    let (jb, pnn) = (&cv.jbar, &cv.pnn);
    let mut b = Acc::new(c);
    b.add(&k.p(&[-9, 3]), jb).add(&-k.p(&[-13, 3]), pnn).add(&k.r(&[34, -23, 3], &[0, 0, 2]), &s.h2);
    b.value()
}

/// X with ⟨∇̄X, ∇̄u⟩ in B_4
pub fn x_with<C: BoundaryCalculus + ?Sized>(c: &C, s: &Scalars<C::Bdry>) -> C::Bdry {
    let k = NPoly::new(c.dim());
    let cv = &s.cv;
    let (jb, pnn) = (&cv.jbar, &cv.pnn);
    let mut b = Acc::new(c);
    b.add(&k.p(&[-11, 3]), jb).add(&-k.p(&[-29, 5]), pnn).add(&k.r(&[112, -45, 5], &[0, 0, 2]), &s.h2);
    b.value()
}

/// S_3
pub fn s3_with<C: BoundaryCalculus + ?Sized>(c: &C, s: &Scalars<C::Bdry>) -> C::Bdry {
    let k = NPoly::new(c.dim());
    let n = k.n.clone();
    let cv = &s.cv;
    let (h, jb, pnn) = (&cv.h, &cv.jbar, &cv.pnn);
    let mut b = Acc::new(c);
    b.add(&k.p(&[-9, 1]), &cv.eta_j)
        .add(&(qi(16) / &n), &s.lap_h)
        .add2(&k.r(&[10, -15, 3], &[0, 1]), h, jb)
        .add2(&k.r(&[26, -5, 1], &[0, 1]), h, pnn)
        .add(&-k.r(&[-24, 12, -7, 1], &[0, 0, 0, 2]), &s.h3);
    b.value()
}

/// coefficient of −ηΔu in B_5
pub fn d1_with<C: BoundaryCalculus + ?Sized>(c: &C, s: &Scalars<C::Bdry>) -> C::Bdry {
    let k = NPoly::new(c.dim());
    let cv = &s.cv;
    let (jb, pnn) = (&cv.jbar, &cv.pnn);
    let mut b = Acc::new(c);
    b.add(&k.r(&[-7, 5], &[3]), jb).add(&k.p(&[-7, 1]), pnn).add(&-k.r(&[10, -9, 1], &[0, 0, 2]), &s.h2);
    b.value()
}

/// coefficient of −Δ̄ηu in B_5
pub fn d2_with<C: BoundaryCalculus + ?Sized>(c: &C, s: &Scalars<C::Bdry>) -> C::Bdry {
    let k = NPoly::new(c.dim());
    let cv = &s.cv;
    let (jb, pnn) = (&cv.jbar, &cv.pnn);
    let mut b = Acc::new(c);
    b.add(&k.r(&[-18, 10], &[3]), jb)
        .add(&k.r(&[-26, 2], &[3]), pnn)
        .add(&-k.r(&[12, -19, 3], &[0, 0, 3]), &s.h2);
    b.value()
}

/// R_{1,3}
pub fn r13_with<C: BoundaryCalculus + ?Sized>(c: &C, s: &Scalars<C::Bdry>) -> C::Bdry {
    let k = NPoly::new(c.dim());
    let cv = &s.cv;
    let (h, jb, pnn) = (&cv.h, &cv.jbar, &cv.pnn);
    let mut b = Acc::new(c);
    b.add(&-k.p(&[-12, 2]), &cv.eta_j)
        .add(&k.r(&[-18, 2], &[0, 3]), &s.lap_h)
        .add2(&-k.r(&[15, -28, 5], &[0, 6]), h, jb)
        .add2(&-k.r(&[55, -16, 1], &[0, 2]), h, pnn)
        .add(&k.r(&[-30, 11, -6, 1], &[0, 0, 0, 4]), &s.h3);
    b.value()
}

/// R_{2,3}
pub fn r23_with<C: BoundaryCalculus + ?Sized>(c: &C, s: &Scalars<C::Bdry>) -> C::Bdry {
    let k = NPoly::new(c.dim());
    let cv = &s.cv;
    let (h, jb, pnn) = (&cv.h, &cv.jbar, &cv.pnn);
    let mut b = Acc::new(c);
    b.add(&-k.r(&[-19, 5], &[3]), &cv.eta_j)
        .add(&k.r(&[-42, 10], &[0, 3]), &s.lap_h)
        .add2(&-k.r(&[7, -20, 5], &[0, 2]), h, jb)
        .add2(&-k.r(&[75, -40, 5], &[0, 6]), h, pnn)
        .add(&k.r(&[6, 23, -26, 5], &[0, 0, 0, 12]), &s.h3);
    b.value()
}

/// Y with ⟨∇̄Y, ∇̄ηu⟩ in B_5
pub fn y_with<C: BoundaryCalculus + ?Sized>(c: &C, s: &Scalars<C::Bdry>) -> C::Bdry {
    let k = NPoly::new(c.dim());
    let cv = &s.cv;
    let (jb, pnn) = (&cv.jbar, &cv.pnn);
    let mut b = Acc::new(c);
    b.add(&k.r(&[-47, 15], &[3]), jb)
        .add(&k.r(&[-79, 7], &[3]), pnn)
        .add(&-k.r(&[168, -139, 15], &[0, 0, 6]), &s.h2);
    b.value()
}

/// S_4
pub fn s4_with<C: BoundaryCalculus + ?Sized>(c: &C, s: &Scalars<C::Bdry>) -> C::Bdry {
    let k = NPoly::new(c.dim());
    let n = k.n.clone();
    let gh2 = c.bar_grad_dot(&s.cv.h, &s.cv.h);
    let cv = &s.cv;
    let (h, jb, pnn) = (&cv.h, &cv.jbar, &cv.pnn);
    let mut b = Acc::new(c);
    b.add(&-k.r(&[-5, 1], &[2]), &cv.lap_j)
        .add(&-k.r(&[-22, 6], &[3]), &s.lap_jbar)
        .add(&-k.p(&[-9, 1]), &cv.hess_j_nn)
        .add(&-k.r(&[-26, 2], &[3]), &s.lap_pnn)
        .add2(&-(qi(16) / &n), h, &cv.eta_p_nn)
        .add2(&k.r(&[72, -38, 6], &[0, 0, 3]), h, &s.lap_h)
        .add(&k.r(&[180, -62, 6], &[0, 0, 3]), &gh2)
        .add2(&-k.r(&[13, -20, 3], &[0, 2]), h, &cv.eta_j)
        .add2(&-k.r(&[-130, 103, -24, 3], &[0, 0, 4]), &s.h2, pnn)
        .add2(&-k.r(&[42, -5, -68, 15], &[0, 0, 12]), &s.h2, jb)
        .add2(&k.r(&[49, -54, 5], &[6]), jb, pnn)
        .add(&k.r(&[120, -84, 17, -26, 5], &[0, 0, 0, 0, 16]), &s.h4)
        .add2(&k.r(&[-29, -50, 15], &[12]), jb, jb)
        .add2(&k.r(&[149, -22, 1], &[4]), pnn, pnn)
        .add(&-k.p(&[-22, 6]), &cv.pbar_sq);
    b.value()
}

/// Full B_j(u) = main part + ((n−5)/2)·T_j·u.
pub fn apply_b<C: BoundaryCalculus + ?Sized>(c: &C, j: usize, u: &C::Field) -> Result<C::Bdry> {
    check_j(j)?;
    let s = Scalars::new(c);
    Ok(apply_b_with(c, j, u, &s))
}

pub fn apply_b_with<C: BoundaryCalculus + ?Sized>(c: &C, j: usize, u: &C::Field, s: &Scalars<C::Bdry>) -> C::Bdry {
    let main = b_main_with(c, j, u, s);
    if j == 0 {
        return main;
    }
    let w = (qi(c.dim()) - qi(5)) / qi(2);
    let t = t_scalar_with(c, j, s);
    let tu = c.mul(&t, &c.restrict(u));
    c.add(&main, &c.scale(&tu, &w))
}

/// All six operators sharing one curvature evaluation.
pub fn apply_all<C: BoundaryCalculus + ?Sized>(c: &C, u: &C::Field) -> Vec<C::Bdry> {
    let s = Scalars::new(c);
    (0..6).map(|j| apply_b_with(c, j, u, &s)).collect()
}

